"""Dense complex linear algebra: Hermitian eigendecomposition, singular
values, HPD spectral calculus and seeded random instance generation.

Matrices are plain complex numpy arrays.  Hermitian positive definite
matrices are carried as :class:`HpdMatrix`, which caches the
eigendecomposition so that fractional powers are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergenceError, NotHermitianError

HERMITIAN_RTOL = 1e-12


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    scale = frobenius(m)
    if scale == 0.0:
        return True
    return frobenius(m - adjoint(m)) <= rtol * scale


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, V) with eigenvalues real and descending and the
    columns of V orthonormal, so that m = V diag(w) V*.
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def svd_values(m: np.ndarray) -> np.ndarray:
    """Singular values of m, descending.

    Computed as the square roots of the eigenvalues of m* m, with small
    negative eigenvalues clamped to zero.
    """
    m = np.asarray(m, dtype=complex)
    w = np.linalg.eigvalsh(adjoint(m) @ m)
    w = np.clip(w, 0.0, None)
    return np.sqrt(w)[::-1]


@dataclass(frozen=True)
class HpdMatrix:
    """Hermitian positive definite matrix with cached spectral data.

    eigenvalues are descending and strictly positive; the columns of
    eigenvectors are orthonormal and matrix = V diag(eigenvalues) V*.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    _matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def log_eigenvalues(self) -> np.ndarray:
        return np.log(self.eigenvalues)

    @classmethod
    def from_spectrum(cls, eigenvalues, eigenvectors) -> "HpdMatrix":
        w = np.asarray(eigenvalues, dtype=float)
        v = np.asarray(eigenvectors, dtype=complex)
        if np.any(w <= 0.0):
            raise ValueError("eigenvalues must be strictly positive")
        order = np.argsort(-w, kind="stable")
        w = w[order]
        v = v[:, order]
        m = (v * w) @ adjoint(v)
        m = 0.5 * (m + adjoint(m))
        return cls(eigenvalues=w, eigenvectors=v, _matrix=m)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "HpdMatrix":
        w, v = hermitian_eig(m)
        if np.any(w <= 0.0):
            raise ValueError("matrix is not positive definite")
        return cls(eigenvalues=w, eigenvectors=v,
                   _matrix=np.asarray(m, dtype=complex))

    def power(self, t: float) -> np.ndarray:
        """Fractional power V diag(lambda^t) V*."""
        if t == 0.0:
            return np.eye(self.dim, dtype=complex)
        if t == 1.0:
            return self.matrix
        w = np.exp(t * self.log_eigenvalues)
        m = (self.eigenvectors * w) @ adjoint(self.eigenvectors)
        return 0.5 * (m + adjoint(m))


def hpd_power(h: HpdMatrix, t: float) -> np.ndarray:
    return h.power(t)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from QR of a complex Gaussian matrix.

    Column phases are fixed from the R diagonal so the result is a
    deterministic function of the draw.
    """
    g = random_complex(dim, rng)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    phases = d / np.where(np.abs(d) == 0.0, 1.0, np.abs(d))
    return q * phases.conj()


def random_hpd(dim: int, rng: np.random.Generator,
               condition_range: tuple[float, float] = (0.05, 20.0)) -> HpdMatrix:
    """Random HPD matrix with eigenvalues log-uniform in condition_range."""
    lo, hi = condition_range
    if not (0.0 < lo <= hi):
        raise ValueError("condition range must satisfy 0 < lo <= hi")
    eigs = np.exp(rng.uniform(np.log(lo), np.log(hi), size=dim))
    v = random_unitary(dim, rng)
    return HpdMatrix.from_spectrum(eigs, v)


def random_complex(dim: int, rng: np.random.Generator) -> np.ndarray:
    """dim x dim matrix with iid standard complex Gaussian entries."""
    return (rng.standard_normal((dim, dim))
            + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)

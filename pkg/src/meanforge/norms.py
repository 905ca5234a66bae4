"""Singular-value based norms and the Ky Fan dominance test.

A claim of the form "|||L||| <= |||R||| for every unitarily invariant
norm" holds iff it holds for every Ky Fan norm, so ``fan_margins`` /
``fan_dominates`` are the workhorse predicates of the whole suite.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadExponentError, BadOrderError, DimMismatchError
from .linalg import svd_values

DEFAULT_TOL = 1e-9


def schatten(m: np.ndarray, p: float) -> float:
    """Schatten p-norm; p = inf gives the operator norm."""
    if not (p >= 1.0):
        raise BadExponentError(f"Schatten exponent must be >= 1, got {p}")
    s = svd_values(m)
    if math.isinf(p):
        return float(s[0])
    if p == 1.0:
        return float(np.sum(s))
    if p == 2.0:
        return float(np.sqrt(np.sum(s * s)))
    return float(np.sum(s ** p) ** (1.0 / p))


def ky_fan(m: np.ndarray, k: int) -> float:
    """Sum of the k largest singular values."""
    n = m.shape[0]
    if not (1 <= k <= n):
        raise BadOrderError(f"Ky Fan order {k} outside [1, {n}]")
    s = svd_values(m)
    return float(np.sum(s[:k]))


def fan_margins(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Per-order Ky Fan margins ky_fan(rhs, k) - ky_fan(lhs, k), k = 1..dim."""
    if lhs.shape != rhs.shape:
        raise DimMismatchError(f"shape {lhs.shape} vs {rhs.shape}")
    sl = np.cumsum(svd_values(lhs))
    sr = np.cumsum(svd_values(rhs))
    return sr - sl


def fan_dominates(lhs: np.ndarray, rhs: np.ndarray,
                  tol: float = DEFAULT_TOL) -> bool:
    """True iff every Ky Fan norm of lhs is <= that of rhs, up to a
    relative slack normalized by 1 + trace norm of rhs."""
    margins = fan_margins(lhs, rhs)
    scale = 1.0 + float(np.sum(svd_values(rhs)))
    return bool(np.min(margins) >= -tol * scale)

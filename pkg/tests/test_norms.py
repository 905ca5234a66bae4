import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanforge.errors import BadExponentError, BadOrderError, DimMismatchError
from meanforge.linalg import random_complex, random_unitary
from meanforge.norms import fan_dominates, fan_margins, ky_fan, schatten


def test_schatten_trace_norm():
    assert schatten(np.diag([3.0, 1.0]), 1) == pytest.approx(4.0)


def test_schatten_hilbert_schmidt():
    assert schatten(np.diag([3.0, 1.0]), 2) == pytest.approx(np.sqrt(10.0))


def test_schatten_operator_norm():
    assert schatten(np.eye(3), np.inf) == pytest.approx(1.0)


def test_schatten_rejects_small_exponent():
    with pytest.raises(BadExponentError):
        schatten(np.eye(2), 0.5)


def test_schatten2_matches_entry_sum():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = random_complex(int(rng.integers(1, 7)), rng)
        assert schatten(m, 2) ** 2 == pytest.approx(
            float(np.sum(np.abs(m) ** 2)), rel=1e-10)


def test_ky_fan_values():
    m = np.diag([3.0, 1.0])
    assert ky_fan(m, 1) == pytest.approx(3.0)
    assert ky_fan(m, 2) == pytest.approx(4.0)
    assert ky_fan(np.zeros((4, 4)), 3) == 0.0


def test_ky_fan_rejects_bad_order():
    with pytest.raises(BadOrderError):
        ky_fan(np.eye(2), 3)
    with pytest.raises(BadOrderError):
        ky_fan(np.eye(2), 0)


def test_ky_fan_unitary_invariance():
    rng = np.random.default_rng(1)
    for _ in range(20):
        dim = int(rng.integers(1, 7))
        m = random_complex(dim, rng)
        u, w = random_unitary(dim, rng), random_unitary(dim, rng)
        for k in range(1, dim + 1):
            assert ky_fan(u @ m @ w, k) == pytest.approx(
                ky_fan(m, k), rel=1e-9, abs=1e-9)


def test_fan_margins_reflexive():
    m = np.diag([2.0, 1.0])
    assert np.allclose(fan_margins(m, m), 0.0)


def test_fan_margins_examples():
    assert np.allclose(fan_margins(np.diag([1.0, 1.0]), np.diag([2.0, 0.0])),
                       [1.0, 0.0])
    assert np.allclose(fan_margins(np.diag([2.0, 0.0]), np.diag([1.0, 1.0])),
                       [-1.0, 0.0])


def test_fan_margins_dim_mismatch():
    with pytest.raises(DimMismatchError):
        fan_margins(np.eye(2), np.eye(3))


def test_fan_dominates():
    assert fan_dominates(np.eye(2), np.eye(2), tol=0.0)
    assert fan_dominates(np.diag([1.0, 1.0]), np.diag([2.0, 0.0]), tol=1e-12)
    assert not fan_dominates(np.diag([2.0, 0.0]), np.diag([1.0, 1.0]),
                             tol=1e-12)


def test_triangle_inequality_per_order():
    rng = np.random.default_rng(2)
    for _ in range(200):
        dim = int(rng.integers(1, 7))
        a = random_complex(dim, rng)
        b = random_complex(dim, rng)
        for k in range(1, dim + 1):
            lhs = ky_fan(a + b, k)
            rhs = ky_fan(a, k) + ky_fan(b, k)
            assert lhs <= rhs + 1e-9 * (1.0 + rhs)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 10_000), scale=st.floats(1e-3, 1e3))
def test_fan_margins_scaling(seed, scale):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(1, 6))
    lhs, rhs = random_complex(dim, rng), random_complex(dim, rng)
    base = fan_margins(lhs, rhs)
    scaled = fan_margins(scale * lhs, scale * rhs)
    assert np.allclose(scaled, scale * base, rtol=1e-9, atol=1e-12)

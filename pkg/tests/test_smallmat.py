import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from areaext.smallmat import (
    NotHermitianError,
    eigvalsh,
    min_eigenvalue,
    singular_values,
    spectral_norm,
    svd,
    sym_eigen,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: arrays(float, (n, n), elements=finite)))
def test_real_symmetric_matches_lapack(a):
    m = a + a.T
    w, v = sym_eigen(m)
    ref = np.linalg.eigvalsh(m)
    scale = max(np.linalg.norm(m), 1.0)
    assert np.allclose(w, ref, atol=1e-12 * scale)
    assert np.allclose(v.T @ v, np.eye(len(m)), atol=1e-12)
    assert np.allclose(m @ v, v * w, atol=1e-11 * scale)


@pytest.mark.parametrize("n", [2, 4, 16])
def test_complex_hermitian_matches_lapack(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        m = a + a.conj().T
        w, v = sym_eigen(m)
        assert np.allclose(w, np.linalg.eigvalsh(m), atol=1e-11)
        assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
        assert np.allclose(m @ v, v * w, atol=1e-10)


def test_eigenvalues_ascending_and_degenerate():
    w, v = sym_eigen(np.diag([3.0, 1.0, 1.0, -2.0]))
    assert list(w) == [-2.0, 1.0, 1.0, 3.0]
    assert np.allclose(v.T @ v, np.eye(4))
    assert min_eigenvalue(np.eye(5)) == 1.0


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitianError) as exc:
        sym_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))
    assert exc.value.asymmetry > 0


def test_accepts_tiny_asymmetry():
    m = np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]])
    assert np.allclose(eigvalsh(m), [-1.0, 3.0])


@pytest.mark.parametrize("bad", [np.ones((3, 4)), np.eye(17), np.array([[np.nan]])])
def test_rejects_bad_shapes(bad):
    with pytest.raises(ValueError):
        sym_eigen(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: arrays(float, (n, n), elements=finite)))
def test_svd_matches_lapack(a):
    res = svd(a)
    scale = max(np.linalg.norm(a), 1.0)
    assert np.allclose(res.values, np.linalg.svd(a, compute_uv=False), atol=1e-7 * scale)
    assert np.all(np.diff(res.values) <= 0)
    n = len(a)
    assert np.allclose(res.left.T @ res.left, np.eye(n), atol=1e-10)
    assert np.allclose(res.right.T @ res.right, np.eye(n), atol=1e-10)
    assert np.allclose(res.reconstruct(), a, atol=1e-7 * scale)


def test_svd_rank_deficient():
    res = svd(np.diag([1.0, 0.0, 0.0, 2.0]))
    assert np.allclose(res.values, [2, 1, 0, 0])
    assert np.allclose(res.reconstruct(), np.diag([1.0, 0.0, 0.0, 2.0]))
    zero = svd(np.zeros((4, 4)))
    assert np.all(zero.values == 0)
    assert np.allclose(zero.left.T @ zero.left, np.eye(4))


def test_singular_values_and_norm():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    assert np.allclose(singular_values(q), 1.0, atol=1e-12)
    m = rng.normal(size=(6, 6))
    assert spectral_norm(m) == pytest.approx(np.linalg.norm(m, 2), rel=1e-10)
    big = rng.normal(size=(10, 10))
    assert spectral_norm(big) == pytest.approx(np.linalg.norm(big, 2), rel=1e-10)


def test_svd_rejects_large():
    with pytest.raises(ValueError):
        svd(np.eye(7))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from areaext.exterior import (
    CurvatureOperatorError,
    NotDecomposableError,
    Plane,
    basis_bivector,
    bianchi_project,
    bianchi_residual,
    bivector,
    change_of_basis_sdasd,
    check_curvature_operator,
    curvature_endomorphism,
    curvature_from_json,
    curvature_to_json,
    fibonacci_sphere,
    hodge_star,
    is_area_nonincreasing,
    is_nonincreasing,
    k_to_sdasd,
    ricci,
    scal,
    sdasd_to_k,
    sec,
    sec_max_bruteforce,
    sec_min_bruteforce,
    wedge2,
)
from areaext.families import fubini_study, gz_curvature_at, gz_profile, product_spheres
from areaext.sampling import random_bianchi, sample_rng

from oracles import hodge_oracle, k_to_antisym, ricci_oracle, wedge2_oracle, wedge_matrix

maps = arrays(float, (4, 4), elements=st.floats(-3, 3, allow_nan=False))


def test_star_matches_levi_civita():
    s = hodge_star()
    assert np.array_equal(s, hodge_oracle())
    h = np.array([[0, 1], [1, 0]])
    assert np.array_equal(s[:2, :2], h) and np.array_equal(s[4:, 4:], h)
    assert np.array_equal(s @ s, np.eye(6))


def test_sdasd_diagonalizes_star():
    p = change_of_basis_sdasd()
    assert np.allclose(p.T @ p, np.eye(6), atol=1e-15)
    assert np.allclose(p.T @ hodge_star() @ p, np.diag([1, 1, 1, -1, -1, -1]), atol=1e-15)
    m = np.diag(np.arange(6.0))
    assert np.allclose(k_to_sdasd(sdasd_to_k(m)), m)


def test_wedge2_examples():
    assert np.array_equal(wedge2(np.eye(4)), np.eye(6))
    lam = np.array([2.0, 3.0, 5.0, 7.0])
    expected = [2 * 3, 5 * 7, 2 * 5, 7 * 3, 2 * 7, 3 * 5]
    assert np.allclose(wedge2(np.diag(lam)), np.diag(expected))


@settings(max_examples=200, deadline=None)
@given(maps, maps)
def test_wedge2_functorial(a, b):
    scale = 1.0 + np.linalg.norm(a) ** 2 * np.linalg.norm(b) ** 2
    assert np.allclose(wedge2(a @ b), wedge2(a) @ wedge2(b), atol=1e-10 * scale)


@settings(max_examples=100, deadline=None)
@given(maps)
def test_wedge2_adjoint_and_oracle(a):
    assert np.allclose(wedge2(a.T), wedge2(a).T, atol=1e-12)
    assert np.allclose(wedge2(a), wedge2_oracle(a), atol=1e-12)


def test_wedge2_norm_is_top_singular_pair():
    rng = np.random.default_rng(3)
    for _ in range(50):
        l = rng.normal(size=(4, 4))
        s = np.linalg.svd(l, compute_uv=False)
        assert np.linalg.norm(wedge2(l), 2) == pytest.approx(s[0] * s[1], rel=1e-10)


def test_nonincreasing():
    assert is_nonincreasing(0.5 * np.eye(4))
    l = np.diag([2.0, 0.4, 0.4, 0.4])
    assert not is_nonincreasing(l)
    assert is_area_nonincreasing(l)
    theta = 0.3
    rot = np.eye(4)
    rot[:2, :2] = [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
    assert is_nonincreasing(rot)
    assert not is_nonincreasing(1.001 * np.eye(4))


def test_bivector_and_basis():
    e = np.eye(4)
    assert np.array_equal(bivector(e[0], e[1]), basis_bivector(0, 1))
    assert np.array_equal(bivector(e[3], e[1]), basis_bivector(3, 1))
    assert np.array_equal(basis_bivector(1, 3), -basis_bivector(3, 1))
    x, y = np.random.default_rng(0).normal(size=(2, 4))
    assert np.allclose(k_to_antisym(bivector(x, y)), wedge_matrix(x, y))


@settings(max_examples=100, deadline=None)
@given(arrays(float, (6, 6), elements=st.floats(-5, 5, allow_nan=False)))
def test_bianchi_projection(s):
    s = s + s.T
    r = bianchi_project(s)
    assert abs(bianchi_residual(r)) <= 1e-10 * max(np.linalg.norm(s), 1.0)
    assert np.allclose(bianchi_project(r), r)


def test_check_curvature_operator():
    check_curvature_operator(np.eye(6))
    with pytest.raises(CurvatureOperatorError):
        check_curvature_operator(hodge_star())
    with pytest.raises(CurvatureOperatorError):
        check_curvature_operator(np.triu(np.ones((6, 6))))
    with pytest.raises(CurvatureOperatorError):
        check_curvature_operator(np.eye(5))
    check_curvature_operator(hodge_star(), require_bianchi=False)


def test_ricci_scal_examples():
    assert np.allclose(ricci(np.eye(6)), 3 * np.eye(4))
    assert scal(np.eye(6)) == 12
    assert np.array_equal(ricci(np.zeros((6, 6))), np.zeros((4, 4)))
    plateau = gz_curvature_at(gz_profile(1.0, 10.0, 12.0), 11.0)
    assert np.allclose(ricci(plateau.R), np.diag([0.5, 0.5, 0.5, 0.0]), atol=1e-12)
    assert scal(plateau.R) == pytest.approx(1.5, abs=1e-12)


def test_ricci_against_oracle_and_trace():
    for i in range(500):
        r = random_bianchi(sample_rng(11, i))
        ric = ricci(r)
        assert np.trace(ric) == pytest.approx(scal(r), abs=1e-10)
        if i < 50:
            assert np.allclose(ric, ricci_oracle(r), atol=1e-12)


def test_curvature_endomorphism_sphere():
    # round sphere: R_{x,y} z = <y,z> x - <x,z> y
    rng = np.random.default_rng(5)
    x, y, z = rng.normal(size=(3, 4))
    m = curvature_endomorphism(np.eye(6), x, y)
    assert np.allclose(m @ z, (y @ z) * x - (x @ z) * y)
    assert np.allclose(m, -m.T)


def test_plane_invariants():
    rng = np.random.default_rng(2)
    for _ in range(100):
        p = Plane.from_unit_vectors(rng.normal(size=3), rng.normal(size=3))
        s = p.sigma
        assert abs(s @ hodge_star() @ s) <= 1e-12
        assert np.linalg.norm(s) == pytest.approx(1.0, abs=1e-12)
        x, y = rng.normal(size=(2, 4))
        q = Plane.spanned_by(x, y)
        assert np.linalg.norm(q.sd) == pytest.approx(2**-0.5, abs=1e-12)
    with pytest.raises(NotDecomposableError):
        Plane.from_bivector(np.array([1.0, 1.0, 0, 0, 0, 0]))


def test_sec_examples():
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = Plane.spanned_by(*rng.normal(size=(2, 4)))
        assert sec(np.eye(6), p) == pytest.approx(1.0, abs=1e-12)
    prod = product_spheres().R
    e = np.eye(4)
    assert sec(prod, Plane.spanned_by(e[0], e[1])) == pytest.approx(1.0)
    assert sec(prod, Plane.spanned_by(e[0], e[2])) == pytest.approx(0.0)


def test_bruteforce_examples():
    v, p = sec_min_bruteforce(np.eye(6), 50)
    assert v == pytest.approx(1.0, abs=1e-12)
    fs = fubini_study().R
    lo, _ = sec_min_bruteforce(fs, 200)
    hi, _ = sec_max_bruteforce(fs, 200)
    assert 1 - 1e-3 <= lo <= 1 + 1e-3
    assert 4 - 1e-3 <= hi <= 4 + 1e-12
    neg, plane = sec_min_bruteforce(np.diag([1.0, -1, 0, 0, 0, 0]), 100)
    assert neg < 0 and sec(np.diag([1.0, -1, 0, 0, 0, 0]), plane) == pytest.approx(neg)
    with pytest.raises(ValueError):
        sec_min_bruteforce(np.eye(6), 4)


def test_fibonacci_sphere():
    pts = fibonacci_sphere(100)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)
    assert np.allclose(pts[0], [0, 0, 1]) and np.allclose(pts[-1], [0, 0, -1])
    assert np.linalg.norm(pts.mean(axis=0)) < 0.05


def test_json_roundtrip():
    fs = fubini_study().R
    for basis in ("K", "SDASD"):
        doc = curvature_to_json(fs, basis)
        assert np.allclose(curvature_from_json(doc), fs, atol=1e-14)
    with pytest.raises(CurvatureOperatorError, match="matrix"):
        curvature_from_json({"basis": "K"})
    with pytest.raises(CurvatureOperatorError, match="basis"):
        curvature_from_json({"basis": "Q", "matrix": np.eye(6).tolist()})
    with pytest.raises(CurvatureOperatorError, match="Bianchi"):
        curvature_from_json({"basis": "K", "matrix": hodge_star().tolist()})

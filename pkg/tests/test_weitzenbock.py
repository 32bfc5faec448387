import numpy as np
import pytest

from areaext.clifford import clifford_rep, off_sector_norm
from areaext.exterior import hodge_star, wedge2
from areaext.families import fubini_study, product_spheres, round_sphere
from areaext.sampling import (
    random_bianchi,
    random_map,
    random_nonincreasing_wedge_map,
    random_nonpositive_tau_operator,
    random_orthogonal,
    random_sec_nonneg,
    sample_rng,
)
from areaext.smallmat import min_eigenvalue
from areaext.weitzenbock import (
    PreconditionError,
    build_R_endo,
    build_T_endo,
    check_rt_identity,
    extremality_certificate,
    lemma_sweep,
    rigidity_probe,
    trace_bound,
)

I4 = np.eye(4)


def test_zero_inputs():
    r = random_bianchi(sample_rng(41, 0))
    assert np.allclose(build_R_endo(np.zeros((6, 6)), I4).matrix, 0)
    assert np.allclose(build_R_endo(r, np.zeros((4, 4))).matrix, 0)
    assert np.allclose(build_T_endo(np.zeros((6, 6)), random_map(sample_rng(41, 1))).matrix, 0)


def test_rt_identity_examples():
    assert check_rt_identity(np.eye(6), I4).residual <= 1e-10
    assert check_rt_identity(fubini_study().R, 0.5 * I4).residual <= 1e-10


def test_rt_identity_random():
    for i in range(100):
        rng = sample_rng(42, i)
        c = check_rt_identity(random_bianchi(rng), random_map(rng))
        assert c.passed


def test_R_requires_bianchi_T_does_not():
    with pytest.raises(ValueError):
        build_R_endo(hodge_star(), I4)
    build_T_endo(hodge_star(), I4)


def test_hermitian_and_chirality():
    c = clifford_rep()
    pp = np.kron(c.proj_plus, c.proj_plus)
    for i in range(20):
        rng = sample_rng(43, i)
        r, l = random_bianchi(rng), random_map(rng)
        for e in (build_R_endo(r, l), build_T_endo(r, l)):
            m = e.matrix
            assert e.hermitian_defect() <= 1e-10 * np.linalg.norm(m)
            assert np.linalg.norm(m @ pp - pp @ m) <= 1e-12 * max(np.linalg.norm(m), 1)
            assert off_sector_norm(m) <= 1e-12 * max(np.linalg.norm(m), 1)


def test_basis_independence():
    for i in range(20):
        rng = sample_rng(44, i)
        r, l = random_bianchi(rng), random_map(rng)
        b = random_orthogonal(rng, 6)
        assert np.allclose(build_R_endo(r, l, b).matrix, build_R_endo(r, l).matrix, atol=1e-10)
        assert np.allclose(build_T_endo(r, l, b).matrix, build_T_endo(r, l).matrix, atol=1e-10)


def test_T_nonnegative_for_psd():
    for i in range(100):
        rng = sample_rng(45, i)
        g = rng.normal(size=(6, 6))
        p = g.T @ g
        assert min_eigenvalue(build_T_endo(p, random_map(rng)).matrix) >= -1e-9 * np.linalg.norm(p)


def test_T_star_signs():
    maps = [np.diag([2.0, 0.4, 0.4, 0.4]), I4, np.diag([1.0, 1.0, 1.0, -1.0])]
    maps += [random_nonincreasing_wedge_map(sample_rng(46, i)) for i in range(100)]
    for l in maps:
        t = build_T_endo(hodge_star(), l)
        assert t.min_eig("++") >= -1e-9
        assert t.max_eig("--") <= 1e-9


def test_T_star_needs_nonincreasing():
    # an orientation-reversing map that expands area breaks the signs
    t = build_T_endo(hodge_star(), np.diag([1.5, 1.5, 1.5, -1.5]))
    assert t.min_eig("++") < -1e-3
    assert t.max_eig("--") > 1e-3


def test_decomposition_positivity():
    for i in range(100):
        rng = sample_rng(47, i)
        r, tau = random_nonpositive_tau_operator(rng)
        l = random_nonincreasing_wedge_map(rng)
        assert build_T_endo(r, l).min_eig("++") >= -1e-9 * np.linalg.norm(r)


def test_trace_bound_examples():
    rng = sample_rng(48, 0)
    r = random_sec_nonneg(rng)
    q = random_orthogonal(rng)
    assert trace_bound(r, q).slack == pytest.approx(0.0, abs=1e-10)
    tb = trace_bound(r, np.zeros((4, 4)))
    assert tb.slack == pytest.approx(np.trace(r))
    assert trace_bound(np.eye(6), np.diag([1, 1, 1, 0.5])).slack == pytest.approx(2.25)


def test_trace_bound_random_and_preconditions():
    for i in range(100):
        rng = sample_rng(49, i)
        r = random_sec_nonneg(rng, rank=int(rng.integers(1, 7)))
        l = random_nonincreasing_wedge_map(rng)
        assert trace_bound(r, l).slack >= -1e-9 * np.linalg.norm(r)
    with pytest.raises(PreconditionError, match="sectional"):
        trace_bound(np.diag([1.0, -1, 0, 0, 0, 0]), I4)
    with pytest.raises(PreconditionError, match="exterior square"):
        trace_bound(np.eye(6), 1.5 * I4)


@pytest.mark.parametrize("family", [round_sphere, fubini_study, product_spheres])
def test_rigidity_probe(family):
    probe = rigidity_probe(family().R, samples=300, seed=1)
    assert probe.min_slack > 0
    assert np.linalg.norm(wedge2(probe.worst_map), 2) <= 1 + 1e-12


def test_rigidity_probe_refuses():
    with pytest.raises(PreconditionError):
        rigidity_probe(np.diag([1.0, 0, 0, 0, 0, 0]), samples=10)


def test_extremality_identity_competitor():
    rep = extremality_certificate(fubini_study(-1).R, -1.0, 24.0, I4)
    assert rep.weitzenboeck_gap >= -1e-9
    assert rep.scal_inequality and rep.area_nonincreasing and rep.isometry
    assert rep.rigidity_flag
    assert rep.t_psd_min >= -1e-9


def test_extremality_homothety():
    c = 2.0
    rep = extremality_certificate(fubini_study(-1).R, -1.0, 24.0 / c**2, I4 / c)
    assert not rep.scal_inequality
    assert not rep.isometry
    assert rep.notes


def test_extremality_zero_map():
    rep = extremality_certificate(np.eye(6), 0.0, 12.0, np.zeros((4, 4)))
    assert rep.weitzenboeck_gap == pytest.approx(3.0)


def test_extremality_preconditions():
    with pytest.raises(PreconditionError, match="nonpositive"):
        extremality_certificate(np.eye(6), 0.5, 12.0, I4)
    with pytest.raises(PreconditionError, match="semidefinite"):
        extremality_certificate(fubini_study().R, -1.0, 24.0, I4)
    with pytest.raises(PreconditionError, match="exterior square"):
        extremality_certificate(np.eye(6), 0.0, 12.0, 2 * I4)


def test_lemma_sweep_clean():
    for res in lemma_sweep(samples=30, seed=3):
        assert res.failures == 0, res.to_dict()

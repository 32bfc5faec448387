import numpy as np
import pytest

from areaext.boundary import (
    BoundaryData,
    build_A_endo,
    build_Q,
    mean_curvature_bound,
    q_spectrum,
)
from areaext.exterior import bianchi_residual, bivector
from areaext.sampling import random_rotation, sample_rng
from areaext.smallmat import min_eigenvalue
from areaext.weitzenbock import PreconditionError, build_R_endo


def random_psd3(rng):
    g = rng.normal(size=(3, 3)) * rng.uniform(0, 2)
    return g @ g.T


def test_totally_geodesic():
    bd = BoundaryData(np.zeros((3, 3)), 0.0)
    assert np.array_equal(build_Q(bd), np.zeros((6, 6)))
    assert np.allclose(build_A_endo(bd).matrix, 0)
    assert mean_curvature_bound(bd) == pytest.approx(0.0, abs=1e-12)


def test_identity_form():
    bd = BoundaryData(np.eye(3), 3.0)
    assert np.allclose(q_spectrum(bd), [0, 0, 0, 1, 1, 1], atol=1e-12)
    assert np.trace(build_Q(bd)) == pytest.approx(3.0)
    a = build_A_endo(bd).matrix
    assert np.allclose(a, -1.5 * np.eye(16) - build_R_endo(build_Q(bd), np.eye(4)).matrix)
    assert mean_curvature_bound(bd) >= -1e-9


def test_slack_example():
    bd = BoundaryData(np.diag([2.0, 1.0, 0.0]), 5.0)
    assert mean_curvature_bound(bd) >= -1e-9


def test_q_kills_tangential_planes():
    rng = sample_rng(51, 0)
    bd = BoundaryData(random_psd3(rng), 1.0)
    e = np.eye(4)
    for j in range(1, 4):
        for k in range(j + 1, 4):
            assert np.allclose(build_Q(bd) @ bivector(e[j], e[k]), 0, atol=1e-14)


def test_random_psd_properties():
    for i in range(200):
        rng = sample_rng(52, i)
        ii = random_psd3(rng)
        bd = BoundaryData(ii, float(np.trace(ii)) + rng.uniform(0, 2))
        q = build_Q(bd)
        assert abs(bianchi_residual(q)) <= 1e-10
        assert np.trace(q) == pytest.approx(np.trace(ii), abs=1e-12)
        assert min_eigenvalue(q) >= -1e-10
        assert build_A_endo(bd).hermitian_defect() <= 1e-10
        assert mean_curvature_bound(bd) >= -1e-9 * (1 + np.linalg.norm(ii))


def test_rotated_frame_covariance():
    for i in range(10):
        rng = sample_rng(53, i)
        ii = random_psd3(rng)
        rot = random_rotation(rng, 4)
        bd = BoundaryData(ii, float(np.trace(ii)), frame=rot[:, 1:], normal=-rot[:, 0])
        ref = BoundaryData(ii, float(np.trace(ii)))
        assert np.allclose(q_spectrum(bd), q_spectrum(ref), atol=1e-12)
        assert mean_curvature_bound(bd) == pytest.approx(mean_curvature_bound(ref), abs=1e-10)


def test_indefinite_rejected_and_detected():
    bd = BoundaryData(np.diag([1.0, -1.0, -1.0]), -1.0)
    with pytest.raises(PreconditionError):
        mean_curvature_bound(bd)
    assert mean_curvature_bound(bd, check_hypothesis=False) < -1e-3
    bd = BoundaryData(np.diag([1.0, 1.0, -3.0]), -1.0)
    assert mean_curvature_bound(bd, check_hypothesis=False) < -1e-3


def test_input_validation():
    with pytest.raises(ValueError):
        BoundaryData(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0.0]]), 0.0)
    with pytest.raises(ValueError):
        BoundaryData(np.eye(3), 0.0, frame=np.eye(4)[:, 1:])
    with pytest.raises(ValueError):
        BoundaryData(np.eye(3), 0.0, frame=2 * np.eye(4)[:, 1:], normal=np.eye(4)[0])

"""Pointwise boundary terms for the twisted Dirac operator on a manifold with boundary.

The boundary frame is ``e2, e3, e4`` with inward normal direction given by
``nu = -e1``.  A competitor's boundary frame ``f_1, f_2, f_3`` (images of
``e2, e3, e4``) and normal ``nu_t`` define the isometry ``l'`` with
``l'(e1) = -nu_t`` and ``l'(e_{k+1}) = f_k``.  The second fundamental form
``II`` of the boundary, written in the frame ``f``, becomes the operator

    Q = sum_{k,i} II[k, i] |nu_t ^ f_k> <nu_t ^ f_i|

on 2-vectors.  It satisfies the Bianchi identity, has trace ``tr II`` and is
positive semidefinite exactly when ``II`` is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import bivector
from .smallmat import eigvalsh, min_eigenvalue
from .weitzenbock import PreconditionError, SpinorEndo, build_R_endo

FRAME_ATOL = 1e-12
PSD_RTOL = 1e-12


@dataclass(frozen=True)
class BoundaryData:
    second_fundamental_form: np.ndarray
    mean_curvature_n: float
    frame: np.ndarray | None = None  # 4x3, columns f_1, f_2, f_3
    normal: np.ndarray | None = None  # nu_t

    def __post_init__(self):
        ii = np.asarray(self.second_fundamental_form, dtype=float)
        if ii.shape != (3, 3):
            raise ValueError(f"second fundamental form must be 3x3, got {ii.shape}")
        if np.linalg.norm(ii - ii.T) > 1e-12 * max(np.linalg.norm(ii), 1.0):
            raise ValueError("second fundamental form is not symmetric")
        object.__setattr__(self, "second_fundamental_form", 0.5 * (ii + ii.T))
        if (self.frame is None) != (self.normal is None):
            raise ValueError("frame and normal must be given together")
        if self.frame is not None:
            l = self.isometry()
            if np.linalg.norm(l.T @ l - np.eye(4)) > FRAME_ATOL:
                raise ValueError("boundary frame and normal are not orthonormal")

    @property
    def mean_curvature_m(self) -> float:
        return float(np.trace(self.second_fundamental_form))

    def isometry(self) -> np.ndarray:
        """The map ``l'`` sending ``e1 -> -nu_t`` and ``e_{k+1} -> f_k``."""
        if self.frame is None:
            return np.eye(4)
        f = np.asarray(self.frame, dtype=float)
        nu = np.asarray(self.normal, dtype=float)
        return np.column_stack([-nu, f])

    def frame_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        l = self.isometry()
        return -l[:, 0], l[:, 1:]


def build_Q(bd: BoundaryData) -> np.ndarray:
    nu, f = bd.frame_vectors()
    cols = np.column_stack([bivector(nu, f[:, k]) for k in range(3)])
    q = cols @ bd.second_fundamental_form @ cols.T
    return 0.5 * (q + q.T)


def build_A_endo(bd: BoundaryData) -> SpinorEndo:
    """``A = -H_N/2 - Rend(Q, L')``."""
    rend = build_R_endo(build_Q(bd), bd.isometry()).matrix
    return SpinorEndo(-0.5 * bd.mean_curvature_n * np.eye(16) - rend, "A")


def check_convexity(bd: BoundaryData) -> float:
    ii = bd.second_fundamental_form
    m = min_eigenvalue(ii)
    if m < -PSD_RTOL * max(float(np.linalg.norm(ii)), 1.0):
        raise PreconditionError("second fundamental form is not positive semidefinite", m)
    return m


def mean_curvature_bound(bd: BoundaryData, check_hypothesis: bool = True) -> float:
    """Minimum eigenvalue of ``-A - (H_N - H_M)/2`` on S+ (x) S+.

    Nonnegative whenever the boundary is convex.  Pass
    ``check_hypothesis=False`` to evaluate it for indefinite forms.
    """
    if check_hypothesis:
        check_convexity(bd)
    a = build_A_endo(bd)
    shift = 0.5 * (bd.mean_curvature_n - bd.mean_curvature_m)
    return SpinorEndo(-a.matrix - shift * np.eye(16), "bound").min_eig("++")


def q_spectrum(bd: BoundaryData) -> np.ndarray:
    return eigvalsh(build_Q(bd))

"""Curvature data for model metrics.

Round spheres, Fubini-Study, products of round 2-spheres, and the
cohomogeneity-one disk-bundle metrics with a round cylindrical end whose
doubles give nonnegatively curved metrics on CP^2 # CP^2.

Disk-bundle metrics
-------------------
Along a normal geodesic parametrized by ``r in [0, rmax]`` the curvature
operator is block diagonal, ``R = diag(R1, R2, R3)``, with

    R1 = [[(4b^2 - 3 phi^2)/(4b^4), -phi'/b^2], [-phi'/b^2, -phi''/phi]]
    R2 = R3 = [[phi^2/(4b^4), phi'/(2b^2)], [phi'/(2b^2), 0]]

on the frame 2-vectors ``(f23, f14), (f12, f34), (f13, f42)``.  Each pair is
a 2-vector and its Hodge dual, so the star is ``diag(H, H, H)`` there too.

The profile ``phi`` must vanish at 0 with slope 1/2, be odd there, be
nondecreasing and concave, and equal ``b`` from ``r0`` on.  We use

    phi(r) = b h(r / 2b),   h' = P(h) = (1 - h^2)^(3/4) exp(-mu h^2),  h(0) = 0.

``P`` is even, so ``h`` is odd; ``h`` reaches 1 at the finite time
``s0(mu) = int_0^1 dh / P(h)`` and stays there.  With ``x = h^2``,

    phi' = P(h)/2,
    -phi''/phi = exp(-2 mu x) (1.5 sqrt(1-x) + 2 mu (1-x)^(3/2)) / (4 b^2),

and ``R + tau star >= 0`` for ``tau = -phi'/2b^2`` reduces to
``2 mu >= 9/(4 - 3x) - 1.5/(1 - x)`` on ``[0, 1)``.  The parameter ``mu``
is fixed by ``r0 = 2 b s0(mu)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar

from .exterior import (
    bianchi_residual,
    change_of_basis_sdasd,
    hodge_star,
    ricci,
    scal as scal_of,
    sdasd_to_k,
    wedge2,
)
from .smallmat import min_eigenvalue

# K indices of the frame 2-vectors (f23, f14, f12, f34, f13, f42)
GZ_ORDER = np.array([5, 4, 0, 1, 2, 3])
MU_CONCAVE = -0.75  # smallest mu with phi'' <= 0
PSD_RTOL = 1e-9


@dataclass(frozen=True)
class MetricPointData:
    R: np.ndarray
    ric: np.ndarray
    scal: float
    tau: float | None
    label: str
    r: float | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "basis": "K",
            "matrix": self.R.tolist(),
            "ric": self.ric.tolist(),
            "scal": self.scal,
            "tau": self.tau,
        }
        if self.r is not None:
            out["r"] = self.r
        out.update(self.extras)
        return out


def _point(r_mat, tau, label, **kw) -> MetricPointData:
    return MetricPointData(r_mat, ricci(r_mat), scal_of(r_mat), tau, label, **kw)


def fubini_study(orientation: int = 1) -> MetricPointData:
    """Fubini-Study with holomorphic sectional curvature 4.

    ``orientation=-1`` gives the reversed orientation: the same operator
    read in a frame with ``e4`` flipped, for which the feasible ``tau`` are
    ``[-2, 0]`` instead of ``[0, 2]``.
    """
    r_mat = sdasd_to_k(np.diag([0.0, 0.0, 6.0, 2.0, 2.0, 2.0]))
    if orientation == -1:
        flip = wedge2(np.diag([1.0, 1.0, 1.0, -1.0]))
        r_mat = flip @ r_mat @ flip.T
    elif orientation != 1:
        raise ValueError("orientation must be +1 or -1")
    label = "fubini-study" if orientation == 1 else "fubini-study-reversed"
    return _point(r_mat, float(orientation), label)


def round_sphere(radius: float = 1.0) -> MetricPointData:
    if radius <= 0:
        raise ValueError("radius must be positive")
    return _point(np.eye(6) / radius**2, 0.0, "round-sphere")


def product_spheres(a: float = 1.0, b: float = 1.0) -> MetricPointData:
    """``S^2(a) x S^2(b)``, first factor tangent to ``e1, e2``."""
    if a <= 0 or b <= 0:
        raise ValueError("radii must be positive")
    r_mat = np.diag([1.0 / a**2, 1.0 / b**2, 0.0, 0.0, 0.0, 0.0])
    return _point(r_mat, 0.0, "product-spheres")


# --- disk-bundle profile ----------------------------------------------------


def _integrand(u, mu):
    # s(h) after t = 1 - u^4, which removes the (1 - t)^(-3/4) singularity
    t = 1.0 - u**4
    return 4.0 * np.exp(mu * t * t) * (1.0 + t) ** -0.75


@lru_cache(maxsize=256)
def plateau_time(mu: float) -> float:
    """``s0(mu) = int_0^1 exp(mu t^2) (1 - t^2)^(-3/4) dt``."""
    val, _ = quad(_integrand, 0.0, 1.0, args=(mu,), epsabs=1e-15, epsrel=1e-13)
    return val


def _time_to(h: float, mu: float) -> float:
    if h >= 1.0:
        return plateau_time(mu)
    u = (1.0 - h) ** 0.25
    tail, _ = quad(_integrand, 0.0, u, args=(mu,), epsabs=1e-15, epsrel=1e-13)
    return plateau_time(mu) - tail


def feasibility_mu() -> float:
    """Smallest ``mu`` for which the profile keeps ``R + tau star >= 0``."""
    res = minimize_scalar(
        lambda x: -(9.0 / (4.0 - 3.0 * x) - 1.5 / (1.0 - x)),
        bounds=(0.0, 0.9),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return 0.5 * float(-res.fun)


def min_plateau_ratio() -> float:
    """Smallest ``r0 / b`` giving a concave profile."""
    return 2.0 * plateau_time(MU_CONCAVE)


def feasible_plateau_ratio() -> float:
    """Smallest ``r0 / b`` for which the profile passes :func:`validate_gz`."""
    return 2.0 * plateau_time(feasibility_mu())


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class GZProfile:
    b: float
    r0: float
    rmax: float
    mu: float

    def __post_init__(self):
        if not (self.b > 0 and self.r0 > 0 and self.rmax >= self.r0):
            raise ProfileError("need b > 0 and 0 < r0 <= rmax")
        if self.mu < MU_CONCAVE:
            raise ProfileError(f"mu = {self.mu} gives a non-concave profile")

    @property
    def s0(self) -> float:
        return plateau_time(self.mu)

    def _check(self, r: float) -> float:
        r = float(r)
        if not (0.0 <= r <= self.rmax * (1 + 1e-15)):
            raise ValueError(f"r = {r} outside [0, {self.rmax}]")
        return min(r, self.rmax)

    def h(self, r: float) -> float:
        s = self._check(r) / (2.0 * self.b)
        if s >= self.s0:
            return 1.0
        if s == 0.0:
            return 0.0
        return brentq(lambda x: _time_to(x, self.mu) - s, 0.0, 1.0, xtol=1e-15, rtol=1e-15)

    def _p(self, h: float) -> float:
        return (1.0 - h * h) ** 0.75 * np.exp(-self.mu * h * h)

    def phi(self, r: float) -> float:
        return self.b * self.h(r)

    def phi_prime(self, r: float) -> float:
        return 0.5 * self._p(self.h(r))

    def neg_phi2_over_phi(self, r: float) -> float:
        """``-phi''/phi``, evaluated without dividing by ``phi``."""
        x = self.h(r) ** 2
        u = 1.0 - x
        return np.exp(-2.0 * self.mu * x) * (1.5 * np.sqrt(u) + 2.0 * self.mu * u**1.5) / (
            4.0 * self.b**2
        )

    def phi_double_prime(self, r: float) -> float:
        return -self.neg_phi2_over_phi(r) * self.phi(r)

    def values(self, r: float) -> tuple[float, float, float, float]:
        """``(phi, phi', phi'', -phi''/phi)`` at ``r`` from a single inversion."""
        h = self.h(r)
        x = h * h
        u = 1.0 - x
        p = u**0.75 * np.exp(-self.mu * x)
        q = np.exp(-2.0 * self.mu * x) * (1.5 * np.sqrt(u) + 2.0 * self.mu * u**1.5) / (
            4.0 * self.b**2
        )
        phi = self.b * h
        return phi, 0.5 * p, -q * phi, q


def gz_profile(b: float = 1.0, r0: float = 10.0, rmax: float = 12.0) -> GZProfile:
    """Profile with ``phi = b`` on ``[r0, rmax]``.

    Raises :class:`ProfileError` when ``r0 / b`` is below
    :func:`min_plateau_ratio` (about 3.3): no profile in the family is concave
    there.  Ratios between that and :func:`feasible_plateau_ratio` (about 6.85)
    give valid profiles that fail :func:`validate_gz`.
    """
    if b <= 0 or r0 <= 0 or rmax < r0:
        raise ProfileError("need b > 0 and 0 < r0 <= rmax")
    target = r0 / (2.0 * b)
    if target < plateau_time(MU_CONCAVE):
        raise ProfileError(
            f"r0/b = {r0 / b:.6g} is too small for a concave profile "
            f"(minimum {min_plateau_ratio():.6g})"
        )
    hi = 1.0
    while plateau_time(hi) < target:
        hi *= 2.0
    mu = brentq(lambda m: plateau_time(m) - target, MU_CONCAVE, hi, xtol=1e-15, rtol=1e-15)
    return GZProfile(float(b), float(r0), float(rmax), float(mu))


def gz_blocks(b: float, phi: float, dphi: float, q: float) -> np.ndarray:
    """Curvature operator in basis K from profile values; ``q = -phi''/phi``."""
    b2, b4 = b * b, b**4
    r1 = np.array([[(4 * b2 - 3 * phi**2) / (4 * b4), -dphi / b2], [-dphi / b2, q]])
    r2 = np.array([[phi**2 / (4 * b4), dphi / (2 * b2)], [dphi / (2 * b2), 0.0]])
    block = np.zeros((6, 6))
    block[0:2, 0:2] = r1
    block[2:4, 2:4] = r2
    block[4:6, 4:6] = r2
    out = np.zeros((6, 6))
    out[np.ix_(GZ_ORDER, GZ_ORDER)] = block
    return out


def gz_curvature_at(p: GZProfile, r: float) -> MetricPointData:
    phi, dphi, _, q = p.values(r)
    b = p.b
    r_mat = gz_blocks(b, phi, dphi, q)
    ric = np.diag(
        [
            phi**2 / (2 * b**4) + q,
            1 / b**2 - phi**2 / (2 * b**4),
            1 / b**2 - phi**2 / (2 * b**4),
            q,
        ]
    )
    s = 2 / b**2 - phi**2 / (2 * b**4) + 2 * q
    tau = 0.0 - dphi / (2 * b**2)
    return MetricPointData(
        r_mat, ric, float(s), float(tau), "grove-ziller", r=float(r),
        extras={"phi": phi, "phiPrime": dphi, "negPhi2OverPhi": q},
    )


@dataclass(frozen=True)
class GZValidation:
    passed: bool
    first_violation: float | None
    worst_margin: float
    worst_r: float
    points: int
    reason: str = ""


def validate_gz(p: GZProfile, density: int = 200) -> GZValidation:
    """Check ``R + tau star >= 0`` (with the profile's tau) on a uniform grid."""
    star = hodge_star()
    worst = (np.inf, 0.0)
    first = None
    reason = ""
    for r in np.linspace(0.0, p.rmax, density):
        d = gz_curvature_at(p, r)
        scale = max(float(np.abs(d.R).max()), 1e-300)
        m = min_eigenvalue(d.R + d.tau * star)
        if m < worst[0]:
            worst = (m, float(r))
        if m < -PSD_RTOL * scale and first is None:
            first = float(r)
            reason = f"min eig(R + tau star) = {m:.3e} at r = {r:.6g}"
        dphi, q = d.extras["phiPrime"], d.extras["negPhi2OverPhi"]
        if (dphi < 0 or q < -1e-12) and first is None:
            first = float(r)
            reason = f"profile not monotone/concave at r = {r:.6g}"
    return GZValidation(first is None, first, float(worst[0]), worst[1], density, reason)


def cheeger_glued(p: GZProfile, r: float) -> MetricPointData:
    """Double of the disk-bundle metric along its boundary, ``r in [0, 2 rmax]``."""
    r = float(r)
    if not (0.0 <= r <= 2.0 * p.rmax):
        raise ValueError(f"r = {r} outside [0, {2 * p.rmax}]")
    local = r if r <= p.rmax else 2.0 * p.rmax - r
    d = gz_curvature_at(p, local)
    neck = p.r0 <= r <= 2.0 * p.rmax - p.r0
    extras = dict(d.extras, neck=neck, localR=local)
    return MetricPointData(d.R, d.ric, d.scal, d.tau, "cheeger", r=r, extras=extras)


ZOO = {
    "fubini-study": lambda: fubini_study(1),
    "fubini-study-reversed": lambda: fubini_study(-1),
    "round-sphere": lambda: round_sphere(1.0),
    "product-spheres": lambda: product_spheres(1.0, 1.0),
    "gz-plateau": lambda: gz_curvature_at(gz_profile(), 12.0),
}


def check_consistency(d: MetricPointData) -> tuple[float, float]:
    """``(|trace(ric) - scal|, |bianchi residual|)``."""
    return abs(float(np.trace(d.ric)) - d.scal), abs(bianchi_residual(d.R))


__all__ = [
    "MetricPointData",
    "GZProfile",
    "GZValidation",
    "ProfileError",
    "fubini_study",
    "round_sphere",
    "product_spheres",
    "gz_profile",
    "gz_curvature_at",
    "gz_blocks",
    "validate_gz",
    "cheeger_glued",
    "feasibility_mu",
    "min_plateau_ratio",
    "feasible_plateau_ratio",
    "change_of_basis_sdasd",
    "ZOO",
]

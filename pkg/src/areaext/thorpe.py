"""Nonnegative sectional curvature in dimension four via a star shift.

A curvature operator ``R`` on 2-vectors of R^4 has ``sec >= 0`` exactly when
``R + tau * star`` is positive semidefinite for some real ``tau``.  The map
``lam(tau) = min_eig(R + tau * star)`` is a minimum of affine functions of
``tau``, hence concave, and the feasible set is a closed interval.  We find
its peak by golden-section search and then bisect each side for the edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .exterior import (
    Plane,
    NotDecomposableError,
    check_curvature_operator,
    hodge_star,
    sec,
    sec_min_bruteforce,
)
from .smallmat import eigvalsh, sym_eigen

FEASIBILITY_RTOL = 1e-9
ENDPOINT_ATOL = 1e-9
# edges are bisected against a roundoff-sized threshold rather than the full
# feasibility slack; with the slack the edges of a tangential touch would
# spread by sqrt(slack)
ROUNDOFF_FACTOR = 64.0 * np.finfo(float).eps
GOLDEN_RTOL = 1e-13
BRUTE_DENSITY = 100
CONSISTENCY_RTOL = 1e-6

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


class ConsistencyError(RuntimeError):
    """The eigenvalue certificate and the direct plane scan disagree.

    This is never a legitimate outcome; it points at a bug or at input so
    badly conditioned that double precision cannot decide.
    """


@dataclass(frozen=True)
class TauInterval:
    """Closed set of ``tau`` with ``R + tau * orientation * star >= 0``."""

    tau_min: float
    tau_max: float
    empty: bool
    strict: bool
    peak_tau: float
    peak_value: float
    scale: float
    orientation: int = 1

    @property
    def width(self) -> float:
        return 0.0 if self.empty else self.tau_max - self.tau_min

    @property
    def midpoint(self) -> float | None:
        return None if self.empty else 0.5 * (self.tau_min + self.tau_max)

    def contains(self, tau: float, atol: float = ENDPOINT_ATOL) -> bool:
        return (not self.empty) and self.tau_min - atol <= tau <= self.tau_max + atol

    def to_dict(self) -> dict:
        return {
            "empty": self.empty,
            "tauMin": None if self.empty else self.tau_min,
            "tauMax": None if self.empty else self.tau_max,
            "strict": self.strict,
            "peakTau": self.peak_tau,
            "peakMinEigenvalue": self.peak_value,
            "orientation": self.orientation,
        }


def _operator_scale(r: np.ndarray) -> float:
    w = eigvalsh(r)
    return float(max(abs(w[0]), abs(w[-1])))


def shifted_min_eigenvalue(r, tau: float, orientation: int = 1) -> float:
    """``min_eig(R + tau * orientation * star)``."""
    return float(eigvalsh(np.asarray(r, float) + (orientation * tau) * hodge_star())[0])


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    best = [(fc, c), (fd, d), (f(0.5 * (a + b)), 0.5 * (a + b))]
    val, x = max(best)
    return x, val


def _bisect_edge(f, inside: float, outside: float, level: float) -> float:
    """Last point from ``inside`` toward ``outside`` with ``f >= level``."""
    while abs(outside - inside) > ENDPOINT_ATOL:
        mid = 0.5 * (inside + outside)
        if f(mid) >= level:
            inside = mid
        else:
            outside = mid
    return inside


def tau_interval(r, orientation: int = 1) -> TauInterval:
    """Interval of ``tau`` for which ``R + tau * star`` is positive semidefinite.

    ``orientation=-1`` uses the reversed orientation, whose star is the
    negative of the standard one.  An empty result is a valid answer.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    r = check_curvature_operator(r)
    scale = _operator_scale(r)
    star = orientation * hodge_star()

    def lam(t: float) -> float:
        return float(eigvalsh(r + t * star)[0])

    bound = scale + 1.0
    peak_tau, peak = _golden_max(lam, -bound, bound, GOLDEN_RTOL * bound)
    slack = FEASIBILITY_RTOL * scale
    if peak < -slack:
        return TauInterval(np.nan, np.nan, True, False, peak_tau, peak, scale, orientation)
    strict = peak >= FEASIBILITY_RTOL * scale and peak > 0.0
    level = -ROUNDOFF_FACTOR * scale
    if peak < level:
        # feasible only within the slack: collapse to the peak
        lo = hi = peak_tau
    else:
        lo = _bisect_edge(lam, peak_tau, -bound, level)
        hi = _bisect_edge(lam, peak_tau, bound, level)
    return TauInterval(lo, hi, False, bool(strict), peak_tau, peak, scale, orientation)


@dataclass(frozen=True)
class SecCertificate:
    """Either a feasible ``tau`` (sec >= 0) or a plane with negative curvature."""

    interval: TauInterval
    feasible_tau: float | None
    counterexample: Plane | None
    counterexample_sec: float | None

    @property
    def nonnegative(self) -> bool:
        return self.feasible_tau is not None

    @property
    def strict(self) -> bool:
        return self.interval.strict

    def to_dict(self) -> dict:
        out = {"interval": self.interval.to_dict(), "feasibleTau": self.feasible_tau}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
            out["counterexampleSec"] = self.counterexample_sec
        return out


def _plane_from_peak(r: np.ndarray, interval: TauInterval) -> Plane | None:
    # at the peak some unit vector in the bottom eigenspace is isotropic for
    # star; it is then a plane with sec equal to the peak value
    star = interval.orientation * hodge_star()
    _, v = sym_eigen(r + interval.peak_tau * star)
    v1, v2 = v[:, 0], v[:, 1]
    q11, q12, q22 = v1 @ star @ v1, v1 @ star @ v2, v2 @ star @ v2
    # zero of q11 cos^2 + 2 q12 cos sin + q22 sin^2
    candidates = []
    if abs(q22) > 1e-15:
        disc = q12 * q12 - q11 * q22
        if disc >= 0.0:
            for sgn in (1.0, -1.0):
                candidates.append(np.arctan2(-q12 + sgn * np.sqrt(disc), q22))
    elif abs(q12) > 1e-15:
        candidates.append(np.arctan2(-q11, 2.0 * q12))
    else:
        candidates.append(np.pi / 2)
    best = None
    for th in candidates:
        s = np.cos(th) * v1 + np.sin(th) * v2
        try:
            p = Plane.from_bivector(s)
        except NotDecomposableError:
            continue
        val = sec(r, p)
        if best is None or val < best[0]:
            best = (val, p)
    if best is None or best[0] >= 0.0:
        return None
    return best[1]


def sec_nonneg(r, orientation: int = 1, density: int = BRUTE_DENSITY) -> SecCertificate:
    """Certify ``sec >= 0`` or produce a plane where it fails.

    Whichever side is returned, the other is cross-checked; a contradiction
    raises :class:`ConsistencyError`.
    """
    r = check_curvature_operator(r)
    interval = tau_interval(r, orientation)
    grid_min, grid_plane = sec_min_bruteforce(r, density)
    scale = max(interval.scale, 1e-300)
    if not interval.empty:
        if grid_min < -CONSISTENCY_RTOL * scale:
            raise ConsistencyError(
                f"tau interval is nonempty but a plane has sec = {grid_min:.3e}"
            )
        return SecCertificate(interval, interval.midpoint, None, None)
    if grid_min < 0.0:
        return SecCertificate(interval, None, grid_plane, grid_min)
    plane = _plane_from_peak(r, interval)
    if plane is None:
        raise ConsistencyError(
            f"tau interval is empty (peak {interval.peak_value:.3e}) "
            "but no plane with negative curvature was found"
        )
    return SecCertificate(interval, None, plane, sec(r, plane))


def sign_constrained_tau(
    r, sign: Literal["nonpositive", "nonnegative"], orientation: int = 1
) -> float | None:
    """A feasible ``tau`` of the requested sign, or ``None``."""
    if sign not in ("nonpositive", "nonnegative"):
        raise ValueError("sign must be 'nonpositive' or 'nonnegative'")
    r = check_curvature_operator(r)
    iv = tau_interval(r, orientation)
    if iv.empty:
        return None
    if sign == "nonpositive":
        lo, hi = iv.tau_min, min(iv.tau_max, 0.0)
    else:
        lo, hi = max(iv.tau_min, 0.0), iv.tau_max
    slack = FEASIBILITY_RTOL * iv.scale
    candidates = [0.5 * (lo + hi)] if lo <= hi else []
    candidates.append(0.0)
    for t in candidates:
        ok_sign = t <= 0.0 if sign == "nonpositive" else t >= 0.0
        if ok_sign and shifted_min_eigenvalue(r, t, orientation) >= -slack:
            return float(t)
    return None

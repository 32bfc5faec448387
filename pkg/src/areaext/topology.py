"""Index formulas for twisted Dirac operators and competitor-class tests.

All arithmetic is exact (``fractions.Fraction``).  For a map ``f: N -> M``
of nonzero degree between closed oriented 4-manifolds the index is

    ind = -sigma(N)/4 + deg(f) (3 sigma(M)/4 + chi(M)/2),

and on manifolds with boundary it is

    ind = (-sigma(N) + 2 chi(M) + 3 sigma(M) + 2 b0(dM) + 2 b2(dM)) / 4.

A non-integer value means the input data are inconsistent (often a
signature taken with the wrong convention on a manifold with boundary); it
is reported through a warning rather than an exception.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, fields
from fractions import Fraction


class NonIntegerIndexWarning(UserWarning):
    pass


@dataclass(frozen=True)
class TopologyData:
    euler_m: int | None = None
    sigma_m: int | None = None
    sigma_n: int | None = None
    deg: int | None = None
    b0_dm: int | None = None
    b2_dm: int | None = None
    b2_m: int | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise TypeError(f"{f.name} must be an integer, got {v!r}")
        if self.deg == 0:
            raise ValueError("degree must be nonzero")
        for name in ("b0_dm", "b2_dm", "b2_m"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative")

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValueError(f"missing field(s): {', '.join(missing)}")


def _flag(value: Fraction, what: str) -> Fraction:
    if value.denominator != 1:
        warnings.warn(
            f"{what} index {value} is not an integer; check the input data",
            NonIntegerIndexWarning,
            stacklevel=3,
        )
    return value


def index_closed(t: TopologyData) -> Fraction:
    t.require("euler_m", "sigma_m", "sigma_n", "deg")
    val = Fraction(-t.sigma_n, 4) + t.deg * (
        Fraction(3 * t.sigma_m, 4) + Fraction(t.euler_m, 2)
    )
    return _flag(val, "closed")


def index_boundary(t: TopologyData) -> Fraction:
    t.require("euler_m", "sigma_m", "sigma_n", "b0_dm", "b2_dm")
    val = Fraction(
        -t.sigma_n + 2 * t.euler_m + 3 * t.sigma_m + 2 * t.b0_dm + 2 * t.b2_dm, 4
    )
    return _flag(val, "boundary")


def in_c0(t: TopologyData) -> bool:
    """``2 chi(M) + 3 sigma(M) > sigma(N) / deg``."""
    t.require("euler_m", "sigma_m", "sigma_n", "deg")
    return 2 * t.euler_m + 3 * t.sigma_m > Fraction(t.sigma_n, t.deg)


def in_c0_self(t: TopologyData) -> bool:
    """Self-maps: ``4 + (1/deg - 1) b2(M) > 0``."""
    t.require("deg", "b2_m")
    return 4 + (Fraction(1, t.deg) - 1) * t.b2_m > 0


def boundary_sum(t: TopologyData) -> int:
    t.require("euler_m", "sigma_m", "b0_dm", "b2_dm")
    return 2 * t.euler_m + 3 * t.sigma_m + 2 * t.b0_dm + 2 * t.b2_dm


def in_c_boundary(t: TopologyData) -> bool:
    """``2 chi(M) + 3 sigma(M) + 2 b0(dM) + 2 b2(dM) > sigma(N)``."""
    t.require("sigma_n")
    return boundary_sum(t) > t.sigma_n


def in_c_loc(t: TopologyData) -> bool:
    """Ball-like data: the boundary sum equals 4 and ``|sigma(N)| < 4``."""
    t.require("sigma_n")
    return boundary_sum(t) == 4 and abs(t.sigma_n) < 4


def class_predicates(t: TopologyData) -> dict[str, bool | None]:
    """Membership in each class; ``None`` where the data do not determine it."""
    out: dict[str, bool | None] = {}
    for name, fn in (
        ("C0", in_c0),
        ("C0self", in_c0_self),
        ("Cboundary", in_c_boundary),
        ("Cloc", in_c_loc),
    ):
        try:
            out[name] = fn(t)
        except ValueError:
            out[name] = None
    return out


def simply_connected_data(b_plus: int, b_minus: int) -> tuple[int, int]:
    """``(chi, sigma)`` of a closed simply connected 4-manifold."""
    return 2 + b_plus + b_minus, b_plus - b_minus

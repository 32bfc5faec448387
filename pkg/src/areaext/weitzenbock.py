"""Twisted-spinor curvature endomorphisms on S(W) (x) S(V).

For a symmetric operator ``R`` on 2-vectors of V and a map ``l: W -> V``
with exterior square ``L``, two endomorphisms of the 16-dimensional space
S(W) (x) S(V) are built from sums over an orthonormal basis of 2-vectors,
with 2-vectors acting through their spin lift:

    Rend(R, L) = -2 sum_i b_i (x) R(L b_i)
    Tend(R, L) = -sum_i (L* a_i (x) 1 + 1 (x) a_i)(L* R a_i (x) 1 + 1 (x) R a_i)

They are related by ``Rend = Tend - tr(L* R L)/4 - scal_R/8`` whenever ``R``
satisfies the Bianchi identity.  ``Tend`` is positive for ``R >= 0``, and
``Tend(star, L)`` is positive on S+ (x) S+ when ``L`` is nonincreasing.
These facts turn ``R + tau star >= 0`` with ``tau <= 0`` into a lower bound
for ``Rend`` on S+ (x) S+, which is what the extremality certificate reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import restrict, xi0_inv_columns
from .exterior import (
    check_curvature_operator,
    hodge_star,
    is_nonincreasing,
    ricci,
    scal,
    wedge2,
)
from .sampling import (
    is_isometry,
    random_map,
    random_nonincreasing_wedge_map,
    random_nonpositive_tau_operator,
    random_bianchi,
    random_psd,
    random_sec_nonneg,
    sample_rng,
)
from .smallmat import eigvalsh, min_eigenvalue, singular_values
from .thorpe import tau_interval

ID4 = np.eye(4, dtype=complex)
CHECK_RTOL = 1e-9
HYPOTHESIS_MARGIN = 1e-9
NON_ISOMETRY_GAP = 0.01


class PreconditionError(ValueError):
    """A hypothesis of a certificate is violated; ``quantity`` says by how much."""

    def __init__(self, what: str, quantity: float):
        self.what = what
        self.quantity = quantity
        super().__init__(f"{what} (value {quantity:.6g})")


@dataclass(frozen=True)
class SpinorEndo:
    matrix: np.ndarray
    tag: str

    def block(self, sector: str = "++") -> np.ndarray:
        return restrict(self.matrix, sector)

    def min_eig(self, sector: str = "++") -> float:
        return min_eigenvalue(self.block(sector))

    def max_eig(self, sector: str = "++") -> float:
        return float(eigvalsh(self.block(sector))[-1])

    def hermitian_defect(self) -> float:
        m = self.matrix
        return float(np.linalg.norm(m - m.conj().T))


def _as_map(l) -> np.ndarray:
    l = np.asarray(l, dtype=float)
    if l.shape != (4, 4):
        raise ValueError(f"linear map must be 4x4, got {l.shape}")
    return l


def _basis(basis) -> np.ndarray:
    if basis is None:
        return np.eye(6)
    b = np.asarray(basis, dtype=float)
    if b.shape != (6, 6) or np.linalg.norm(b.T @ b - np.eye(6)) > 1e-12:
        raise ValueError("basis must be an orthogonal 6x6 matrix")
    return b


def build_R_endo(r, l, basis=None) -> SpinorEndo:
    """``-2 sum_i xi(b_i) (x) xi(R L b_i)`` over an orthonormal basis of 2-vectors."""
    r = check_curvature_operator(r)
    big_l = wedge2(_as_map(l))
    b = _basis(basis)
    left = xi0_inv_columns(b)
    right = xi0_inv_columns(r @ big_l @ b)
    m = -2.0 * np.einsum("iab,icd->acbd", left, right).reshape(16, 16)
    return SpinorEndo(m, "R")


def build_T_endo(r, l, basis=None) -> SpinorEndo:
    """The Hodge-type endomorphism; ``r`` need only be symmetric."""
    r = check_curvature_operator(r, require_bianchi=False)
    big_l = wedge2(_as_map(l))
    a = _basis(basis)
    xa = xi0_inv_columns(a)
    xla = xi0_inv_columns(big_l.T @ a)
    xra = xi0_inv_columns(r @ a)
    xlra = xi0_inv_columns(big_l.T @ r @ a)
    m = np.zeros((16, 16), dtype=complex)
    for i in range(6):
        p = np.kron(xla[i], ID4) + np.kron(ID4, xa[i])
        q = np.kron(xlra[i], ID4) + np.kron(ID4, xra[i])
        m -= p @ q
    return SpinorEndo(m, "T")


def _identity_scale(r, l) -> float:
    return 1.0 + float(np.linalg.norm(r)) * float(np.linalg.norm(l)) ** 4


@dataclass(frozen=True)
class IdentityCheck:
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def check_rt_identity(r, l) -> IdentityCheck:
    """Frobenius residual of ``Rend - (Tend - tr(L*RL)/4 - scal/8)``."""
    r = check_curvature_operator(r)
    l = _as_map(l)
    big_l = wedge2(l)
    shift = 0.25 * np.trace(big_l.T @ r @ big_l) + 0.125 * scal(r)
    lhs = build_R_endo(r, l).matrix
    rhs = build_T_endo(r, l).matrix - shift * np.eye(16)
    res = float(np.linalg.norm(lhs - rhs))
    return IdentityCheck(res, CHECK_RTOL * _identity_scale(r, l))


@dataclass(frozen=True)
class TraceBound:
    lhs: float  # tr(L* R L)
    rhs: float  # scal / 2
    slack: float


def trace_slack(r, l) -> float:
    big_l = wedge2(l)
    return float(np.trace(r) - np.trace(big_l.T @ r @ big_l))


def trace_bound(r, l, *, check: bool = True) -> TraceBound:
    """``tr(L* R L) <= scal_R / 2`` for ``sec_R >= 0`` and nonincreasing ``L``."""
    r = check_curvature_operator(r)
    l = _as_map(l)
    if check:
        iv = tau_interval(r)
        if iv.empty:
            raise PreconditionError("sectional curvature is not nonnegative", iv.peak_value)
        big_norm = float(singular_values(wedge2(l))[0])
        if not is_nonincreasing(wedge2(l)):
            raise PreconditionError("exterior square of l is not nonincreasing", big_norm)
    big_l = wedge2(l)
    lhs = float(np.trace(big_l.T @ r @ big_l))
    rhs = 0.5 * scal(r)
    return TraceBound(lhs, rhs, rhs - lhs)


def rigidity_hypotheses(r) -> tuple[float, float]:
    """Margins ``min eig(Ric)`` and ``min eig(scal/2 g - Ric)``."""
    ric = ricci(r)
    return min_eigenvalue(ric), min_eigenvalue(0.5 * scal(r) * np.eye(4) - ric)


@dataclass(frozen=True)
class RigidityProbe:
    min_slack: float
    worst_map: np.ndarray
    samples: int


def rigidity_probe(r, samples: int = 1000, seed: int = 0) -> RigidityProbe:
    """Worst trace-bound slack over random nonincreasing non-isometries.

    Requires ``scal/2 g > Ric > 0``; under it equality in the trace bound
    forces an isometry, so every sample must leave strictly positive slack.
    """
    r = check_curvature_operator(r)
    ric_margin, gap_margin = rigidity_hypotheses(r)
    if ric_margin <= HYPOTHESIS_MARGIN:
        raise PreconditionError("Ricci curvature is not positive definite", ric_margin)
    if gap_margin <= HYPOTHESIS_MARGIN:
        raise PreconditionError("scal/2 g - Ric is not positive definite", gap_margin)
    iv = tau_interval(r)
    if iv.empty:
        raise PreconditionError("sectional curvature is not nonnegative", iv.peak_value)
    worst = (np.inf, None)
    taken = 0
    idx = 0
    while taken < samples:
        rng = sample_rng(seed, idx)
        idx += 1
        l = random_nonincreasing_wedge_map(rng)
        if np.max(np.abs(singular_values(l) - 1.0)) < NON_ISOMETRY_GAP:
            continue
        taken += 1
        s = trace_slack(r, l)
        if s < worst[0]:
            worst = (s, l)
    return RigidityProbe(float(worst[0]), worst[1], samples)


@dataclass(frozen=True)
class ExtremalityReport:
    area_nonincreasing: bool
    scal_inequality: bool  # scal_N >= scal_M
    trace_bound: float  # scal_M / 2 - tr(L* R L)
    t_shift_min: float  # min eig Tend(R + tau star, L) on S+ (x) S+
    t_star_min: float  # min eig of -tau Tend(star, L) on S+ (x) S+
    t_psd_min: float  # min eig Tend(R, L) on S+ (x) S+
    weitzenboeck_gap: float
    rigidity_flag: bool
    isometry: bool
    scal_m: float
    scal_n: float
    tau: float
    tolerance: float
    notes: list[str] = field(default_factory=list)

    @property
    def gap_ok(self) -> bool:
        return self.weitzenboeck_gap >= -self.tolerance

    def to_dict(self) -> dict:
        return {
            "competitorChecks": {
                "areaNonincreasing": self.area_nonincreasing,
                "scalInequality": self.scal_inequality,
            },
            "traceBound": self.trace_bound,
            "tShiftMin": self.t_shift_min,
            "tStarMin": self.t_star_min,
            "tPsdMin": self.t_psd_min,
            "weitzenboeckGap": self.weitzenboeck_gap,
            "gapOk": self.gap_ok,
            "rigidityFlag": self.rigidity_flag,
            "isometry": self.isometry,
            "scalM": self.scal_m,
            "scalN": self.scal_n,
            "tau": self.tau,
            "notes": list(self.notes),
        }


def extremality_certificate(r_m, tau: float, scal_n: float, l) -> ExtremalityReport:
    """Pointwise certificate behind scalar-curvature extremality.

    Given ``R_M + tau star >= 0`` with ``tau <= 0`` and an area-nonincreasing
    ``l``, ``Tend(R_M, L)`` is positive on S+ (x) S+ and the reported gap
    ``min eig(scal_N/4 + Rend) - (scal_N - scal_M)/4`` is nonnegative.
    """
    r = check_curvature_operator(r_m)
    l = _as_map(l)
    scale = max(float(np.linalg.norm(r)), 1.0)
    tol = CHECK_RTOL * scale
    if tau > 0.0:
        raise PreconditionError("tau must be nonpositive", tau)
    star = hodge_star()
    shifted = min_eigenvalue(r + tau * star)
    if shifted < -tol:
        raise PreconditionError("R_M + tau star is not positive semidefinite", shifted)
    big_l = wedge2(l)
    wn = float(singular_values(big_l)[0])
    if not is_nonincreasing(big_l):
        raise PreconditionError("exterior square of l is not nonincreasing", wn)

    scal_m = scal(r)
    notes = []
    t_shift = build_T_endo(r + tau * star, l).min_eig("++")
    t_star = (-tau * build_T_endo(star, l).matrix)
    t_star_min = min_eigenvalue(restrict(t_star, "++"))
    t_psd = build_T_endo(r, l).min_eig("++")
    rend = build_R_endo(r, l).matrix
    gap = min_eigenvalue(restrict(0.25 * scal_n * np.eye(16) + rend, "++")) - 0.25 * (
        scal_n - scal_m
    )
    scal_ok = scal_n >= scal_m - tol
    if not scal_ok:
        notes.append(f"scal_N = {scal_n:.6g} < scal_M = {scal_m:.6g}")
    ric_margin, gap_margin = rigidity_hypotheses(r)
    rigid = ric_margin > HYPOTHESIS_MARGIN and gap_margin > HYPOTHESIS_MARGIN
    return ExtremalityReport(
        area_nonincreasing=True,
        scal_inequality=bool(scal_ok),
        trace_bound=float(np.trace(r) - np.trace(big_l.T @ r @ big_l)),
        t_shift_min=t_shift,
        t_star_min=t_star_min,
        t_psd_min=t_psd,
        weitzenboeck_gap=float(gap),
        rigidity_flag=bool(rigid),
        isometry=is_isometry(l, 1e-9),
        scal_m=scal_m,
        scal_n=float(scal_n),
        tau=float(tau),
        tolerance=tol,
        notes=notes,
    )


@dataclass
class SweepResult:
    name: str
    samples: int = 0
    failures: int = 0
    worst: float = np.inf  # smallest normalized margin; negative beyond -tol fails
    worst_index: int = -1

    def record(self, index: int, margin: float, tol: float) -> None:
        self.samples += 1
        if margin < -tol:
            self.failures += 1
        if margin < self.worst:
            self.worst, self.worst_index = margin, index

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "worstMargin": self.worst,
            "worstIndex": self.worst_index,
        }


def lemma_sweep(samples: int = 500, seed: int = 0) -> list[SweepResult]:
    """Random checks of every identity and inequality in this module.

    Margins are normalized so that each check passes when its margin is at
    least ``-CHECK_RTOL``.  Sample ``i`` of check ``k`` draws from
    ``sample_rng(seed, k * samples + i)``.
    """
    star = hodge_star()
    names = ["rt-identity", "t-psd", "t-star-plus", "t-star-minus", "trace-bound", "t-decomposition"]
    out = [SweepResult(n) for n in names]
    for i in range(samples):
        rng = sample_rng(seed, i)
        r = random_bianchi(rng)
        l = random_map(rng)
        c = check_rt_identity(r, l)
        out[0].record(i, -c.residual / c.tolerance * CHECK_RTOL, CHECK_RTOL)

        rng = sample_rng(seed, samples + i)
        p = random_psd(rng)
        l = random_map(rng)
        out[1].record(i, min_eigenvalue(build_T_endo(p, l).matrix) / np.linalg.norm(p), CHECK_RTOL)

        rng = sample_rng(seed, 2 * samples + i)
        l = random_nonincreasing_wedge_map(rng)
        t = build_T_endo(star, l)
        out[2].record(i, t.min_eig("++"), CHECK_RTOL)
        out[3].record(i, -t.max_eig("--"), CHECK_RTOL)

        rng = sample_rng(seed, 3 * samples + i)
        r = random_sec_nonneg(rng, rank=int(rng.integers(1, 7)))
        l = random_nonincreasing_wedge_map(rng)
        tb = trace_bound(r, l, check=False)
        out[4].record(i, tb.slack / max(np.linalg.norm(r), 1e-300), CHECK_RTOL)

        rng = sample_rng(seed, 4 * samples + i)
        r, _ = random_nonpositive_tau_operator(rng, rank=int(rng.integers(1, 7)))
        l = random_nonincreasing_wedge_map(rng)
        out[5].record(
            i, build_T_endo(r, l).min_eig("++") / max(np.linalg.norm(r), 1e-300), CHECK_RTOL
        )
    return out

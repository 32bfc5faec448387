"""Two-vectors on R^4, the Hodge star, and algebraic curvature operators.

Curvature operators are 6x6 symmetric arrays in the ordered basis

    K = (e1^e2, e3^e4, e1^e3, e4^e2, e1^e4, e2^e3)

which pairs every basis 2-vector with its Hodge dual, so the star is
``diag(H, H, H)`` with ``H = [[0, 1], [1, 0]]``.  Frame indices are 0-based in
code (``e1`` is index 0).

The pairing between a curvature operator ``R`` and the 4-tensor is
``<R_{x,y} z, w> = <R(x^y), w^z>``, so ``sec(x^y) = <R(x^y), x^y>`` and
``Ric(x, y) = sum_i <R(e_i^x), e_i^y>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .smallmat import min_eigenvalue, singular_values

K_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (2, 3), (0, 2), (3, 1), (0, 3), (1, 2))
K_LABELS = ("e12", "e34", "e13", "e42", "e14", "e23")

SYM_RTOL = 1e-12
BIANCHI_RTOL = 1e-10
QUADRIC_TOL = 1e-9
NONINCREASING_TOL = 1e-12


class CurvatureOperatorError(ValueError):
    pass


class NotDecomposableError(ValueError):
    pass


def _pair_lookup() -> dict[tuple[int, int], tuple[int, int]]:
    table = {}
    for idx, (a, b) in enumerate(K_PAIRS):
        table[(a, b)] = (idx, 1)
        table[(b, a)] = (idx, -1)
    return table


PAIR_INDEX = _pair_lookup()


def bivector(x, y) -> np.ndarray:
    """K-coordinates of ``x ^ y``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.array([x[a] * y[b] - x[b] * y[a] for a, b in K_PAIRS])


def basis_bivector(i: int, j: int) -> np.ndarray:
    """K-coordinates of ``e_i ^ e_j`` (0-based, i != j)."""
    out = np.zeros(6)
    idx, sign = PAIR_INDEX[(i, j)]
    out[idx] = sign
    return out


def wedge2(l) -> np.ndarray:
    """Matrix of the exterior square of a 4x4 map in basis K."""
    l = np.asarray(l, dtype=float)
    if l.shape != (4, 4):
        raise ValueError(f"wedge2 expects a 4x4 matrix, got {l.shape}")
    return np.column_stack([bivector(l[:, a], l[:, b]) for a, b in K_PAIRS])


def is_nonincreasing(m, tol: float = NONINCREASING_TOL) -> bool:
    """True when every singular value is at most ``1 + tol``."""
    return bool(singular_values(m)[0] <= 1.0 + tol)


def is_area_nonincreasing(l, tol: float = NONINCREASING_TOL) -> bool:
    return is_nonincreasing(wedge2(l), tol)


@lru_cache(maxsize=None)
def _star() -> np.ndarray:
    h = np.array([[0.0, 1.0], [1.0, 0.0]])
    s = np.zeros((6, 6))
    for k in range(3):
        s[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = h
    s.setflags(write=False)
    return s


def hodge_star() -> np.ndarray:
    return _star().copy()


@lru_cache(maxsize=None)
def _sdasd() -> np.ndarray:
    r = 1.0 / np.sqrt(2.0)
    p = np.zeros((6, 6))
    for k in range(3):
        p[2 * k, k] = r
        p[2 * k + 1, k] = r
        p[2 * k, k + 3] = r
        p[2 * k + 1, k + 3] = -r
    p.setflags(write=False)
    return p


def change_of_basis_sdasd() -> np.ndarray:
    """Orthogonal P whose columns are a self-dual then anti-self-dual basis.

    ``P.T @ hodge_star() @ P == diag(1, 1, 1, -1, -1, -1)``; an operator given
    as ``M`` in that basis is ``P @ M @ P.T`` in basis K.
    """
    return _sdasd().copy()


def sdasd_to_k(m) -> np.ndarray:
    p = _sdasd()
    return p @ np.asarray(m, dtype=float) @ p.T


def k_to_sdasd(m) -> np.ndarray:
    p = _sdasd()
    return p.T @ np.asarray(m, dtype=float) @ p


# --- curvature operators -------------------------------------------------


def bianchi_residual(r) -> float:
    """``trace(star @ R)``; zero exactly on algebraic curvature operators."""
    return float(np.sum(_star() * np.asarray(r, dtype=float)))


def bianchi_project(s) -> np.ndarray:
    """Orthogonal projection of a symmetric 6x6 matrix onto Bianchi operators."""
    s = np.asarray(s, dtype=float)
    return s - (bianchi_residual(s) / 6.0) * _star()


def check_curvature_operator(r, *, require_bianchi: bool = True) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (6, 6):
        raise CurvatureOperatorError(f"curvature operator must be 6x6, got {r.shape}")
    if not np.all(np.isfinite(r)):
        raise CurvatureOperatorError("curvature operator has non-finite entries")
    norm = float(np.linalg.norm(r))
    asym = float(np.linalg.norm(r - r.T))
    if asym > SYM_RTOL * max(norm, 1.0):
        raise CurvatureOperatorError(f"curvature operator is not symmetric (asymmetry {asym:.3e})")
    if require_bianchi:
        res = abs(bianchi_residual(r))
        if res > BIANCHI_RTOL * max(norm, 1.0):
            raise CurvatureOperatorError(
                f"first Bianchi identity fails: |tr(star R)| = {res:.3e}"
            )
    return 0.5 * (r + r.T)


def curvature_tensor(r) -> np.ndarray:
    """``T[a, b, c, d] = <R(e_a ^ e_b), e_c ^ e_d>``, antisymmetric in each pair."""
    r = np.asarray(r, dtype=float)
    t = np.zeros((4, 4, 4, 4))
    for (a, b), (i, si) in PAIR_INDEX.items():
        for (c, d), (j, sj) in PAIR_INDEX.items():
            t[a, b, c, d] = si * sj * r[i, j]
    return t


def ricci(r) -> np.ndarray:
    t = curvature_tensor(r)
    return np.einsum("ixiy->xy", t)


def scal(r) -> float:
    return 2.0 * float(np.trace(np.asarray(r, dtype=float)))


def curvature_endomorphism(r, x, y) -> np.ndarray:
    """The 4x4 skew matrix of ``R_{x,y}`` acting on vectors."""
    t = curvature_tensor(r)
    # <R_{x,y} z, w> = T[x, y, w, z]; matrix entry (w, z)
    return np.einsum("a,b,abwz->wz", np.asarray(x, float), np.asarray(y, float), t)


# --- planes ---------------------------------------------------------------


@dataclass(frozen=True)
class Plane:
    """An oriented 2-plane written as ``sigma = sd + asd``.

    ``sd`` lies in the self-dual and ``asd`` in the anti-self-dual 2-vectors,
    each of norm ``1/sqrt(2)``; both are stored as K-coordinates.
    """

    sd: np.ndarray
    asd: np.ndarray

    def __post_init__(self):
        sigma = self.sigma
        res = abs(float(sigma @ _star() @ sigma))
        if res > QUADRIC_TOL or abs(np.linalg.norm(sigma) - 1.0) > QUADRIC_TOL:
            raise NotDecomposableError(
                f"2-vector is not a unit plane (quadric residual {res:.3e})"
            )

    @property
    def sigma(self) -> np.ndarray:
        return np.asarray(self.sd) + np.asarray(self.asd)

    @classmethod
    def from_unit_vectors(cls, a, b) -> "Plane":
        """From unit 3-vectors in the self-dual / anti-self-dual bases."""
        p = _sdasd()
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        a = a / np.linalg.norm(a)
        b = b / np.linalg.norm(b)
        r = 1.0 / np.sqrt(2.0)
        return cls(sd=r * (p[:, :3] @ a), asd=r * (p[:, 3:] @ b))

    @classmethod
    def from_bivector(cls, sigma) -> "Plane":
        sigma = np.asarray(sigma, dtype=float)
        n = np.linalg.norm(sigma)
        if n == 0.0:
            raise NotDecomposableError("zero 2-vector")
        sigma = sigma / n
        star_sigma = _star() @ sigma
        return cls(sd=0.5 * (sigma + star_sigma), asd=0.5 * (sigma - star_sigma))

    @classmethod
    def spanned_by(cls, x, y) -> "Plane":
        return cls.from_bivector(bivector(x, y))

    def to_dict(self) -> dict:
        return {"sigma": self.sigma.tolist(), "basis": "K"}


def sec(r, plane: Plane) -> float:
    s = plane.sigma
    return float(s @ np.asarray(r, dtype=float) @ s)


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors in R^3, both poles included."""
    if n < 2:
        raise ValueError("need at least two points")
    i = np.arange(n)
    z = 1.0 - 2.0 * i / (n - 1)
    rad = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden = np.pi * (3.0 - np.sqrt(5.0))
    theta = golden * i
    return np.column_stack([rad * np.cos(theta), rad * np.sin(theta), z])


def _sec_grid(r, density: int) -> tuple[np.ndarray, np.ndarray]:
    if density < 8:
        raise ValueError("grid density must be at least 8")
    pts = fibonacci_sphere(density)
    m = k_to_sdasd(r)
    app = m[:3, :3]
    apm = m[:3, 3:]
    amm = m[3:, 3:]
    a = np.einsum("ni,ij,nj->n", pts, app, pts)
    b = np.einsum("ni,ij,nj->n", pts, amm, pts)
    c = pts @ apm @ pts.T
    return 0.5 * (a[:, None] + 2.0 * c + b[None, :]), pts


def sec_min_bruteforce(r, density: int = 100) -> tuple[float, Plane]:
    """Minimum of sectional curvature over a product Fibonacci grid.

    The grid is ``density`` points on the unit sphere of self-dual forms
    times ``density`` points on the anti-self-dual one.
    """
    vals, pts = _sec_grid(r, density)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return float(vals[i, j]), Plane.from_unit_vectors(pts[i], pts[j])


def sec_max_bruteforce(r, density: int = 100) -> tuple[float, Plane]:
    vals, pts = _sec_grid(r, density)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    return float(vals[i, j]), Plane.from_unit_vectors(pts[i], pts[j])


def is_psd(m, slack: float = 0.0) -> bool:
    return min_eigenvalue(m) >= -slack


# --- JSON documents -------------------------------------------------------


def curvature_from_json(doc: dict) -> np.ndarray:
    """Load ``{"basis": "K" | "SDASD", "matrix": [[...] * 6]}`` into basis K."""
    if not isinstance(doc, dict):
        raise CurvatureOperatorError("curvature document must be a JSON object")
    basis = doc.get("basis", "K")
    if basis not in ("K", "SDASD"):
        raise CurvatureOperatorError(f"field 'basis': unknown basis {basis!r}")
    if "matrix" not in doc:
        raise CurvatureOperatorError("field 'matrix' is missing")
    try:
        m = np.array(doc["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise CurvatureOperatorError(f"field 'matrix': {exc}") from None
    if m.shape != (6, 6):
        raise CurvatureOperatorError(f"field 'matrix': expected 6x6, got shape {m.shape}")
    if basis == "SDASD":
        check_curvature_operator(m, require_bianchi=False)
        m = sdasd_to_k(m)
    return check_curvature_operator(m)


def curvature_to_json(r, basis: str = "K") -> dict:
    r = np.asarray(r, dtype=float)
    if basis == "SDASD":
        r = k_to_sdasd(r)
    elif basis != "K":
        raise ValueError(f"unknown basis {basis!r}")
    return {"basis": basis, "matrix": r.tolist()}

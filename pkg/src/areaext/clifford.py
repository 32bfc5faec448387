"""A fixed matrix model of the complex Clifford algebra of R^4 on C^4.

Generators are Pauli tensor products::

    e1 = i s1 (x) s0,  e2 = i s2 (x) s0,  e3 = i s3 (x) s1,  e4 = i s3 (x) s2

They satisfy ``ea eb + eb ea = -2 delta_ab``, are unitary and skew-Hermitian,
and give the complex volume element ``omega = -e1 e2 e3 e4 = s3 (x) s3``.
The chirality-adapted basis reorders the standard basis so that ``omega``
becomes ``diag(1, 1, -1, -1)``.  On the 16-dimensional product S(W) (x) S(V)
the left Kronecker factor is always S(W).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exterior import K_PAIRS, curvature_tensor

_S0 = np.eye(2, dtype=complex)
_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)

# standard basis indices of S+ then S- (omega = diag(1, -1, -1, 1))
CHIRAL_ORDER = np.array([0, 3, 1, 2])
CHIRAL_ORDER_16 = np.array([4 * i + j for i in CHIRAL_ORDER for j in CHIRAL_ORDER])
SECTORS = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class CliffordRep:
    generators: np.ndarray  # shape (4, 4, 4), generators[a] is e_{a+1}
    omega: np.ndarray
    proj_plus: np.ndarray
    proj_minus: np.ndarray


@lru_cache(maxsize=None)
def clifford_rep() -> CliffordRep:
    gens = 1j * np.stack(
        [np.kron(_S1, _S0), np.kron(_S2, _S0), np.kron(_S3, _S1), np.kron(_S3, _S2)]
    )
    omega = -(gens[0] @ gens[1] @ gens[2] @ gens[3])
    eye = np.eye(4, dtype=complex)
    for arr in (gens, omega):
        arr.setflags(write=False)
    pp = 0.5 * (eye + omega)
    pm = 0.5 * (eye - omega)
    pp.setflags(write=False)
    pm.setflags(write=False)
    return CliffordRep(gens, omega, pp, pm)


def gamma(v) -> np.ndarray:
    """Clifford multiplication by a real 4-vector."""
    v = np.asarray(v, dtype=float)
    return np.tensordot(v, clifford_rep().generators, axes=1)


@lru_cache(maxsize=None)
def _xi_basis() -> np.ndarray:
    g = clifford_rep().generators
    out = np.stack([0.5 * g[a] @ g[b] for a, b in K_PAIRS])
    out.setflags(write=False)
    return out


def xi0_inv(alpha) -> np.ndarray:
    """Spin lift of a 2-vector given in basis K: ``x ^ y -> xy / 2``."""
    alpha = np.asarray(alpha, dtype=float)
    return np.tensordot(alpha, _xi_basis(), axes=1)


def xi0_inv_columns(m) -> np.ndarray:
    """``xi0_inv`` of every column of a 6xN array, shape (N, 4, 4)."""
    return np.tensordot(np.asarray(m, dtype=float).T, _xi_basis(), axes=1)


def to_chiral_basis(m) -> np.ndarray:
    """Express a 4x4 or 16x16 operator in the chirality-adapted basis."""
    m = np.asarray(m)
    if m.shape == (4, 4):
        p = CHIRAL_ORDER
    elif m.shape == (16, 16):
        p = CHIRAL_ORDER_16
    else:
        raise ValueError(f"expected a 4x4 or 16x16 matrix, got {m.shape}")
    return m[np.ix_(p, p)]


def _sector_slice(label: str, dim: int) -> np.ndarray:
    """Indices, in the adapted basis, of one chirality sector."""
    if dim == 4:
        return np.arange(2) if label == "+" else np.arange(2, 4)
    w = np.arange(2) if label[0] == "+" else np.arange(2, 4)
    v = np.arange(2) if label[1] == "+" else np.arange(2, 4)
    return np.array([4 * i + j for i in w for j in v])


def chirality_blocks(m) -> dict[tuple[str, str], np.ndarray]:
    """Blocks of ``m`` between chirality sectors.

    For 4x4 input sectors are ``"+"`` and ``"-"``; for 16x16 input they are
    ``"++", "+-", "-+", "--"`` labelled by (S(W), S(V)) chirality.  The key
    ``(row, col)`` holds the block mapping sector ``col`` into sector ``row``.
    """
    c = to_chiral_basis(m)
    labels = ("+", "-") if c.shape[0] == 4 else SECTORS
    n = c.shape[0]
    return {
        (a, b): c[np.ix_(_sector_slice(a, n), _sector_slice(b, n))]
        for a in labels
        for b in labels
    }


def restrict(m, sector: str) -> np.ndarray:
    """Diagonal block of ``m`` on one chirality sector."""
    c = to_chiral_basis(m)
    idx = _sector_slice(sector, c.shape[0])
    return c[np.ix_(idx, idx)]


def off_sector_norm(m) -> float:
    """Frobenius norm of everything outside the diagonal sector blocks."""
    blocks = chirality_blocks(m)
    return float(
        np.sqrt(sum(np.linalg.norm(b) ** 2 for (r, c), b in blocks.items() if r != c))
    )


def rotation_bivector(r, x, y) -> np.ndarray:
    """K-coordinates of the skew endomorphism ``R_{x,y}``.

    A 2-vector ``x ^ y`` acts by ``z -> <x,z> y - <y,z> x``; the coefficient
    on ``e_i ^ e_j`` is ``<R_{x,y} e_i, e_j>``, which works out to ``-R(x^y)``.
    """
    t = curvature_tensor(r)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    # <R_{x,y} e_i, e_j> = T[x, y, j, i]
    return np.array([np.einsum("a,b,ab->", x, y, t[:, :, j, i]) for i, j in K_PAIRS])


def spinor_curvature(r, x, y) -> np.ndarray:
    """``R^S_{x,y}``, the spin lift of ``R_{x,y}``."""
    return xi0_inv(rotation_bivector(r, x, y))

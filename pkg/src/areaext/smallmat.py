"""Dense eigen- and singular-value routines for small matrices.

Everything here works on matrices of size at most 16.  Eigenvalues come from
cyclic Jacobi sweeps (a real-rotation variant and a complex one with a phase
pre-rotation); singular values come from diagonalizing the Gram matrix
``l.T @ l`` and completing the image basis by Gram-Schmidt.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_DIM = 16
HERMITIAN_RTOL = 1e-12
JACOBI_RTOL = 1e-13
MAX_SWEEPS = 60


class NotHermitianError(ValueError):
    """Raised when a matrix is not symmetric/Hermitian within tolerance."""

    def __init__(self, asymmetry: float, norm: float):
        self.asymmetry = asymmetry
        self.norm = norm
        super().__init__(
            f"matrix is not Hermitian: ||M - M*|| = {asymmetry:.3e} "
            f"(allowed {HERMITIAN_RTOL:.0e} * ||M|| = {HERMITIAN_RTOL * norm:.3e})"
        )


@njit(cache=True)
def _jacobi_real(a):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    thresh = (JACOBI_RTOL * JACOBI_RTOL) * total
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    return w, v


@njit(cache=True)
def _jacobi_complex(a):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += abs(a[i, j]) ** 2
    thresh = (JACOBI_RTOL * JACOBI_RTOL) * total
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * abs(a[i, j]) ** 2
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # phase rotation D = diag(.., 1 at p, conj(ph) at q, ..) makes a[p, q] real
                ph = apq / mag
                for k in range(n):
                    a[k, q] = a[k, q] * np.conj(ph)
                for k in range(n):
                    a[q, k] = a[q, k] * ph
                for k in range(n):
                    v[k, q] = v[k, q] * np.conj(ph)
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v


def _as_hermitian(m) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    norm = float(np.linalg.norm(m))
    asym = float(np.linalg.norm(m - m.conj().T))
    if asym > HERMITIAN_RTOL * norm:
        raise NotHermitianError(asym, norm)
    if np.iscomplexobj(m):
        return np.ascontiguousarray(0.5 * (m + m.conj().T), dtype=np.complex128)
    return np.ascontiguousarray(0.5 * (m + m.T), dtype=np.float64)


def sym_eigen(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric or complex Hermitian matrix.

    Returns ``(w, V)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``V``.  Degenerate eigenspaces get an
    arbitrary orthonormal basis.
    """
    h = _as_hermitian(m)
    if np.iscomplexobj(h):
        w, v = _jacobi_complex(h)
    else:
        w, v = _jacobi_real(h)
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(m) -> np.ndarray:
    return sym_eigen(m)[0]


def min_eigenvalue(m) -> float:
    return float(sym_eigen(m)[0][0])


@dataclass(frozen=True)
class SVDResult:
    """``l @ right[:, i] == values[i] * left[:, i]`` with ``values`` descending."""

    left: np.ndarray
    right: np.ndarray
    values: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.values) @ self.right.T


def _complete_basis(cols: list[np.ndarray], n: int) -> list[np.ndarray]:
    cols = list(cols)
    for e in np.eye(n):
        if len(cols) == n:
            break
        x = e.copy()
        for _ in range(2):
            for c in cols:
                x -= (c @ x) * c
        nx = np.linalg.norm(x)
        if nx > 1e-6:
            cols.append(x / nx)
    return cols


def svd(l) -> SVDResult:
    """Singular value decomposition of a small square real matrix.

    The right basis diagonalizes the Gram matrix ``l.T @ l``; the left basis
    is the normalized image ``l @ w_i`` where that is nonzero, completed to an
    orthonormal basis otherwise.
    """
    l = np.asarray(l, dtype=float)
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise ValueError(f"svd expects a square matrix, got shape {l.shape}")
    n = l.shape[0]
    if n > 6:
        raise ValueError(f"svd supports dimension <= 6, got {n}")
    _, w = sym_eigen(l.T @ l)
    w = w[:, ::-1]
    scale = float(np.linalg.norm(l))
    images = l @ w
    cutoff = 1e-13 * scale
    left: list[np.ndarray] = []
    values = np.zeros(n)
    for i in range(n):
        x = images[:, i].copy()
        for _ in range(2):
            for c in left:
                if c is not None:
                    x -= (c @ x) * c
        nx = np.linalg.norm(x)
        if nx > cutoff and nx > 0.0:
            left.append(x / nx)
        else:
            left.append(None)  # placeholder, filled below
    kept = [c for c in left if c is not None]
    filled = _complete_basis(kept, n)
    extra = iter(filled[len(kept):])
    left = [c if c is not None else next(extra) for c in left]
    u = np.column_stack(left)
    for i in range(n):
        values[i] = max(float(u[:, i] @ images[:, i]), 0.0)
    order = np.argsort(-values, kind="stable")
    return SVDResult(left=u[:, order], right=w[:, order], values=values[order])


def singular_values(l) -> np.ndarray:
    return svd(l).values


def spectral_norm(m) -> float:
    m = np.asarray(m, dtype=float)
    if m.shape[0] <= 6 and m.shape[0] == m.shape[1]:
        return float(svd(m).values[0])
    return float(np.sqrt(max(eigvalsh(m.T @ m)[-1], 0.0)))

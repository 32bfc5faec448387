"""Random curvature operators and linear maps for property sweeps.

Every generator takes a ``numpy.random.Generator``.  Sweeps seed one
generator per sample from ``(seed, index)`` so any single sample can be
reproduced in isolation.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import ortho_group, special_ortho_group

from .exterior import bianchi_project, bianchi_residual, wedge2


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def random_symmetric(rng: np.random.Generator, n: int = 6) -> np.ndarray:
    a = rng.normal(size=(n, n))
    return 0.5 * (a + a.T)


def random_bianchi(rng: np.random.Generator) -> np.ndarray:
    """Gaussian symmetric matrix projected onto curvature operators."""
    return bianchi_project(random_symmetric(rng))


def random_psd(rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    k = 6 if rank is None else rank
    g = rng.normal(size=(k, 6))
    return g.T @ g


def random_sec_nonneg(rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """A curvature operator with ``sec >= 0``.

    Projecting a PSD ``P`` removes a multiple of the star, so
    ``R + (tr(star P)/6) star = P`` certifies nonnegativity.
    """
    return bianchi_project(random_psd(rng, rank))


def random_mixed_bianchi(rng: np.random.Generator) -> np.ndarray:
    """Operators spread around the boundary of ``sec >= 0``.

    A projected PSD part of random rank is perturbed by a projected
    symmetric matrix whose size ranges over several decades, so both
    clearly feasible, clearly infeasible and borderline cases occur.
    """
    kind = rng.integers(3)
    if kind == 0:
        return random_bianchi(rng)
    base = random_sec_nonneg(rng, rank=int(rng.integers(1, 7)))
    eps = 10.0 ** rng.uniform(-4, 0.5)
    if kind == 1:
        return base + eps * random_bianchi(rng)
    # shift along the identity so the minimum eigenvalue moves through zero
    return base - eps * np.eye(6)


def random_rotation(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    return special_ortho_group.rvs(n, random_state=rng)


def random_orthogonal(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    return ortho_group.rvs(n, random_state=rng)


def random_wedge_singular_values(
    rng: np.random.Generator, lam_max: float = 2.5, tight_prob: float = 0.5
) -> np.ndarray:
    """Singular values with every pairwise product at most one.

    Rejection sampling from ``[0, lam_max]^4``; with probability
    ``tight_prob`` the sample is rescaled so the largest product equals one.
    """
    while True:
        lam = rng.uniform(0.0, lam_max, size=4)
        s = np.sort(lam)[::-1]
        top = s[0] * s[1]
        if top <= 1.0:
            break
    if rng.random() < tight_prob and top > 0.0:
        lam = lam / np.sqrt(top)
    return lam


def random_nonincreasing_wedge_map(
    rng: np.random.Generator, orientation_preserving: bool = True, **kw
) -> np.ndarray:
    """A 4x4 map whose exterior square has norm at most one."""
    lam = random_wedge_singular_values(rng, **kw)
    rot = random_rotation if orientation_preserving else random_orthogonal
    return rot(rng) @ np.diag(lam) @ rot(rng)


def random_nonincreasing_map(rng: np.random.Generator) -> np.ndarray:
    """A 4x4 map with all singular values at most one."""
    lam = rng.uniform(0.0, 1.0, size=4)
    return random_rotation(rng) @ np.diag(lam) @ random_rotation(rng)


def random_map(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * rng.normal(size=(4, 4))


def is_isometry(l, tol: float = 1e-12) -> bool:
    l = np.asarray(l, dtype=float)
    return bool(np.linalg.norm(l.T @ l - np.eye(4)) <= tol)



def random_nonpositive_tau_operator(
    rng: np.random.Generator, rank: int | None = None
) -> tuple[np.ndarray, float]:
    """``(R, tau)`` with ``tau <= 0`` and ``R + tau star`` positive semidefinite.

    Projecting a PSD ``P`` gives ``R + (tr(star P)/6) star = P``.  When that
    multiple is positive, ``P`` is first conjugated by an orientation flip,
    which negates ``tr(star P)``.
    """
    p = random_psd(rng, rank)
    t = bianchi_residual(p) / 6.0
    if t > 0.0:
        flip = wedge2(np.diag([1.0, 1.0, 1.0, -1.0]))
        p = flip @ p @ flip.T
        t = -t
    return bianchi_project(p), t

"""Exact hypervolume with a single reference point.

:func:`hv` is the WFG recursion from :mod:`hvselect._kernels`: points are
ordered by decreasing last objective, each point's exclusive volume is its box
minus the hypervolume of the later points limited by it, and because every
limited image then shares the point's last coordinate the inner problem drops
one objective. Two- and three-objective problems end in sweeps.

The two ``hv_oracle_*`` functions are independent, slow cross-checks used by
the test-suite.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import ArrayLike, _check_dim, as_point, as_points, check_below_reference

MAX_ORACLE_POINTS = 20


def inclusive_hv(p: ArrayLike, r: ArrayLike) -> float:
    """Volume of the box between ``p`` and the reference point."""
    p = as_point(p)
    r = as_point(r)
    _check_dim(p.shape[0], r.shape[0])
    if np.any(p >= r):
        raise ValueError("point must lie strictly below the reference point")
    return float(np.prod(r - p))


def hv(S, r: ArrayLike) -> float:
    """Hypervolume of ``S`` bounded by ``r``.

    Args:
        S: ``(n, d)`` points, each strictly below ``r``. Dominated members are
            allowed and do not change the result.
        r: reference point of dimension ``d``.

    Returns:
        The Lebesgue measure of the union of boxes ``[s, r]``; 0 for empty ``S``.
    """
    r = as_point(r)
    S = as_points(S, dim=r.shape[0])
    if S.shape[0] == 0:
        return 0.0
    check_below_reference(S, r)
    return float(_kernels.hv(np.ascontiguousarray(S), r, r.shape[0]))


def hv_oracle_inclusion_exclusion(S, r: ArrayLike) -> float:
    """Inclusion-exclusion over all nonempty subsets; exponential in ``len(S)``."""
    r = as_point(r)
    S = as_points(S, dim=r.shape[0])
    n = S.shape[0]
    if n > MAX_ORACLE_POINTS:
        raise ValueError(f"inclusion-exclusion oracle limited to {MAX_ORACLE_POINTS} points")
    if n == 0:
        return 0.0
    d = S.shape[1]
    # corner[mask] = componentwise max over the subset encoded by mask
    corner = np.empty((1 << n, d))
    corner[0] = -np.inf
    sign = np.empty(1 << n)
    sign[0] = 0.0
    for i in range(n):
        lo, hi = 1 << i, 1 << (i + 1)
        corner[lo:hi] = np.maximum(corner[:lo], S[i])
        sign[lo:hi] = -sign[:lo]
        sign[lo] = 1.0
    vol = np.prod(np.clip(r - corner[1:], 0.0, None), axis=1)
    return float(np.sum(sign[1:] * vol))


def hv_oracle_monte_carlo(
    S, r: ArrayLike, lower: ArrayLike, samples: int, seed: int = 0
) -> float:
    """Estimate by uniform sampling in the box ``[lower, r]``.

    Deterministic for a fixed ``seed``. The standard error is
    ``vol * sqrt(f (1 - f) / samples)`` for covered fraction ``f``.
    """
    r = as_point(r)
    lower = as_point(lower)
    _check_dim(lower.shape[0], r.shape[0])
    S = as_points(S, dim=r.shape[0])
    if samples <= 0:
        raise ValueError("samples must be positive")
    if S.shape[0] and np.any(S < lower):
        raise ValueError("lower corner must weakly dominate every point")
    box = float(np.prod(r - lower))
    if S.shape[0] == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = max(1, min(samples, 2_000_000 // max(1, S.shape[0])))
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = rng.uniform(lower, r, size=(m, r.shape[0]))
        covered = np.zeros(m, dtype=bool)
        for s in S:
            covered |= np.all(x >= s, axis=1)
        hits += int(covered.sum())
        done += m
    return box * hits / samples

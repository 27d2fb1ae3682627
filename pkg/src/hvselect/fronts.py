"""Seeded candidate fronts: spherical, inverted spherical and discontinuous.

Randomness comes from NumPy's ``PCG64`` bit generator seeded through
``numpy.random.SeedSequence(seed)`` (``numpy.random.default_rng(seed)``), so a
front is a pure function of its :class:`FrontSpec`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .core import as_points, nondominated_filter

SHAPES = ("spherical", "inverted_spherical", "discontinuous")


@dataclass(frozen=True)
class FrontSpec:
    shape: str
    dim: int
    count: int
    seed: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown front shape {self.shape!r}; choose from {SHAPES}")
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.count < 1:
            raise ValueError("count must be at least 1")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _unit_positive(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    # absolute Gaussians are uniform in direction over the positive orthant
    x = np.abs(rng.standard_normal((n, d)))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def gen_spherical(spec: FrontSpec) -> np.ndarray:
    """Points on the positive unit-sphere patch (the DTLZ2 front)."""
    return _unit_positive(_rng(spec.seed), spec.count, spec.dim)


def gen_inverted_spherical(spec: FrontSpec) -> np.ndarray:
    """``1 - s`` for ``s`` on the unit-sphere patch (the inverted DTLZ2 front)."""
    return 1.0 - _unit_positive(_rng(spec.seed), spec.count, spec.dim)


def dtlz7_surface(head: np.ndarray) -> np.ndarray:
    """Last objective of the DTLZ7 surface at ``g = 0`` given the first ``d-1``."""
    head = np.atleast_2d(head)
    d = head.shape[1] + 1
    return d - np.sum(head * (1.0 + np.sin(3.0 * np.pi * head)), axis=1)


def _bump(x: float) -> float:
    return x * (1.0 + math.sin(3.0 * math.pi * x))


@lru_cache(maxsize=None)
def dtlz7_intervals() -> tuple[tuple[float, float], ...]:
    """Sub-intervals of [0, 1] holding the Pareto-optimal values of each head objective.

    A head value is optimal iff ``x (1 + sin 3 pi x)`` exceeds its value at
    every smaller ``x``: lowering a head objective then always raises the last
    one. The record set of that function is two intervals.
    """
    first_peak = minimize_scalar(lambda x: -_bump(x), bounds=(0.0, 0.5), method="bounded",
                                 options={"xatol": 1e-14}).x
    level = _bump(first_peak)
    trough = minimize_scalar(_bump, bounds=(first_peak, 0.8), method="bounded",
                             options={"xatol": 1e-14}).x
    rise = brentq(lambda x: _bump(x) - level, trough, 0.9, xtol=1e-15)
    second_peak = minimize_scalar(lambda x: -_bump(x), bounds=(rise, 1.0), method="bounded",
                                  options={"xatol": 1e-14}).x
    return ((0.0, float(first_peak)), (float(rise), float(second_peak)))


def _sample_intervals(rng: np.random.Generator, size, intervals) -> np.ndarray:
    lengths = np.array([b - a for a, b in intervals])
    u = rng.uniform(0.0, lengths.sum(), size=size)
    out = u + intervals[0][0]
    offset = lengths[0]
    for (a, _), length in zip(intervals[1:], lengths[1:]):
        beyond = u >= offset
        out = np.where(beyond, a + (u - offset), out)
        offset += length
    return out


def gen_discontinuous(spec: FrontSpec, max_rounds: int = 20) -> np.ndarray:
    """Points on the disconnected DTLZ7 front (unnormalized).

    Head objectives are drawn uniformly from the part of [0, 1] that is not
    dominated along the surface (see :func:`dtlz7_intervals`), the last
    objective follows the surface, and a nondominance filter runs over the
    accumulated set until ``count`` points survive.
    """
    rng = _rng(spec.seed)
    intervals = dtlz7_intervals()
    d, n = spec.dim, spec.count
    pool = np.empty((0, d))
    for _ in range(max_rounds):
        need = n - pool.shape[0]
        head = _sample_intervals(rng, (need, d - 1), intervals)
        batch = np.column_stack([head, dtlz7_surface(head)])
        pool = nondominated_filter(np.vstack([pool, batch]))
        if pool.shape[0] >= n:
            return pool[:n]
    raise RuntimeError(
        f"collected only {pool.shape[0]} of {n} nondominated points in {max_rounds} rounds"
    )


def normalize_unit_box(S) -> np.ndarray:
    """Min-max rescale every objective onto [0, 1]."""
    S = as_points(S)
    if S.shape[0] < 2:
        raise ValueError("normalization needs at least two points")
    lo = S.min(axis=0)
    hi = S.max(axis=0)
    flat = np.flatnonzero(hi == lo)
    if flat.size:
        raise ValueError(f"objective(s) {flat.tolist()} are constant")
    out = (S - lo) / (hi - lo)
    # pin the extremes exactly despite rounding in the division
    out[S == lo] = 0.0
    out[S == hi] = 1.0
    return out


def subsample_indices(n: int, m: int, seed: int) -> np.ndarray:
    if m > n:
        raise ValueError(f"cannot draw {m} points from {n}")
    if m < 0:
        raise ValueError("sample size must be non-negative")
    return np.sort(_rng(seed).choice(n, size=m, replace=False))


def subsample(S, m: int, seed: int) -> np.ndarray:
    """Uniform ``m``-subset without replacement, kept in original row order."""
    S = as_points(S)
    return S[subsample_indices(S.shape[0], m, seed)]


_GENERATORS = {
    "spherical": gen_spherical,
    "inverted_spherical": gen_inverted_spherical,
    "discontinuous": gen_discontinuous,
}


def generate(spec: FrontSpec, normalize: bool | None = None) -> np.ndarray:
    """Generate a front; ``normalize=None`` rescales only the discontinuous shape."""
    front = _GENERATORS[spec.shape](spec)
    if normalize is None:
        normalize = spec.shape == "discontinuous"
    if normalize:
        front = normalize_unit_box(front)
    return front

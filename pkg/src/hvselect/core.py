"""Points, dominance and the worse/limit reductions.

All objectives are minimized. Points are 1-D float64 arrays and point sets are
2-D arrays with one point per row; nothing here mutates its arguments.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels

ArrayLike = Sequence[float] | np.ndarray


class DimensionMismatchError(ValueError):
    pass


class ReferencePointError(ValueError):
    """Some points do not lie strictly below the reference point."""

    def __init__(self, indices: Sequence[int]):
        self.indices = list(indices)
        shown = ", ".join(str(i) for i in self.indices[:20])
        if len(self.indices) > 20:
            shown += ", ..."
        super().__init__(
            f"{len(self.indices)} point(s) not strictly below the reference point: "
            f"indices [{shown}]"
        )


def as_point(values: ArrayLike) -> np.ndarray:
    """Validate an objective vector and return it as a float64 array."""
    p = np.asarray(values, dtype=np.float64)
    if p.ndim != 1:
        raise ValueError(f"a point must be one-dimensional, got shape {p.shape}")
    if p.shape[0] < 2:
        raise ValueError(f"points need at least 2 objectives, got {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def as_points(rows, dim: int | None = None) -> np.ndarray:
    """Validate a point set and return it as an ``(n, d)`` float64 array.

    An empty input needs ``dim`` to know its width; otherwise ``dim``, when
    given, must match.
    """
    pts = np.asarray(rows, dtype=np.float64)
    if pts.size == 0:
        if dim is None:
            if pts.ndim == 2 and pts.shape[1] >= 2:
                return pts.reshape(0, pts.shape[1])
            raise ValueError("cannot infer the dimension of an empty point set")
        return np.empty((0, dim))
    if pts.ndim != 2:
        raise ValueError(f"a point set must be two-dimensional, got shape {pts.shape}")
    if pts.shape[1] < 2:
        raise ValueError(f"points need at least 2 objectives, got {pts.shape[1]}")
    if dim is not None and pts.shape[1] != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {pts.shape[1]}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point coordinates must be finite")
    return pts


def reference_point(value: float | ArrayLike, dim: int) -> np.ndarray:
    """Build a reference point, replicating a scalar across ``dim`` objectives."""
    if np.ndim(value) == 0:
        return as_point(np.full(dim, float(value)))
    r = as_point(value)
    _check_dim(r.shape[0], dim)
    return r


def _check_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch: {a} vs {b}")


def check_below_reference(points: np.ndarray, ref: np.ndarray) -> None:
    """Raise :class:`ReferencePointError` listing rows with ``p_j >= r_j``."""
    if points.shape[0] == 0:
        return
    _check_dim(points.shape[1], ref.shape[0])
    bad = np.flatnonzero(np.any(points >= ref, axis=1))
    if bad.size:
        raise ReferencePointError(bad.tolist())


def weakly_dominates(a: ArrayLike, b: ArrayLike) -> bool:
    a = as_point(a)
    b = as_point(b)
    _check_dim(a.shape[0], b.shape[0])
    return bool(np.all(a <= b))


def worse(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Componentwise maximum of two points."""
    a = as_point(a)
    b = as_point(b)
    _check_dim(a.shape[0], b.shape[0])
    return np.maximum(a, b)


def nondominated_filter(points) -> np.ndarray:
    """Rows not weakly dominated by any other row, in input order.

    Duplicates weakly dominate each other; the first occurrence survives.
    """
    pts = as_points(points) if np.size(points) else np.asarray(points, dtype=np.float64)
    if pts.shape[0] == 0:
        return pts.reshape(0, pts.shape[1] if pts.ndim == 2 else 0)
    keep = _kernels.nondominated_mask(np.ascontiguousarray(pts), pts.shape[1])
    return pts[keep]


def limit(S, p: ArrayLike) -> np.ndarray:
    """Nondominated images of ``S`` under ``worse(., p)``."""
    p = as_point(p)
    S = as_points(S, dim=p.shape[0])
    if S.shape[0] == 0:
        return S
    return nondominated_filter(np.maximum(S, p))

"""Hypervolume contributions and their incremental update under inclusion."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import ArrayLike, _check_dim, as_point, as_points, check_below_reference
from .hypervolume import hv

UPDATE_TOLERANCE = 1e-9


class ContractViolation(RuntimeError):
    """A numerical invariant failed by more than its tolerance."""


def _prepare(p: ArrayLike, S, r: ArrayLike):
    r = as_point(r)
    p = as_point(p)
    S = as_points(S, dim=r.shape[0])
    _check_dim(p.shape[0], r.shape[0])
    check_below_reference(p[None, :], r)
    check_below_reference(S, r)
    return p, np.ascontiguousarray(S), r


def hvc_definition(p: ArrayLike, S, r: ArrayLike) -> float:
    """``hv(S + {p}) - hv(S)``; two full hypervolume runs, kept as an oracle."""
    p, S, r = _prepare(p, S, r)
    return hv(np.vstack([S, p]), r) - hv(S, r)


def hvc_fast(p: ArrayLike, S, r: ArrayLike) -> float:
    """Contribution of ``p`` to ``S`` as ``box(p) - hv(limit(S, p))``."""
    p, S, r = _prepare(p, S, r)
    return float(_kernels.hvc(p, S, r, r.shape[0]))


def joint_hvc(a: ArrayLike, b: ArrayLike, S, r: ArrayLike) -> float:
    """Volume dominated by both ``a`` and ``b`` but by no member of ``S``."""
    a = as_point(a)
    b = as_point(b)
    _check_dim(a.shape[0], b.shape[0])
    return hvc_fast(np.maximum(a, b), S, r)


def hvc_update_after_add(
    old_hvc: float, s: ArrayLike, p_new: ArrayLike, S_before, r: ArrayLike
) -> float:
    """Contribution of ``s`` after ``p_new`` joins ``S_before``.

    ``old_hvc`` must be ``HVC(s, S_before)``. The region ``s`` loses is the
    part it shares with ``p_new`` that ``S_before`` did not already cover, so
    the new value is ``old_hvc - joint_hvc(s, p_new, S_before)``.

    Raises:
        ContractViolation: the difference is negative beyond tolerance, which
            means ``old_hvc`` was not the contribution against ``S_before``.
    """
    joint = joint_hvc(s, p_new, S_before, r)
    return clamp_update(old_hvc, joint)


def clamp_update(old_hvc: float, joint: float) -> float:
    new = old_hvc - joint
    if new < 0.0:
        if -new > UPDATE_TOLERANCE * max(1.0, old_hvc):
            raise ContractViolation(
                f"updated contribution {new!r} is negative (old {old_hvc!r}, joint {joint!r})"
            )
        return 0.0
    return new

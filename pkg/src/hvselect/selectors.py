"""Greedy-inclusion hypervolume subset selection.

Three algorithms pick the same subset in the same order:

* ``gi_hss`` recomputes every remaining candidate's contribution each round.
* ``ugi_hss`` keeps every contribution and subtracts, after each pick, the
  part the new member takes away from it.
* ``lgi_hss`` keeps stale contributions in a max-heap as upper bounds (the
  hypervolume is submodular) and only refreshes the top of the heap.

Ties are broken by the lowest candidate index everywhere, which makes the
greedy choice unique and the three results identical.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .contribution import UPDATE_TOLERANCE, ContractViolation
from .core import as_points, check_below_reference, reference_point

TRAJECTORY_TOLERANCE = 1e-6
# candidates this close to the best (relative to the largest initial
# contribution) are re-evaluated exactly, so update drift cannot flip a tie
TIE_GUARD = 1e-9
MAX_EXHAUSTIVE_SUBSETS = 10**6


@dataclass(frozen=True)
class SelectionProblem:
    """Choose ``k`` of the candidate rows maximizing hypervolume w.r.t. ``reference``.

    ``reference`` may be a scalar, replicated across objectives.
    """

    candidates: np.ndarray
    k: int
    reference: np.ndarray

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k!r}")
        ref = self.reference
        if np.ndim(ref) == 0:
            cands = as_points(self.candidates)
            ref = reference_point(ref, cands.shape[1])
        else:
            ref = reference_point(ref, np.shape(ref)[0])
            cands = as_points(self.candidates, dim=ref.shape[0])
        check_below_reference(cands, ref)
        cands = np.ascontiguousarray(cands)
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "reference", ref)
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return self.candidates.shape[0]

    @property
    def dim(self) -> int:
        return self.candidates.shape[1]


@dataclass
class SelectionResult:
    algorithm: str
    selected: list[int]
    hv_trajectory: list[float]
    hvc_evaluations: int = 0
    update_operations: int = 0
    # lazy selector only: contributions refreshed to make each pick
    recomputations: list[int] = field(default_factory=list)

    @property
    def hv(self) -> float:
        return self.hv_trajectory[-1] if self.hv_trajectory else 0.0

    @property
    def gains(self) -> list[float]:
        return [b - a for a, b in zip([0.0] + self.hv_trajectory[:-1], self.hv_trajectory)]


class TentativeEntry(NamedTuple):
    """Heap record; tuple order is (largest value, lowest index) first."""

    neg_value: float
    index: int
    stamp: int

    @property
    def tentative_hvc(self) -> float:
        return -self.neg_value


def lazy_greedy(
    initial: Sequence[float],
    evaluate: Callable[[int, list[int]], float],
    k: int,
    tolerance: float = UPDATE_TOLERANCE,
) -> tuple[list[int], list[float], list[int]]:
    """Lazy greedy maximization of a monotone submodular gain.

    Args:
        initial: exact gain of every item against the empty selection.
        evaluate: ``evaluate(i, selected)`` returns the current gain of item
            ``i`` given the items selected so far.
        k: number of picks (capped at ``len(initial)``).
        tolerance: relative slack allowed when a refreshed gain exceeds its
            stored upper bound.

    Returns:
        Selected items in order, their gains at pick time, and the number of
        ``evaluate`` calls spent on each pick.
    """
    heap = [TentativeEntry(-float(v), i, 0) for i, v in enumerate(initial)]
    heapq.heapify(heap)
    selected: list[int] = []
    gains: list[float] = []
    recomputations: list[int] = []
    for it in range(min(k, len(heap))):
        count = 0
        while True:
            top = heapq.heappop(heap)
            if top.stamp == it:
                chosen = top
                break
            value = float(evaluate(top.index, selected))
            count += 1
            bound = top.tentative_hvc
            if value > bound + tolerance * max(1.0, abs(bound)):
                raise ContractViolation(
                    f"gain of item {top.index} rose from {bound!r} to {value!r}"
                )
            entry = TentativeEntry(-value, top.index, it)
            if not heap or entry < heap[0]:
                chosen = entry
                break
            heapq.heappush(heap, entry)
        selected.append(chosen.index)
        gains.append(chosen.tentative_hvc)
        recomputations.append(count)
    return selected, gains, recomputations


def _finish(problem: SelectionProblem, result: SelectionResult, gains, check: bool):
    result.hv_trajectory = list(itertools.accumulate(float(g) for g in gains))
    if check and result.selected:
        exact = float(
            _kernels.hv(problem.candidates[result.selected], problem.reference, problem.dim)
        )
        if abs(exact - result.hv) > TRAJECTORY_TOLERANCE * max(1.0, exact):
            raise ContractViolation(
                f"{result.algorithm}: summed gains {result.hv!r} disagree with hv {exact!r}"
            )
    return result


def _take_all(problem: SelectionProblem, name: str, check: bool) -> SelectionResult:
    P, r, d = problem.candidates, problem.reference, problem.dim
    gains = [_kernels.hvc(P[i], P[:i], r, d) for i in range(problem.n)]
    result = SelectionResult(name, list(range(problem.n)), [], hvc_evaluations=problem.n)
    return _finish(problem, result, gains, check)


def _initial_values(problem: SelectionProblem) -> np.ndarray:
    return _kernels.hvc_many(
        problem.candidates, problem.candidates[:0], problem.reference, problem.dim
    )


def gi_hss(problem: SelectionProblem, check: bool = True) -> SelectionResult:
    """Standard greedy inclusion: every round evaluates every remaining candidate."""
    if problem.n < problem.k:
        return _take_all(problem, "gi", check)
    P, r, d = problem.candidates, problem.reference, problem.dim
    remaining = np.arange(problem.n)
    result = SelectionResult("gi", [], [])
    gains = []
    for _ in range(problem.k):
        values = _kernels.hvc_many(P[remaining], P[result.selected], r, d)
        result.hvc_evaluations += remaining.size
        j = int(np.argmax(values))
        result.selected.append(int(remaining[j]))
        gains.append(values[j])
        remaining = np.delete(remaining, j)
    return _finish(problem, result, gains, check)


def ugi_hss(problem: SelectionProblem, check: bool = True) -> SelectionResult:
    """Greedy inclusion with contributions updated after each pick.

    After ``p`` joins the selection ``S``, every remaining ``s`` loses
    ``joint_hvc(s, p, S)``. Candidates whose maintained value lies within
    :data:`TIE_GUARD` times the largest initial contribution of the best are
    re-evaluated exactly before the argmax;
    those evaluations are counted in ``hvc_evaluations``.
    """
    if problem.n < problem.k:
        return _take_all(problem, "ugi", check)
    P, r, d = problem.candidates, problem.reference, problem.dim
    result = SelectionResult("ugi", [], [])
    gains = []
    if problem.k == 0:
        return _finish(problem, result, gains, check)
    values = _initial_values(problem)
    result.hvc_evaluations += problem.n
    # update rounding error grows with the volumes subtracted, so the tie
    # window is scaled by the largest starting value, not the current best
    window = TIE_GUARD * max(float(values.max()), np.finfo(float).tiny)
    remaining = np.arange(problem.n)
    for t in range(problem.k):
        if t > 0:
            p_new = P[result.selected[-1]]
            before = P[result.selected[:-1]]
            old = values[remaining]
            joint = _kernels.joint_many(P[remaining], p_new, before, r, d, old <= 0.0)
            result.update_operations += remaining.size
            new = old - joint
            slack = UPDATE_TOLERANCE * np.maximum(1.0, old)
            if np.any(new < -slack):
                bad = int(remaining[np.argmax(-new - slack)])
                raise ContractViolation(f"update made the contribution of {bad} negative")
            values[remaining] = np.maximum(new, 0.0)
        current = values[remaining]
        best = current.max()
        if t > 0:
            near = np.flatnonzero(current >= best - window)
            exact = _kernels.hvc_many(P[remaining[near]], P[result.selected], r, d)
            result.hvc_evaluations += near.size
            values[remaining[near]] = exact
            j = int(near[np.argmax(exact)])
        else:
            j = int(np.argmax(current))
        result.selected.append(int(remaining[j]))
        gains.append(values[remaining[j]])
        remaining = np.delete(remaining, j)
    return _finish(problem, result, gains, check)


def lgi_hss(problem: SelectionProblem, check: bool = True) -> SelectionResult:
    """Lazy greedy inclusion over a max-heap of tentative contributions."""
    if problem.n < problem.k:
        return _take_all(problem, "lgi", check)
    P, r, d = problem.candidates, problem.reference, problem.dim
    result = SelectionResult("lgi", [], [])
    if problem.k == 0:
        return _finish(problem, result, [], check)
    initial = _initial_values(problem)
    cache: dict[int, np.ndarray] = {}

    def evaluate(i: int, selected: list[int]) -> float:
        S = cache.get(len(selected))
        if S is None:
            cache.clear()
            S = cache[len(selected)] = P[selected]
        return _kernels.hvc(P[i], S, r, d)

    selected, gains, recomputations = lazy_greedy(initial, evaluate, problem.k)
    result.selected = selected
    result.recomputations = recomputations
    result.hvc_evaluations = problem.n + sum(recomputations)
    return _finish(problem, result, gains, check)


SELECTORS: dict[str, Callable[..., SelectionResult]] = {
    "gi": gi_hss,
    "ugi": ugi_hss,
    "lgi": lgi_hss,
}


def select(problem: SelectionProblem, algorithm: str = "lgi", check: bool = True) -> SelectionResult:
    try:
        fn = SELECTORS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(SELECTORS)}")
    return fn(problem, check=check)


def exhaustive_hssp(problem: SelectionProblem) -> tuple[tuple[int, ...], float]:
    """Optimal subset by enumeration; ties go to the lexicographically smallest."""
    n, k = problem.n, min(problem.k, problem.n)
    if math.comb(n, k) > MAX_EXHAUSTIVE_SUBSETS:
        raise ValueError(f"C({n}, {k}) subsets exceed the enumeration limit")
    P, r, d = problem.candidates, problem.reference, problem.dim
    best: tuple[int, ...] = tuple(range(k))
    best_hv = -1.0
    for subset in itertools.combinations(range(n), k):
        value = float(_kernels.hv(P[list(subset)], r, d)) if subset else 0.0
        if value > best_hv:
            best, best_hv = subset, value
    return best, best_hv

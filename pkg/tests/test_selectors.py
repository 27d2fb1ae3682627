import math

import numpy as np
import pytest
from conftest import random_points

from hvselect.contribution import ContractViolation
from hvselect.core import ReferencePointError
from hvselect.fronts import FrontSpec, generate
from hvselect.hypervolume import hv, hv_oracle_inclusion_exclusion, inclusive_hv
from hvselect.selectors import (
    SELECTORS,
    SelectionProblem,
    TentativeEntry,
    exhaustive_hssp,
    gi_hss,
    lazy_greedy,
    lgi_hss,
    select,
    ugi_hss,
)

ALL = [gi_hss, ugi_hss, lgi_hss]
FOUR = np.array([[0.0, 0.9], [0.45, 0.45], [0.9, 0.0], [0.5, 0.5]])


def oracle_greedy(P, k, r):
    """Greedy inclusion with every gain from the inclusion-exclusion oracle."""
    chosen = []
    for _ in range(k):
        base = hv_oracle_inclusion_exclusion(P[chosen], r) if chosen else 0.0
        gains = [
            -1.0 if i in chosen else hv_oracle_inclusion_exclusion(P[chosen + [i]], r) - base
            for i in range(len(P))
        ]
        chosen.append(int(np.argmax(gains)))
    return chosen


def test_problem_validation():
    with pytest.raises(ValueError):
        SelectionProblem(FOUR, -1, 1.1)
    with pytest.raises(ReferencePointError):
        SelectionProblem(FOUR, 2, 0.9)
    problem = SelectionProblem(FOUR, 2, 1.1)
    assert problem.n == 4 and problem.dim == 2
    np.testing.assert_array_equal(problem.reference, [1.1, 1.1])
    with pytest.raises(ValueError):
        select(problem, "nope")


def test_first_pick_and_full_sequence_on_small_2d_instance():
    r = np.array([1.1, 1.1])
    first = [inclusive_hv(p, r) for p in FOUR]
    assert first == pytest.approx([0.22, 0.4225, 0.22, 0.36], abs=1e-12)
    expected = oracle_greedy(FOUR, 3, r)
    assert expected == [1, 0, 2]
    for fn in ALL:
        assert fn(SelectionProblem(FOUR, 3, r)).selected == expected


@pytest.mark.parametrize("fn", ALL)
def test_n_less_than_k_returns_everything_in_index_order(fn):
    result = fn(SelectionProblem(FOUR, 10, 1.1))
    assert result.selected == [0, 1, 2, 3]
    assert result.hv == pytest.approx(hv(FOUR, [1.1, 1.1]), abs=1e-12)


@pytest.mark.parametrize("fn", ALL)
def test_k_zero_and_k_one(fn):
    empty = fn(SelectionProblem(FOUR, 0, 1.1))
    assert empty.selected == [] and empty.hv == 0.0 and empty.hv_trajectory == []
    one = fn(SelectionProblem(FOUR, 1, 1.1))
    assert one.selected == [1]
    assert one.update_operations == 0
    if fn is lgi_hss:
        assert one.recomputations == [0]


def test_ties_go_to_the_lowest_index():
    P = np.array([[0.2, 0.6], [0.6, 0.2], [0.2, 0.6]])
    for fn in ALL:
        assert fn(SelectionProblem(P, 1, 1.0)).selected == [0]
        assert fn(SelectionProblem(P, 3, 1.0)).selected == [0, 1, 2]


def test_evaluation_counts():
    P = generate(FrontSpec("spherical", 3, 60, seed=4))
    n, k = 60, 12
    gi = gi_hss(SelectionProblem(P, k, 1.1))
    ugi = ugi_hss(SelectionProblem(P, k, 1.1))
    lgi = lgi_hss(SelectionProblem(P, k, 1.1))
    assert gi.hvc_evaluations == sum(n - t for t in range(k)) == k * n - k * (k + 1) // 2 + k
    assert ugi.update_operations == sum(n - t for t in range(1, k))
    assert lgi.hvc_evaluations == n + sum(lgi.recomputations)
    assert lgi.hvc_evaluations <= gi.hvc_evaluations


@pytest.mark.parametrize("shape", ["spherical", "inverted_spherical", "discontinuous"])
def test_laziness_is_strictly_cheaper_on_generated_fronts(shape):
    P = generate(FrontSpec(shape, 4, 150, seed=9))
    gi = gi_hss(SelectionProblem(P, 10, 1.1))
    lgi = lgi_hss(SelectionProblem(P, 10, 1.1))
    assert lgi.selected == gi.selected
    assert lgi.hvc_evaluations < gi.hvc_evaluations


def test_identity_corpus():
    # random fronts, d in {3,4,5}, n <= 500, k <= 50
    rng = np.random.default_rng(2024)
    for trial in range(100):
        d = int(rng.integers(3, 6))
        n = int(rng.integers(1, 121)) if trial < 90 else int(rng.integers(300, 501))
        k = int(rng.integers(0, 21)) if trial < 90 else int(rng.integers(30, 51))
        P = random_points(rng, n, d, "front" if trial % 3 else "uniform")
        problem = SelectionProblem(P, k, 1.1)
        results = [fn(problem) for fn in ALL]
        assert results[0].selected == results[1].selected == results[2].selected, trial


@pytest.mark.parametrize("seed", range(4))
def test_gains_non_increasing_and_trajectory_exact(seed):
    P = generate(FrontSpec("inverted_spherical", 4, 200, seed=seed))
    for fn in ALL:
        result = fn(SelectionProblem(P, 25, 1.1))
        gains = np.array(result.gains)
        assert np.all(np.diff(gains) <= 1e-9)
        assert np.all(gains > 0)
        assert len(set(result.selected)) == 25
        exact = hv(P[result.selected], np.full(4, 1.1))
        assert result.hv == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("scale", [0.5, 2.0, 4.0, 3.0])
def test_scaling_one_objective_keeps_the_selection(scale):
    P = generate(FrontSpec("spherical", 3, 120, seed=11))
    r = np.full(3, 1.1)
    base = gi_hss(SelectionProblem(P, 15, r)).selected
    Q, rq = P.copy(), r.copy()
    Q[:, 1] *= scale
    rq[1] *= scale
    for fn in ALL:
        assert fn(SelectionProblem(Q, 15, rq)).selected == base


def test_exhaustive_examples():
    rng = np.random.default_rng(5)
    P = random_points(rng, 7, 3, "front")
    r = np.full(3, 1.1)
    full, value = exhaustive_hssp(SelectionProblem(P, 7, r))
    assert full == tuple(range(7)) and value == pytest.approx(hv(P, r))
    best, _ = exhaustive_hssp(SelectionProblem(P, 1, r))
    assert best == (int(np.argmax([inclusive_hv(p, r) for p in P])),)
    with pytest.raises(ValueError):
        exhaustive_hssp(SelectionProblem(random_points(rng, 60, 3, "front"), 10, r))


def test_greedy_meets_the_approximation_bound_on_small_instances():
    rng = np.random.default_rng(8)
    r = np.full(3, 1.1)
    for _ in range(10):
        problem = SelectionProblem(random_points(rng, 10, 3, "front"), 3, r)
        _, optimum = exhaustive_hssp(problem)
        assert gi_hss(problem).hv >= (1 - 1 / math.e) * optimum


def test_scripted_lazy_trace():
    # a..e = 0..4; initial values put a first, then b, e, c, d
    initial = [9.0, 8.0, 5.0, 3.0, 7.0]
    script = {(1, 1): 4.0, (4, 1): 6.0, (2, 2): 4.5}
    calls = []

    def evaluate(i, selected):
        calls.append((i, len(selected)))
        return script[(i, len(selected))]

    selected, gains, recomputations = lazy_greedy(initial, evaluate, 3)
    assert selected == [0, 4, 2]
    assert gains == [9.0, 6.0, 4.5]
    assert recomputations == [0, 2, 1]
    assert calls == [(1, 1), (4, 1), (2, 2)]


def test_lazy_greedy_rejects_a_rising_bound():
    with pytest.raises(ContractViolation):
        lazy_greedy([2.0, 1.0], lambda i, sel: 5.0, 2)


def test_tentative_entry_order():
    a = TentativeEntry(-3.0, 4, 0)
    b = TentativeEntry(-3.0, 2, 0)
    c = TentativeEntry(-1.0, 0, 0)
    assert sorted([a, b, c]) == [b, a, c]
    assert a.tentative_hvc == 3.0


def test_selector_registry():
    assert set(SELECTORS) == {"gi", "ugi", "lgi"}

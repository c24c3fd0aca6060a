import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from downset import compare, ComparisonOutcome
from downset.combinatorics import (
    GridTooLarge,
    check_middle_layer_conjecture,
    count_2d,
    count_antichains,
    enumerate_antichains,
    grid_points,
    layer_size,
    random_antichain,
    random_good_antichain_2d,
    width,
)


def test_count_2d_examples():
    assert count_2d(2) == 6
    assert count_2d(2, 1) == 4
    assert count_2d(3) == 20
    with pytest.raises(ValueError):
        count_2d(3, 4)


def test_enumeration_examples():
    assert count_antichains(2, 2) == 6
    assert count_antichains(3, 2) == 20
    for ell in (1, 3, 5):
        assert count_antichains(1, ell) == ell + 1


def test_enumeration_is_exact_and_duplicate_free():
    seen = set()
    for a in enumerate_antichains(2, 2):
        assert a not in seen
        seen.add(a)
        for u, v in itertools.combinations(a, 2):
            assert compare(u, v) is ComparisonOutcome.INCOMPARABLE
    assert len(seen) == 6
    assert () in seen
    assert ((0, 1), (1, 0)) in seen


def test_counts_match_closed_form():
    for ell in range(1, 6):
        assert count_antichains(2, ell) == comb(2 * ell, ell)
        for n in range(ell + 1):
            assert count_antichains(2, ell, n) == count_2d(ell, n)


@given(st.integers(1, 30))
@settings(max_examples=30, deadline=None)
def test_binomial_square_identity(ell):
    assert sum(comb(ell, n) ** 2 for n in range(ell + 1)) == comb(2 * ell, ell)


def test_width_examples():
    for ell in range(1, 6):
        assert width(2, ell) == ell
    assert width(1, 7) == 1
    assert width(3, 2) == 3


def test_width_lower_bounds_log_count():
    # every subset of a maximum antichain is an antichain
    for d, ell in [(1, 4), (2, 2), (2, 3), (3, 2), (2, 4)]:
        assert 2 ** width(d, ell) <= count_antichains(d, ell)


def test_layer_size_examples():
    assert layer_size(2, 2, 1) == 2
    assert layer_size(3, 2, 1) == 3
    assert layer_size(2, 3, 2) == 3
    assert layer_size(2, 3, 99) == 0
    assert layer_size(2, 3, -1) == 0


def test_layer_size_matches_enumeration():
    for d, ell in [(1, 5), (2, 4), (3, 3)]:
        pts = grid_points(d, ell)
        for s in range((ell - 1) * d + 1):
            assert layer_size(d, ell, s) == sum(1 for p in pts if sum(p) == s)


def test_layers_are_antichains():
    for d, ell in [(2, 4), (3, 3)]:
        for s in range((ell - 1) * d + 1):
            layer = [p for p in grid_points(d, ell) if sum(p) == s]
            for u, v in itertools.combinations(layer, 2):
                assert compare(u, v) is ComparisonOutcome.INCOMPARABLE


def test_middle_layer_reports():
    r = check_middle_layer_conjecture(2, 3)
    assert (r.width, r.max_layer_size, r.argmax_sums, r.equal) == (3, 3, (2,), True)
    r = check_middle_layer_conjecture(3, 2)
    assert (r.width, r.max_layer_size, r.equal) == (3, 3, True)
    assert r.argmax_sums == (1, 2)
    r = check_middle_layer_conjecture(1, 5)
    assert (r.width, r.max_layer_size, r.equal) == (1, 1, True)


def test_grid_guard():
    with pytest.raises(GridTooLarge):
        count_antichains(32, 4)


def test_random_antichain_determinism_and_invariants():
    g1 = random_antichain(2, 3, 10, seed=7)
    g2 = random_antichain(2, 3, 10, seed=7)
    assert g1.antichain == g2.antichain
    assert g1.draws_used == g2.draws_used
    rng = random.Random(0)
    for _ in range(30):
        k = rng.randint(1, 5)
        g = random_antichain(k, rng.randint(1, 12), rng.randint(1, 12), seed=rng.random())
        ac = g.antichain
        for u, v in itertools.combinations(ac.vectors, 2):
            assert compare(u, v) is ComparisonOutcome.INCOMPARABLE


def test_random_antichain_impossible_target_warns():
    g = random_antichain(1, 2, 5, seed=3)
    assert len(g.antichain) == 1
    assert g.target_reached is False


def test_good_antichain_forced_case():
    assert random_good_antichain_2d(3, 3, seed=1).vectors == ((0, 2), (1, 1), (2, 0))
    assert len(random_good_antichain_2d(5, 1, seed=9)) == 1
    with pytest.raises(ValueError):
        random_good_antichain_2d(3, 4, seed=0)


@given(st.integers(1, 10), st.data())
@settings(max_examples=60, deadline=None)
def test_good_antichain_properties(ell, data):
    n = data.draw(st.integers(1, ell))
    seed = data.draw(st.integers(0, 10 ** 6))
    ac = random_good_antichain_2d(ell, n, seed)
    assert len(ac) == n
    xs = [v[0] for v in ac.vectors]
    ys = [v[1] for v in ac.vectors]
    assert len(set(xs)) == n and len(set(ys)) == n
    for u, v in itertools.combinations(ac.vectors, 2):
        assert compare(u, v) is ComparisonOutcome.INCOMPARABLE

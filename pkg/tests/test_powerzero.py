import itertools

import numpy as np
import pytest

from tracezero.dsmat import ConvexCombo, derangements, simplex_weights, trace_power
from tracezero.perm import Permutation, compose, conjugate, cycle_type, fixed_point_count, power
from tracezero.powerzero import (
    canonical_support,
    census,
    matches_orbit_template,
    maximal_zero_power_supports,
    support_is_zero_power,
    word_products,
)

P = lambda s: Permutation.parse(s, 5)
PI = P("(1 2 3 4 5)")


def _bruteforce_zero_power(support, k):
    # literal expansion over every ordered word, no deduplication
    for word in itertools.product(support, repeat=k):
        prod = word[0]
        for b in word[1:]:
            prod = compose(b, prod)
        if fixed_point_count(prod):
            return False
    return True


def test_examples():
    assert support_is_zero_power([PI], 2)
    assert not support_is_zero_power([P("(1 2 3)(4 5)")], 2)
    assert support_is_zero_power([PI, power(PI, 2)], 2)
    with pytest.raises(ValueError):
        support_is_zero_power([PI], 6)
    with pytest.raises(ValueError):
        support_is_zero_power([], 2)


def test_word_products_match_matrices():
    sup = [PI, P("(1 2 4)(3 5)"), P("(1 3 2 5 4)")]
    mats = {p: p.matrix() for p in sup}
    expect = set()
    for a, b, c in itertools.product(sup, repeat=3):
        M = mats[a] @ mats[b] @ mats[c]
        expect.add(Permutation(tuple(int(j) for j in M.argmax(axis=1))))
    assert word_products(sup, 3) == expect


def test_agrees_with_trace_and_bruteforce():
    rng = np.random.default_rng(8)
    pool = derangements()
    for _ in range(200):
        size = int(rng.integers(1, 5))
        sup = [pool[i] for i in rng.choice(44, size, replace=False)]
        k = int(rng.integers(2, 6))
        combo = ConvexCombo(tuple(sup), tuple(simplex_weights(rng, size)))
        zero = support_is_zero_power(sup, k)
        assert zero == (trace_power(combo, k) < 1e-12)
        assert zero == _bruteforce_zero_power(sup, k)


@pytest.mark.parametrize("k,max_size,types", [(2, 3, {(5,)}), (3, 2, {(5,)}), (4, 1, {(5,)}), (5, 1, {(3, 2)})])
def test_census_bounds(k, max_size, types):
    sups = maximal_zero_power_supports(k)
    assert max(s.size for s in sups) == max_size
    assert {cycle_type(p) for s in sups for p in s.support} == types
    for s in sups:
        assert support_is_zero_power(s.support, k)
        for p in derangements():
            if p not in s.support:
                assert not support_is_zero_power(s.support | {p}, k)


def test_k4_k5_singletons_cover_types():
    assert {next(iter(s.support)) for s in maximal_zero_power_supports(4)} == {p for p in derangements() if cycle_type(p) == (5,)}
    assert {next(iter(s.support)) for s in maximal_zero_power_supports(5)} == {p for p in derangements() if cycle_type(p) == (3, 2)}


def test_monotonicity():
    for s in maximal_zero_power_supports(2):
        for r in range(1, s.size):
            for sub in itertools.combinations(s.support, r):
                assert support_is_zero_power(sub, 2)


def test_k2_census_values():
    c = census(2)
    assert c["maximal_support_count"] == 64
    assert c["size_histogram"] == {"2": 24, "3": 40}
    assert c["member_cycle_types"] == {"5": 168}
    assert c["size3_single_template"] is True
    assert c["size3_orbit_structure"] is True


def test_size3_structure_after_conjugation():
    # move one member to (1 2 3 4 5); the other two must then share an orbit of
    # its stabilizer, which is the shape the k=2 size bound is built on
    from tracezero.pairgraph import orbit_of_second

    for s in maximal_zero_power_supports(2):
        if s.size != 3:
            continue
        ok = False
        for pi in s.support:
            cyc = pi.cycles()[0]
            g = [0] * 5
            for i, c in enumerate(cyc):
                g[c] = i
            g = Permutation(tuple(g))
            assert conjugate(g, pi) == PI
            others = [conjugate(g, b) for b in s.support if b != pi]
            ok |= others[1] in orbit_of_second(PI, others[0])
        assert ok


def test_canonical_support_invariant():
    s = [PI, power(PI, 2)]
    f = P("(1 3)(2 4 5)")
    assert canonical_support(s) == canonical_support([conjugate(f, p) for p in s])
    assert matches_orbit_template([PI])

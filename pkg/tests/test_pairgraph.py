import random

import pytest

from tracezero.pairgraph import (
    PairGraph,
    class_count_formula,
    enumerate_pair_classes,
    is_isomorphism,
    orbit_of_second,
    pair_isomorphic,
    pair_isomorphic_bruteforce,
    product_trace,
    stabilizer,
    stabilizer_bruteforce,
    table1_representatives,
    trace_product_set,
)
from tracezero.perm import (
    Permutation,
    SizeLimitError,
    canonical_permutation,
    conjugate,
    cycle_type,
    enumerate_by_cycle_type,
    partitions,
    power,
)

P = lambda s: Permutation.parse(s, 5)
PI = P("(1 2 3 4 5)")


def test_stabilizer_examples():
    assert stabilizer(PI) == sorted(power(PI, k) for k in range(5))
    assert len(stabilizer(P("(1 2 3)(4 5)"))) == 6
    st = stabilizer(P("(1 2 3)"))
    assert len(st) == 6 and P("(4 5)") in st


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_stabilizer_fast_matches_bruteforce(n):
    for ct in partitions(n):
        p = canonical_permutation(ct, n)
        assert stabilizer(p) == sorted(stabilizer_bruteforce(p))


def test_isomorphism_examples():
    g = PairGraph(PI, power(PI, 2))
    assert pair_isomorphic(g, g) is not None
    assert pair_isomorphic(g, PairGraph(PI, power(PI, 3))) is None
    f = P("(1 4)(2 5 3)")
    h = PairGraph(conjugate(f, PI), conjugate(f, P("(1 2 4)(3 5)")))
    w = pair_isomorphic(PairGraph(PI, P("(1 2 4)(3 5)")), h)
    assert w is not None and is_isomorphism(w, PairGraph(PI, P("(1 2 4)(3 5)")), h)


def test_weight_mismatch_rejected():
    with pytest.raises(ValueError):
        pair_isomorphic(PairGraph(PI, PI), PairGraph(PI, PI, 1.0, 3.0))
    with pytest.raises(ValueError):
        PairGraph(PI, Permutation.identity(4))


def test_shared_edges_add_weights():
    e = PairGraph(PI, PI).edges()
    assert len(e) == 5 and set(e.values()) == {3.0}


def test_isomorphism_agrees_with_bruteforce():
    rng = random.Random(11)
    pool = [Permutation(tuple(rng.sample(range(5), 5))) for _ in range(60)]
    hits = 0
    for _ in range(600):
        a, b = rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.4:
            # force a fair share of isomorphic pairs
            f = rng.choice(pool)
            g1, g2 = PairGraph(a, b), PairGraph(conjugate(f, a), conjugate(f, b))
        else:
            g1, g2 = PairGraph(a, b), PairGraph(rng.choice(pool), rng.choice(pool))
        fast, brute = pair_isomorphic(g1, g2), pair_isomorphic_bruteforce(g1, g2)
        assert (fast is None) == (brute is None)
        if fast is not None:
            hits += 1
            assert is_isomorphism(fast, g1, g2)
    assert hits > 100


def test_orbit_examples():
    assert orbit_of_second(PI, power(PI, 2)) == {power(PI, 2)}
    assert len(orbit_of_second(PI, P("(1 2 4 5 3)"))) == 5
    assert orbit_of_second(PI, PI) == {PI}


@pytest.mark.parametrize("ct1,ct2,count", [((5,), (5,), 8), ((5,), (3, 2), 4), ((3, 2), (3, 2), 5)])
def test_class_counts_and_structure(ct1, ct2, count):
    classes = enumerate_pair_classes(ct1, ct2, 5)
    assert len(classes) == count == class_count_formula(ct1, ct2, 5)
    pi = classes[0].representative[0]
    stab = stabilizer(pi)
    union = set()
    for cls in classes:
        beta = cls.representative[1]
        assert beta == min(cls.orbit)
        # trace constant on the class
        assert {product_trace(b, pi) for b in cls.orbit} == {cls.trace}
        # orbit-stabilizer
        fixers = sum(1 for f in stab if conjugate(f, beta) == beta)
        assert cls.orbit_size * fixers == len(stab)
        assert not union & cls.orbit
        union |= cls.orbit
    assert union == set(enumerate_by_cycle_type(5, ct2))


@pytest.mark.parametrize("n,count", [(3, 2), (5, 8), (7, 108)])
def test_full_cycle_formula(n, count):
    assert len(enumerate_pair_classes((n,), (n,), n)) == count == class_count_formula((n,), (n,), n)


def test_formula_beyond_n5():
    assert len(enumerate_pair_classes((7,), (3, 2), 7)) == class_count_formula((7,), (3, 2), 7)
    assert len(enumerate_pair_classes((5, 2), (5, 2), 7)) == class_count_formula((5, 2), (5, 2), 7) == 56


def test_formula_unsupported_shapes():
    assert class_count_formula((2, 2), (2, 2), 4) is None
    assert class_count_formula((5,), (1,), 5) is None
    assert class_count_formula((4,), (4,), 4) is None


def test_trace_sets():
    assert trace_product_set((5,), (5,)) == {0, 1, 2, 5}
    assert trace_product_set((5,), (3, 2)) == {0, 1, 3}
    assert trace_product_set((3, 2), (3, 2)) == {0, 1, 2, 5}
    with pytest.raises(ValueError):
        trace_product_set((4,), (5,))


def test_table1():
    pairs = table1_representatives()
    assert len(pairs) == 17
    assert (PI, power(PI, 2)) in pairs
    assert (PI, P("(1 2 3)(4 5)")) in pairs
    q = P("(1 2 3)(4 5)")
    assert (q, power(q, 5)) in pairs and power(q, 5) == q.inverse()


def test_size_limits():
    with pytest.raises(SizeLimitError):
        enumerate_pair_classes((9,), (9,), 9)
    with pytest.raises(SizeLimitError):
        stabilizer_bruteforce(Permutation.identity(9))

"""Supports S of fixed-point-free permutations such that every strictly
positive convex combination A over S has tr(A^k) = 0.

tr(A^k) expands into a sum of positive weight products times fixed-point
counts of word products, so the condition is purely combinatorial: every
length-k word over S must multiply to a derangement.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .dsmat import derangements
from .perm import Permutation, compose, conjugate, cycle_type, fixed_point_count, format_cycle_type
from .pairgraph import orbit_of_second

Support = frozenset[Permutation]


@dataclass(frozen=True)
class ZeroPowerSupport:
    k: int
    support: Support

    @property
    def size(self) -> int:
        return len(self.support)

    def sorted_support(self) -> list[Permutation]:
        return sorted(self.support)


def _check_k(k: int) -> None:
    if not 2 <= k <= 5:
        raise ValueError(f"k must be in 2..5, got {k}")


def word_products(support: Iterable[Permutation], k: int) -> set[Permutation]:
    """Distinct permutations realised by P_a1 ... P_ak over the support."""
    products = {p for p in support}
    base = tuple(products)
    for _ in range(k - 1):
        # P_w P_b is the matrix of b o w
        products = {compose(b, w) for w in products for b in base}
    return products


def support_is_zero_power(support: Iterable[Permutation], k: int) -> bool:
    _check_k(k)
    support = frozenset(support)
    if not support:
        raise ValueError("support must be nonempty")
    return all(fixed_point_count(p) == 0 for p in word_products(support, k))


@lru_cache(maxsize=None)
def maximal_zero_power_supports(k: int) -> tuple[ZeroPowerSupport, ...]:
    """All inclusion-maximal zero-power supports among the 44 derangements.

    Level-wise growth: a set of size m+1 is tried only if each of its
    m-subsets is zero-power.  A zero-power set with no zero-power
    one-element extension is maximal, since any zero-power superset
    would contain such an extension.
    """
    _check_k(k)
    pool = derangements()
    level = {frozenset([p]) for p in pool if support_is_zero_power([p], k)}
    maximal: list[Support] = []
    while level:
        nxt: set[Support] = set()
        extended: set[Support] = set()
        for s in level:
            for p in pool:
                if p in s:
                    continue
                t = s | {p}
                if t in nxt:
                    extended.add(s)
                    continue
                if all((t - {q}) in level for q in t) and support_is_zero_power(t, k):
                    nxt.add(t)
                    extended.add(s)
        maximal.extend(s for s in level if s not in extended)
        level = nxt
    maximal.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(ZeroPowerSupport(k, s) for s in maximal)


def canonical_support(support: Iterable[Permutation]) -> tuple[Permutation, ...]:
    """Lexicographically least image of the set under simultaneous conjugation."""
    support = list(support)
    n = support[0].n
    best = None
    for m in itertools.permutations(range(n)):
        f = Permutation(m)
        img = tuple(sorted(conjugate(f, p) for p in support))
        if best is None or img < best:
            best = img
    return best


def matches_orbit_template(support: Iterable[Permutation]) -> bool:
    """True if some member pi sees the other members inside one orbit
    {f b f^-1 : f in stabilizer(pi)}."""
    support = list(support)
    for pi in support:
        rest = [b for b in support if b != pi]
        if not rest:
            return True
        orbit = orbit_of_second(pi, rest[0])
        if all(b in orbit for b in rest):
            return True
    return False


def census(k: int) -> dict:
    """JSON-ready summary of the maximal zero-power supports for ``k``."""
    sups = maximal_zero_power_supports(k)
    hist = Counter(s.size for s in sups)
    types = Counter(
        format_cycle_type(cycle_type(p)) for s in sups for p in s.support
    )
    classes: dict[tuple[Permutation, ...], int] = {}
    for s in sups:
        key = canonical_support(s.support)
        classes[key] = classes.get(key, 0) + 1
    reps = [
        {
            "support": [p.cycle_string() for p in key],
            "size": len(key),
            "cycle_types": [format_cycle_type(cycle_type(p)) for p in key],
            "conjugates": count,
        }
        for key, count in sorted(classes.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ]
    size3 = [s for s in sups if s.size == 3]
    return {
        "k": k,
        "maximal_support_count": len(sups),
        "size_histogram": {str(sz): hist[sz] for sz in sorted(hist)},
        "max_size": max(hist) if hist else 0,
        "member_cycle_types": dict(sorted(types.items())),
        "conjugacy_classes_of_supports": len(classes),
        "representatives": reps,
        "size3_single_template": len({canonical_support(s.support) for s in size3}) <= 1,
        "size3_orbit_structure": all(matches_orbit_template(s.support) for s in size3),
    }

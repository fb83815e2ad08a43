"""Weighted digraphs of permutation pairs and their equivalence classes.

A pair ``(pi, tau)`` is drawn as the union of the functional graphs of
``pi`` and ``tau`` on vertices {1..n}.  Edges only in ``pi`` carry weight
``w_pi``, edges only in ``tau`` carry ``w_tau`` and shared edges carry
``w_pi + w_tau``.  Two such graphs with matching weights are isomorphic via
``f`` exactly when ``f`` conjugates both permutations simultaneously, so
classes are orbits of the simultaneous conjugation action.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable

from .perm import (
    CycleType,
    Permutation,
    SizeLimitError,
    compose,
    conjugacy_class_size,
    conjugate,
    cycle_type,
    canonical_permutation,
    enumerate_by_cycle_type,
    fixed_point_count,
    normalize_cycle_type,
    power,
)

MAX_PAIR_DEGREE = 8


@dataclass(frozen=True)
class PairGraph:
    pi: Permutation
    tau: Permutation
    w_pi: float = 1.0
    w_tau: float = 2.0

    def __post_init__(self):
        if self.pi.n != self.tau.n:
            raise ValueError(f"degree mismatch: {self.pi.n} vs {self.tau.n}")

    @property
    def n(self) -> int:
        return self.pi.n

    def edges(self) -> dict[tuple[int, int], float]:
        """Map ``(u, v) -> weight`` over 0-based vertices."""
        out: dict[tuple[int, int], float] = {}
        for u in range(self.n):
            out[(u, self.pi(u))] = out.get((u, self.pi(u)), 0.0) + self.w_pi
            out[(u, self.tau(u))] = out.get((u, self.tau(u)), 0.0) + self.w_tau
        return out


@dataclass(frozen=True)
class PairClass:
    representative: tuple[Permutation, Permutation]
    orbit: frozenset[Permutation] = field(repr=False)

    @property
    def orbit_size(self) -> int:
        return len(self.orbit)

    @property
    def trace(self) -> int:
        """tr(P_beta P_pi) for the representative (constant on the class)."""
        pi, beta = self.representative
        return product_trace(beta, pi)


def product_trace(a: Permutation, b: Permutation) -> int:
    """tr(P_a P_b) = number of fixed points of ``b o a``."""
    return fixed_point_count(compose(b, a))


# -- stabilizers ---------------------------------------------------------


def _all_permutations(n: int) -> Iterable[Permutation]:
    return (Permutation(m) for m in itertools.permutations(range(n)))


def stabilizer_bruteforce(p: Permutation) -> list[Permutation]:
    if p.n > MAX_PAIR_DEGREE:
        raise SizeLimitError(f"degree {p.n} exceeds brute-force limit {MAX_PAIR_DEGREE}")
    return [f for f in _all_permutations(p.n) if conjugate(f, p) == p]


def _cycle_as_permutation(cyc: tuple[int, ...], n: int) -> Permutation:
    return Permutation.from_cycles([[a + 1 for a in cyc]], n)


def _stabilizer_fast(p: Permutation) -> list[Permutation] | None:
    n = p.n
    ct = cycle_type(p)
    moved = [c for c in p.cycles() if len(c) > 1]
    # single n-cycle: the cyclic group it generates
    if ct == (n,) and n > 1:
        return sorted(power(p, k) for k in range(n))
    # two cycles of different lengths covering everything
    if len(ct) == 2 and ct[1] > 1 and ct[0] != ct[1]:
        c1, c2 = (_cycle_as_permutation(c, n) for c in moved)
        return sorted(
            compose(power(c1, a), power(c2, b))
            for a in range(len(moved[0]))
            for b in range(len(moved[1]))
        )
    # one k-cycle plus fixed points: <p> times Sym(fixed points)
    if len(moved) == 1 and ct[1:] == (1,) * (n - ct[0]):
        fixed = [i for i in range(n) if p(i) == i]
        if math.factorial(len(fixed)) * ct[0] > 50_000:
            return None
        out = []
        for img in itertools.permutations(fixed):
            m = list(range(n))
            for a, b in zip(fixed, img):
                m[a] = b
            s = Permutation(tuple(m))
            out.extend(compose(power(p, k), s) for k in range(ct[0]))
        return sorted(out)
    return None


def stabilizer(p: Permutation) -> list[Permutation]:
    """All ``f`` with ``f p f^-1 == p``, sorted lexicographically."""
    fast = _stabilizer_fast(p)
    if fast is not None:
        return fast
    return stabilizer_bruteforce(p)


# -- isomorphism -------------------------------------------------------


def _check_weights(g1: PairGraph, g2: PairGraph) -> None:
    if g1.n != g2.n:
        raise ValueError(f"degree mismatch: {g1.n} vs {g2.n}")
    if (g1.w_pi, g1.w_tau) != (g2.w_pi, g2.w_tau):
        raise ValueError("pair graphs must carry equal weights to be compared")


def is_isomorphism(f: Permutation, g1: PairGraph, g2: PairGraph) -> bool:
    """Check edge and weight preservation of ``f`` directly on the digraphs."""
    e1, e2 = g1.edges(), g2.edges()
    if len(e1) != len(e2):
        return False
    for (u, v), w in e1.items():
        if e2.get((f(u), f(v))) != w:
            return False
    return True


def pair_isomorphic_bruteforce(g1: PairGraph, g2: PairGraph) -> Permutation | None:
    """Search all of S_n for an edge- and weight-preserving bijection."""
    _check_weights(g1, g2)
    if g1.n > MAX_PAIR_DEGREE:
        raise SizeLimitError(f"degree {g1.n} exceeds brute-force limit {MAX_PAIR_DEGREE}")
    for f in _all_permutations(g1.n):
        if is_isomorphism(f, g1, g2):
            return f
    return None


def pair_isomorphic(g1: PairGraph, g2: PairGraph) -> Permutation | None:
    """Find ``f`` with ``f pi1 f^-1 = pi2`` and ``f tau1 f^-1 = tau2``, or None."""
    _check_weights(g1, g2)
    n = g1.n
    if cycle_type(g1.pi) != cycle_type(g2.pi) or cycle_type(g1.tau) != cycle_type(g2.tau):
        return None
    a1, b1, a2, b2 = g1.pi, g1.tau, g2.pi, g2.tau

    def extend(assign: list[int], used: list[bool], start: int, image: int) -> bool:
        # f(x) = y forces f(a1 x) = a2 y and f(b1 x) = b2 y
        stack = [(start, image)]
        while stack:
            x, y = stack.pop()
            if assign[x] != -1:
                if assign[x] != y:
                    return False
                continue
            if used[y]:
                return False
            assign[x] = y
            used[y] = True
            stack.append((a1(x), a2(y)))
            stack.append((b1(x), b2(y)))
        return True

    def search(assign: list[int], used: list[bool]) -> list[int] | None:
        try:
            x = assign.index(-1)
        except ValueError:
            return assign
        for y in range(n):
            if used[y]:
                continue
            a, u = assign[:], used[:]
            if extend(a, u, x, y):
                found = search(a, u)
                if found is not None:
                    return found
        return None

    result = search([-1] * n, [False] * n)
    if result is None:
        return None
    f = Permutation(tuple(result))
    if conjugate(f, a1) != a2 or conjugate(f, b1) != b2:
        raise AssertionError("isomorphism witness failed verification")
    return f


# -- orbits and classes -------------------------------------------------


def orbit_of_second(pi: Permutation, beta: Permutation) -> frozenset[Permutation]:
    """O_beta = {f beta f^-1 : f in stabilizer(pi)}."""
    if pi.n != beta.n:
        raise ValueError(f"degree mismatch: {pi.n} vs {beta.n}")
    return frozenset(conjugate(f, beta) for f in stabilizer(pi))


def enumerate_pair_classes(ct1: Iterable[int], ct2: Iterable[int], n: int) -> list[PairClass]:
    """Classes of pairs with cycle types (ct1, ct2), first component fixed canonically."""
    if n > MAX_PAIR_DEGREE:
        raise SizeLimitError(f"degree {n} exceeds pair-class limit {MAX_PAIR_DEGREE}")
    ct1 = normalize_cycle_type(ct1, n)
    ct2 = normalize_cycle_type(ct2, n)
    pi = canonical_permutation(ct1, n)
    stab = stabilizer(pi)
    seen: set[Permutation] = set()
    classes = []
    # betas arrive in lexicographic order, so the first unseen one is the
    # smallest member of its orbit
    for beta in enumerate_by_cycle_type(n, ct2):
        if beta in seen:
            continue
        orbit = frozenset(conjugate(f, beta) for f in stab)
        seen |= orbit
        classes.append(PairClass((pi, beta), orbit))
    return classes


def _prime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, math.isqrt(k) + 1))


def class_count_formula(ct1: Iterable[int], ct2: Iterable[int], n: int) -> int | None:
    """Closed-form class count where one is known, else None.

    Covered shapes: both (n) with n an odd prime; one (n) with n an odd
    prime and the other any non-identity type; both (k1)+(k2) with k1, k2
    distinct primes and n = k1 + k2.
    """
    ct1 = normalize_cycle_type(ct1, n)
    ct2 = normalize_cycle_type(ct2, n)
    full = (n,)
    if n > 2 and _prime(n) and ct1 == full and ct2 == full:
        k = (math.factorial(n - 1) - (n - 1)) // n
        return n + k - 1
    if n > 2 and _prime(n) and full in (ct1, ct2):
        other = ct2 if ct1 == full else ct1
        if other == (1,) * n:
            return None
        return conjugacy_class_size(n, other) // n
    if ct1 == ct2 and len(ct1) == 2:
        k1, k2 = ct1
        if k1 != k2 and _prime(k1) and _prime(k2):
            k = (math.factorial(k2 - 1) - (k2 - 1)) // k2
            l = (math.factorial(k1 - 1) - (k1 - 1)) // k1
            m = (
                math.factorial(n) // (k1 * k2)
                - (k1 - 1) * (k2 - 1)
                - k2 * (k1 - 1) * k
                - k1 * (k2 - 1) * l
            ) // (k1 * k2)
            return (k1 - 1) * (k2 - 1) + (k1 - 1) * k + (k2 - 1) * l + m
    return None


def trace_product_set(ct1: Iterable[int], ct2: Iterable[int]) -> set[int]:
    """Achievable tr(P_beta P_pi) for ct(pi)=ct1, ct(beta)=ct2 in S_5."""
    ct1, ct2 = tuple(ct1), tuple(ct2)
    if sum(ct1) != 5 or sum(ct2) != 5 or 1 in ct1 or 1 in ct2:
        raise ValueError(f"trace sets are defined for derangement types of degree 5, got {ct1}, {ct2}")
    return {c.trace for c in enumerate_pair_classes(ct1, ct2, 5)}


# -- the reference table -------------------------------------------------

_TABLE1 = [
    ("(1 2 3 4 5)", ["(1 2 3 4 5)", "(1 3 5 2 4)", "(1 4 2 5 3)", "(1 5 4 3 2)",
                     "(1 2 3 5 4)", "(1 2 4 5 3)", "(1 2 5 4 3)", "(1 3 5 4 2)"]),
    ("(1 2 3 4 5)", ["(1 2 3)(4 5)", "(1 2 4)(3 5)", "(1 3 2)(4 5)", "(1 4 2)(3 5)"]),
    ("(1 2 3)(4 5)", ["(1 2 3)(4 5)", "(1 3 2)(4 5)", "(1 2 4)(3 5)", "(1 4 2)(3 5)",
                      "(1 4 5)(2 3)"]),
]


def table1_representatives() -> list[tuple[Permutation, Permutation]]:
    """The 17 reference pairs for S_5 derangement types, labels a_i = i.

    Rows: pi a 5-cycle with powers pi..pi^4 and four further 5-cycles;
    pi a 5-cycle against four (3)+(2) permutations; pi = (1 2 3)(4 5)
    against itself, pi^5, and three further (3)+(2) permutations.
    """
    out = []
    for first, seconds in _TABLE1:
        pi = Permutation.parse(first, 5)
        out.extend((pi, Permutation.parse(s, 5)) for s in seconds)
    return out

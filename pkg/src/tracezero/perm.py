"""Permutations of {1..n} stored in one-line notation.

Labels are 1-based in all text I/O and 0-based internally.  Composition
follows ``compose(p, q)(i) == p(q(i))``; with permutation matrices built as
``P[i, p(i)] = 1`` this gives ``P_p @ P_q == P_{compose(q, p)}``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_EXHAUSTIVE_DEGREE = 10

CycleType = tuple[int, ...]


class SizeLimitError(ValueError):
    """Raised when an exhaustive operation is asked for too large a degree."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0..n-1}; ``map[i]`` is the image of ``i``."""

    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation: {m}")
        object.__setattr__(self, "map", m)

    # -- construction -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_oneline(cls, images: Sequence[int]) -> "Permutation":
        """Build from 1-based images ``[p(1), ..., p(n)]``."""
        return cls(tuple(int(v) - 1 for v in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 1-based disjoint cycles; unlisted points are fixed."""
        m = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(a) - 1 for a in cyc]
            for a in cyc:
                if not 0 <= a < n:
                    raise ValueError(f"label {a + 1} outside 1..{n}")
                if a in seen:
                    raise ValueError(f"label {a + 1} repeated in cycle notation")
                seen.add(a)
            for i, a in enumerate(cyc):
                m[a] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(m))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``"(1 2 3)(4 5)"`` or ``"[2,3,1,5,4]"``.

        Cycle notation needs ``n`` unless the largest label is the degree.
        """
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise ValueError(f"malformed one-line notation: {text!r}")
            body = text[1:-1].strip()
            images = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
            p = cls.from_oneline(images)
            if n is not None and p.n != n:
                raise ValueError(f"degree {p.n} does not match n={n}")
            return p
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [
            [int(tok) for tok in re.split(r"[,\s]+", grp.strip()) if tok]
            for grp in re.findall(r"\(([^)]*)\)", text)
        ]
        if n is None:
            n = max((a for c in cycles for a in c), default=0)
        return cls.from_cycles(cycles, n)

    # -- basic protocol -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def __len__(self) -> int:
        return len(self.map)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, n={self.n})"

    # -- derived data ------------------------------------------------

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.map):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """0-based cycles, each starting at its smallest element, sorted by it."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.map[i]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cyc)

    def oneline_string(self) -> str:
        return "[" + ",".join(str(v + 1) for v in self.map) + "]"

    def matrix(self) -> np.ndarray:
        """0/1 matrix with ``P[i, p(i)] = 1``."""
        P = np.zeros((self.n, self.n))
        P[np.arange(self.n), self.map] = 1.0
        return P

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles(True)), 1)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.map))


def _check_same_degree(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} vs {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, i.e. ``i -> p(q(i))``."""
    _check_same_degree(p, q)
    return Permutation(tuple(p.map[j] for j in q.map))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(p.inverse(), -k)
    result = Permutation.identity(p.n)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycle_type(p: Permutation) -> CycleType:
    return tuple(sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True))


def conjugate(f: Permutation, p: Permutation) -> Permutation:
    """Return ``f p f^-1``; each cycle ``(a b ...)`` becomes ``(f(a) f(b) ...)``."""
    _check_same_degree(f, p)
    m = [0] * p.n
    for i, j in enumerate(p.map):
        m[f.map[i]] = f.map[j]
    return Permutation(tuple(m))


def fixed_point_count(p: Permutation) -> int:
    return sum(1 for i, j in enumerate(p.map) if i == j)


def parse_cycle_type(text: str) -> CycleType:
    """Parse ``"3+2"`` or ``"5"`` (also accepts commas) into a descending tuple."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1].strip()
    if not body:
        raise ValueError(f"empty cycle type: {text!r}")
    if not re.fullmatch(r"\d+(\s*[+,]\s*\d+|\s+\d+)*", body):
        raise ValueError(f"malformed cycle type: {text!r}")
    vals = [int(tok) for tok in re.findall(r"\d+", body)]
    if any(v < 1 for v in vals):
        raise ValueError(f"cycle lengths must be positive: {text!r}")
    return tuple(sorted(vals, reverse=True))


def format_cycle_type(ct: CycleType) -> str:
    return "+".join(str(k) for k in ct)


def normalize_cycle_type(ct: Iterable[int], n: int) -> CycleType:
    """Pad with 1-cycles up to degree ``n`` and sort descending."""
    parts = [int(k) for k in ct]
    total = sum(parts)
    if total > n:
        raise ValueError(f"cycle type {parts} exceeds degree {n}")
    parts += [1] * (n - total)
    return tuple(sorted(parts, reverse=True))


def conjugacy_class_size(n: int, ct: Iterable[int]) -> int:
    """Number of permutations of degree ``n`` with cycle type ``ct``."""
    parts = normalize_cycle_type(ct, n)
    denom = 1
    for k, m in Counter(parts).items():
        denom *= math.factorial(m) * k**m
    return math.factorial(n) // denom


def _guard(n: int) -> None:
    if n > MAX_EXHAUSTIVE_DEGREE:
        raise SizeLimitError(f"degree {n} exceeds exhaustive limit {MAX_EXHAUSTIVE_DEGREE}")


def _generate(n: int, parts: CycleType) -> Iterator[tuple[int, ...]]:
    # Each cycle opens at the smallest unused point, so every permutation
    # is produced exactly once.
    m = [-1] * n

    def rec(remaining: Counter, unused: list[int]):
        if not unused:
            yield tuple(m)
            return
        start = unused[0]
        rest = unused[1:]
        for length in sorted(remaining):
            if remaining[length] == 0:
                continue
            remaining[length] -= 1
            for tail in itertools.permutations(rest, length - 1):
                cyc = (start,) + tail
                for i, a in enumerate(cyc):
                    m[a] = cyc[(i + 1) % length]
                left = [u for u in rest if u not in tail]
                yield from rec(remaining, left)
            remaining[length] += 1

    yield from rec(Counter(parts), list(range(n)))


def enumerate_by_cycle_type(n: int, ct: Iterable[int]) -> list[Permutation]:
    """All permutations of degree ``n`` with cycle type ``ct``, lexicographic."""
    _guard(n)
    parts = normalize_cycle_type(ct, n)
    return [Permutation(m) for m in sorted(_generate(n, parts))]


def partitions(n: int, max_part: int | None = None) -> Iterator[CycleType]:
    """Integer partitions of ``n`` in descending-part form."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def trace_zero_permutations(n: int) -> list[Permutation]:
    """Fixed-point-free permutations of degree ``n``, lexicographic."""
    _guard(n)
    out = []
    for ct in partitions(n):
        if 1 not in ct:
            out.extend(Permutation(m) for m in _generate(n, ct))
    return sorted(out)


def canonical_permutation(ct: Iterable[int], n: int | None = None) -> Permutation:
    """The permutation (1 2 .. k1)(k1+1 .. k1+k2)... on consecutive labels."""
    parts = list(ct)
    if n is None:
        n = sum(parts)
    parts = normalize_cycle_type(parts, n)
    cycles = []
    start = 1
    for k in parts:
        cycles.append(range(start, start + k))
        start += k
    return Permutation.from_cycles(cycles, n)

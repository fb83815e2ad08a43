"""Trace-zero doubly stochastic 5x5 matrices as convex combinations of
fixed-point-free permutation matrices."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .perm import Permutation, compose, fixed_point_count, trace_zero_permutations

DEGREE = 5
DS_TOL = 1e-9
WEIGHT_TOL = 1e-12


@lru_cache(maxsize=None)
def derangements() -> tuple[Permutation, ...]:
    """The 44 fixed-point-free permutations of degree 5, lexicographic."""
    return tuple(trace_zero_permutations(DEGREE))


@lru_cache(maxsize=None)
def _derangement_matrices() -> np.ndarray:
    mats = np.stack([p.matrix() for p in derangements()])
    mats.flags.writeable = False
    return mats


@dataclass(frozen=True)
class ConvexCombo:
    support: tuple[Permutation, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        support = tuple(self.support)
        weights = tuple(float(w) for w in self.weights)
        if not support:
            raise ValueError("empty support")
        if len(support) != len(weights):
            raise ValueError("support and weights differ in length")
        if len(set(support)) != len(support):
            raise ValueError("support permutations must be distinct")
        for p in support:
            if p.n != DEGREE:
                raise ValueError(f"support permutations must have degree {DEGREE}")
            if fixed_point_count(p):
                raise ValueError(f"support permutation {p} has a fixed point")
        if any(not w > 0 for w in weights):
            raise ValueError("weights must be strictly positive")
        if abs(sum(weights) - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {sum(weights)!r}, expected 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)

    def to_json(self) -> dict:
        return {
            "support": [p.cycle_string() for p in self.support],
            "weights": list(self.weights),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConvexCombo":
        return cls(
            tuple(Permutation.parse(s, DEGREE) for s in data["support"]),
            tuple(data["weights"]),
        )


def to_matrix(c: ConvexCombo) -> np.ndarray:
    M = np.zeros((DEGREE, DEGREE))
    for p, w in zip(c.support, c.weights):
        M[np.arange(DEGREE), p.map] += w
    return M


def is_doubly_stochastic(M: np.ndarray, tol: float = DS_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    return bool(
        (M >= -tol).all()
        and np.all(np.abs(M.sum(axis=0) - 1) <= tol)
        and np.all(np.abs(M.sum(axis=1) - 1) <= tol)
    )


def _check_power(k: int) -> None:
    if not 1 <= k <= 5:
        raise ValueError(f"power k must be in 1..5, got {k}")


def trace_power(c: ConvexCombo, k: int, method: str = "matrix") -> float:
    """tr(A^k) for A = to_matrix(c).

    ``method="words"`` expands the product over all length-k words of the
    support and sums weight products times fixed-point counts.
    """
    _check_power(k)
    if method == "matrix":
        return float(np.trace(np.linalg.matrix_power(to_matrix(c), k)))
    if method == "words":
        total = 0.0
        idx = range(len(c.support))
        for word in itertools.product(idx, repeat=k):
            # P_a1 ... P_ak is the matrix of a_k o ... o a_1
            prod = c.support[word[0]]
            w = c.weights[word[0]]
            for j in word[1:]:
                prod = compose(c.support[j], prod)
                w *= c.weights[j]
            total += w * fixed_point_count(prod)
        return total
    raise ValueError(f"unknown method {method!r}")


def simplex_weights(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform point of the open simplex via sorted uniform spacings."""
    while True:
        cuts = np.sort(rng.random(size - 1))
        w = np.diff(np.concatenate(([0.0], cuts, [1.0])))
        if (w > 0).all():
            return w


def random_combo(rng: np.random.Generator, size: int) -> ConvexCombo:
    if not 1 <= size <= 44:
        raise ValueError(f"support size must be in 1..44, got {size}")
    pool = derangements()
    idx = np.sort(rng.choice(len(pool), size=size, replace=False))
    w = simplex_weights(rng, size)
    w = w / w.sum()
    return ConvexCombo(tuple(pool[i] for i in idx), tuple(w))


def random_matrices(
    rng: np.random.Generator, count: int, sizes: int | Sequence[int] | np.ndarray
) -> np.ndarray:
    """Batch of ``count`` random trace-zero DS matrices, shape (count, 5, 5).

    ``sizes`` is one support size or a per-sample array of sizes.  Supports
    are uniform subsets of the 44 derangements and weights are uniform on
    the simplex, as in :func:`random_combo`.
    """
    sizes = np.broadcast_to(np.asarray(sizes, dtype=int), (count,))
    if count and (sizes.min() < 1 or sizes.max() > 44):
        raise ValueError("support sizes must be in 1..44")
    mats = _derangement_matrices()
    order = np.argsort(rng.random((count, 44)), axis=1)
    cuts = rng.random((count, 43))
    # pad unused cut slots with 1 so they become zero-width spacings past the support
    slot = np.arange(43)[None, :]
    cuts = np.where(slot < (sizes - 1)[:, None], cuts, 1.0)
    cuts.sort(axis=1)
    w = np.diff(np.concatenate([np.zeros((count, 1)), cuts, np.ones((count, 1))], axis=1))
    weights = np.zeros((count, 44))
    np.put_along_axis(weights, order, w, axis=1)
    return np.einsum("sk,kij->sij", weights, mats)


def trace_powers_batch(A: np.ndarray, kmax: int = 5) -> np.ndarray:
    """tr(A^k) for k = 1..kmax over a stack of matrices; shape (count, kmax)."""
    out = np.empty(A.shape[:-2] + (kmax,))
    P = A
    for k in range(kmax):
        out[..., k] = np.trace(P, axis1=-2, axis2=-1)
        P = P @ A
    return out


# -- text I/O -----------------------------------------------------------


def matrix_to_csv(M: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(M):
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    M = np.array([[float(x) for x in r] for r in rows])
    if M.shape != (DEGREE, DEGREE):
        raise ValueError(f"expected a 5x5 matrix, got shape {M.shape}")
    return M


def combo_to_json(c: ConvexCombo) -> str:
    return json.dumps(c.to_json())


def combo_from_json(text: str) -> ConvexCombo:
    return ConvexCombo.from_json(json.loads(text))

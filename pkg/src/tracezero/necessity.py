"""Necessary coefficient conditions for the characteristic polynomial
x^5 + k1 x^4 + k2 x^3 + k3 x^2 + k4 x + k5 of a trace-zero doubly
stochastic 5x5 matrix, plus the two-permutation coefficient families
the bounds are built from.

Passing the check means "not ruled out": the conditions are necessary,
not sufficient, for realizability.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

from .charpoly import CharPolyCoeffs
from .perm import Permutation

DEFAULT_TOL = 1e-9


@dataclass
class BranchResult:
    ok: bool
    subcase: str
    failed: list[str] = field(default_factory=list)


@dataclass
class NecessityReport:
    passes: bool
    condition_a: bool
    condition_b: bool
    condition_d: bool
    branch_results: dict[str, BranchResult]
    c_star: float | None
    notes: list[str]
    coefficients: list[float]

    def to_json(self) -> dict:
        out = asdict(self)
        out["verdict"] = "not ruled out" if self.passes else "ruled out"
        return out


# -- c_* and the slack functions ---------------------------------------


def c_star(k3: float, k4: float) -> float:
    """Root in (0, 1) of c^2 + r c - r with r = k4/k3."""
    if k3 == 0:
        raise ValueError("c_star needs k3 != 0")
    r = k4 / k3
    if not r > 0:
        raise ValueError(f"c_star needs k4/k3 > 0, got {r}")
    # 2r / (r + sqrt(r^2 + 4r)), stable for large and small r
    return 2.0 / (1.0 + math.sqrt(1.0 + 4.0 / r))


def _f(c: float) -> float:
    return -5 * c**3 * (1 - c)


def _g(c: float) -> float:
    return -5 * c * (1 - c) ** 2


def appendix_phi(k3: float, k4: float) -> float:
    """k4 - f(c_*) with f(c) = -5 c^3 (1 - c)."""
    return k4 - _f(c_star(k3, k4))


def appendix_psi(k3: float, k4: float) -> float:
    """k3 - g(c_*) with g(c) = -5 c (1 - c)^2."""
    return k3 - _g(c_star(k3, k4))


# -- the checker -------------------------------------------------------


def _real_cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1 / 3), x)


def _branch_i(k2, k3, k4, tol) -> BranchResult:
    failed = []
    lo = max(k2, -2 - k2)
    if not (lo - tol <= k3 <= tol):
        failed.append("max{k2,-2-k2} <= k3 <= 0")
    subs = []
    if k4 >= -tol:
        subs.append("k4>=0")
        if not k4 <= 1 + k3 + tol:
            failed.append("k4 <= 1+k3")
    if k4 <= tol:
        subs.append("k4<=0")
        bound = max(-(1 + k2) * (4 + 5 * k2), -(1 + k3) * (2 + 5 * k3) / 9)
        if not k4 >= bound - tol:
            failed.append("k4 >= max{-(1+k2)(4+5k2), -(1+k3)(2+5k3)/9}")
    return BranchResult(not failed, ",".join(subs), failed)


def _branch_ii(k2, k3, k4, tol, notes) -> tuple[BranchResult, float | None]:
    failed = []
    if not (-5 / 4 - tol <= k2 <= tol):
        failed.append("-5/4 <= k2 <= 0")
    if not (-20 / 27 - tol <= k3 <= tol):
        failed.append("-20/27 <= k3 <= 0")
    cs = None
    subs = []
    k3_zero = abs(k3) <= tol
    if k4 >= -tol:
        subs.append("k4>=0")
        if not k4 <= k2 * k2 / 5 + tol:
            failed.append("k4 <= k2^2/5")
    if k3_zero and k4 <= tol:
        subs.append("k3=0,k4<=0")
        if not abs(k4 - 2 * k2) <= tol:
            failed.append("k4 = 2k2")
    elif k4 < -tol:
        r = k4 / k3 if k3 != 0 else math.inf
        if not r > 0:
            subs.append("k4<0,k4/k3<=0")
            failed.append("k4/k3 > 0")
        else:
            cs = c_star(k3, k4)
            g, f = _g(cs), _f(cs)
            if r < 1 / 6:
                subs.append("k4/k3<1/6")
                if not min(k3, k4) >= g - tol:
                    failed.append("min{k3,k4} >= -5c*(1-c*)^2")
            elif r <= 1:
                subs.append("1/6<=k4/k3<=1")
                if r == 1:
                    notes.append("k4/k3 == 1 treated by the 1/6 <= k4/k3 <= 1 clause")
                if not k4 >= g - tol:
                    failed.append("k4 >= -5c*(1-c*)^2")
            elif r <= 9 / 4:
                subs.append("1<k4/k3<=9/4")
                if not k3 >= f - tol:
                    failed.append("k3 >= -5c*^3(1-c*)")
            else:
                subs.append("k4/k3>9/4")
                if not min(k3, k4) >= f - tol:
                    failed.append("min{k3,k4} >= -5c*^3(1-c*)")
    return BranchResult(not failed, ",".join(subs), failed), cs


def _branch_iii(k2, k3, k4, tol) -> BranchResult:
    failed = []
    t = _real_cbrt(-k3)
    if not -t * (3 - 2 * t) - tol <= k2:
        failed.append("-(-k3)^(1/3)(3-2(-k3)^(1/3)) <= k2")
    subs = []
    if k4 <= tol:
        subs.append("k4<=0")
        s = math.sqrt(max(-k2, 0.0))
        if not k4 >= -3 * s * (1 - s) ** 2 - tol:
            failed.append("k4 >= -3sqrt(-k2)(1-sqrt(-k2))^2")
    if k4 >= -tol:
        subs.append("k4>=0")
        if not k4 <= -t * (1 - t) * (1 - 3 * t) + tol:
            failed.append("k4 <= -(-k3)^(1/3)(1-(-k3)^(1/3))(1-3(-k3)^(1/3))")
    return BranchResult(not failed, ",".join(subs), failed)


def check_necessary(c: CharPolyCoeffs, tol: float = DEFAULT_TOL) -> NecessityReport:
    """Evaluate every condition without short-circuiting.

    Boundaries are inclusive with ``tol`` slack; a sign split such as
    "if k4 >= 0" applies whenever k4 is within ``tol`` of that side, so
    both halves are enforced when |k4| <= tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    k1, k2, k3, k4, k5 = c.as_tuple()
    notes: list[str] = []
    cond_a = abs(k1) <= tol
    cond_b = (-5 / 2 - tol < k2 <= tol) and (-5 / 3 - tol <= k3 <= tol)
    cond_d = abs(1 + k1 + k2 + k3 + k4 + k5) <= tol
    if not cond_a:
        notes.append("k1 != 0")
    if not cond_b:
        notes.append("k2 or k3 outside -5/2 < k2 <= 0, -5/3 <= k3 <= 0")
    if not cond_d:
        notes.append("1 + k1 + ... + k5 != 0 (1 is not a root)")
    bi = _branch_i(k2, k3, k4, tol)
    bii, cs = _branch_ii(k2, k3, k4, tol, notes)
    biii = _branch_iii(k2, k3, k4, tol)
    branches = {"i": bi, "ii": bii, "iii": biii}
    if not any(b.ok for b in branches.values()):
        notes.append("no branch of the k3/k4 conditions holds")
    passes = cond_a and cond_b and cond_d and any(b.ok for b in branches.values())
    notes.append("necessary conditions only: passing does not certify realizability")
    return NecessityReport(passes, cond_a, cond_b, cond_d, branches, cs, notes, list(c.as_tuple()))


def coeffs_with_derived_k5(k2: float, k3: float, k4: float, k1: float = 0.0) -> CharPolyCoeffs:
    """Fill in k5 from 1 + k1 + ... + k5 = 0."""
    return CharPolyCoeffs(k1, k2, k3, k4, -(1 + k1 + k2 + k3 + k4))


# -- two-permutation families -------------------------------------------


@dataclass(frozen=True)
class PairFamily:
    """A = c P_pi + (1 - c) P_beta with closed-form k2, k3, k4 in c."""

    case_id: str
    pair: tuple[Permutation, Permutation]
    k2_of_c: Callable[[float], float]
    k3_of_c: Callable[[float], float]
    k4_of_c: Callable[[float], float]

    def coeffs(self, c: float) -> tuple[float, float, float]:
        return (self.k2_of_c(c), self.k3_of_c(c), self.k4_of_c(c))

    def matrix(self, c: float):
        pi, beta = self.pair
        return c * pi.matrix() + (1 - c) * beta.matrix()


def _p(text: str) -> Permutation:
    return Permutation.parse(text, 5)


_C5 = "(1 2 3 4 5)"
_C32 = "(1 2 3)(4 5)"

_FAMILIES = [
    ("i.A", _C32, "(1 3 2)(4 5)",
     lambda c: -(1 + 3 * c * (1 - c)),
     lambda c: -(1 - 3 * c * (1 - c)),
     lambda c: 3 * c * (1 - c)),
    ("i.B", _C32, "(1 2 4)(3 5)",
     lambda c: -(c * c + (1 - c) ** 2),
     lambda c: -(c * c + (1 - c) ** 2),
     lambda c: 0.0),
    ("i.C", _C32, "(1 4 2)(3 5)",
     lambda c: c * (1 - c) - 1,
     lambda c: 3 * c * (1 - c) - 1,
     lambda c: c * (1 - c) * (1 - 5 * c * (1 - c))),
    ("i.D", _C32, "(1 4 5)(2 3)",
     lambda c: -1.0,
     lambda c: -(c * c + (1 - c) ** 2),
     lambda c: c * (1 - c)),
    ("ii.A", _C5, "(1 3 5 2 4)",
     lambda c: 0.0,
     lambda c: -5 * c * (1 - c) ** 2,
     lambda c: -5 * c**3 * (1 - c)),
    ("ii.B", _C5, "(1 4 2 5 3)",
     lambda c: 0.0,
     lambda c: -5 * c * c * (1 - c),
     lambda c: -5 * c * (1 - c) ** 3),
    ("ii.C", _C5, "(1 5 4 3 2)",
     lambda c: -5 * c * (1 - c),
     lambda c: 0.0,
     lambda c: 5 * c * c * (1 - c) ** 2),
    ("ii.D", _C5, "(1 2 3 5 4)",
     lambda c: -c * (1 - c),
     lambda c: 0.0,
     lambda c: -2 * c * (1 - c)),
    ("ii.E", _C5, "(1 2 4 5 3)",
     lambda c: 0.0,
     lambda c: -2 * c * (1 - c),
     lambda c: -c * (1 - c)),
    ("ii.F", _C5, "(1 2 5 4 3)",
     lambda c: -2 * c * (1 - c),
     lambda c: -2 * c * (1 - c),
     lambda c: 0.0),
    ("ii.G", _C5, "(1 3 5 4 2)",
     lambda c: -2 * c * (1 - c),
     lambda c: -c * (1 - c),
     lambda c: -c * (1 - c) * (5 * c * c - 5 * c + 2)),
    ("iii.A", _C5, "(1 2 3)(4 5)",
     lambda c: -(1 - c),
     lambda c: -(1 - c),
     lambda c: 0.0),
    ("iii.B", _C5, "(1 2 4)(3 5)",
     lambda c: -(1 - c) ** 2,
     lambda c: -(1 - c) * (1 - c * (1 - c)),
     lambda c: -3 * c * c * (1 - c)),
    ("iii.C", _C5, "(1 3 2)(4 5)",
     lambda c: -(1 - c) * (1 + 2 * c),
     lambda c: -(1 - c) ** 3,
     lambda c: -c * (1 - c) * (3 * c - 2)),
    ("iii.D", _C5, "(1 4 2)(3 5)",
     lambda c: -(1 - c),
     lambda c: -(1 - c) * (3 * c * c + (1 - c) ** 2),
     lambda c: -c * (1 - c) * (2 * c - 1)),
]

FAMILIES: dict[str, PairFamily] = {
    cid: PairFamily(cid, (_p(a), _p(b)), f2, f3, f4)
    for cid, a, b, f2, f3, f4 in _FAMILIES
}


def family_coeffs(case_id: str, c: float) -> tuple[float, float, float]:
    """(k2, k3, k4) of c P_pi + (1 - c) P_beta for a named case, c in (0, 1)."""
    try:
        fam = FAMILIES[case_id]
    except KeyError:
        raise ValueError(f"unknown case id {case_id!r}; known: {sorted(FAMILIES)}") from None
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    return fam.coeffs(c)

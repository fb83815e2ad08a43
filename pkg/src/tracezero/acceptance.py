"""Thirteen acceptance checks, shared by the test-suite and ``tracezero verify``.

Each check returns a :class:`CriterionResult`; none of them raise on a
failed expectation, so a full run always reports every line.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .charpoly import CharPolyCoeffs, coeffs_batch, coeffs_direct, coeffs_from_traces, roots
from .dsmat import random_matrices
from .necessity import FAMILIES, c_star, check_necessary
from .pairgraph import (
    PairGraph,
    class_count_formula,
    enumerate_pair_classes,
    pair_isomorphic,
    table1_representatives,
    trace_product_set,
)
from .perm import Permutation, cycle_type, trace_zero_permutations
from .powerzero import maximal_zero_power_supports
from .region import SamplerConfig, boundary_event, points_to_csv, sample_region

SEED = 7
SCALE_SAMPLES = 100_000
COEFF_SAMPLES = 10_000

EXAMPLE_1 = np.array([
    [0, 0.5, 0, 0.3, 0.2],
    [0.1, 0, 0.7, 0.2, 0],
    [0.7, 0, 0, 0, 0.3],
    [0, 0.3, 0.2, 0, 0.5],
    [0.2, 0.2, 0.1, 0.5, 0],
])
EXAMPLE_1_COEFFS = (0.0, -0.43, -0.436, -0.1585, 0.0245)
EXAMPLE_2 = np.array([
    [0, 0.1, 0.2, 0.3, 0.4],
    [0.4, 0, 0.1, 0.2, 0.3],
    [0.4, 0, 0, 0.4, 0.2],
    [0, 0.2, 0.7, 0, 0.1],
    [0.2, 0.7, 0, 0.1, 0],
])
EXAMPLE_2_COEFFS = (0.0, -0.74, -0.3, 0.02, 0.02)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _mixed_sizes(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.integers(1, 45, size=count)


def c01_class_counts() -> tuple[bool, str]:
    start = time.perf_counter()
    cases = [((5,), (5,), 8), ((5,), (3, 2), 4), ((3, 2), (3, 2), 5)]
    got = []
    ok = True
    for a, b, want in cases:
        n_enum = len(enumerate_pair_classes(a, b, 5))
        n_form = class_count_formula(a, b, 5)
        got.append(f"{n_enum}/{n_form}")
        ok &= n_enum == want == n_form
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5
    return ok, f"enumerated/formula {', '.join(got)} (want 8/4/5), {elapsed:.2f}s < 5s"


def c02_formula_beyond_five() -> tuple[bool, str]:
    n3 = len(enumerate_pair_classes((3,), (3,), 3))
    start = time.perf_counter()
    n7 = len(enumerate_pair_classes((7,), (7,), 7))
    elapsed = time.perf_counter() - start
    f3, f7 = class_count_formula((3,), (3,), 3), class_count_formula((7,), (7,), 7)
    ok = n3 == f3 == 2 and n7 == f7 == 108 and elapsed < 60
    return ok, f"n=3 {n3} vs {f3}, n=7 {n7} vs {f7}, n=7 in {elapsed:.2f}s"


def c03_trace_sets() -> tuple[bool, str]:
    want = [{0, 1, 2, 5}, {0, 1, 3}, {0, 1, 2, 5}]
    got = [
        trace_product_set((5,), (5,)),
        trace_product_set((5,), (3, 2)),
        trace_product_set((3, 2), (3, 2)),
    ]
    return got == want, " ".join(str(sorted(s)) for s in got)


def c04_table1() -> tuple[bool, str]:
    pairs = table1_representatives()
    graphs = [PairGraph(a, b) for a, b in pairs]
    clashes = [
        (i, j)
        for i in range(len(graphs))
        for j in range(i + 1, len(graphs))
        if pair_isomorphic(graphs[i], graphs[j]) is not None
    ]
    # every enumerated class must contain exactly one table pair
    cover_ok = True
    n_classes = 0
    for a, b in [((5,), (5,)), ((5,), (3, 2)), ((3, 2), (3, 2))]:
        for cls in enumerate_pair_classes(a, b, 5):
            n_classes += 1
            g = PairGraph(*cls.representative)
            hits = [
                i for i, (p, q) in enumerate(pairs)
                if (cycle_type(p), cycle_type(q)) == (a, b)
                and pair_isomorphic(g, graphs[i]) is not None
            ]
            cover_ok &= len(hits) == 1
    ok = len(pairs) == 17 and not clashes and cover_ok and n_classes == 17
    return ok, f"{len(pairs)} pairs, {len(clashes)} isomorphic clashes, {n_classes} classes each hit once: {cover_ok}"


def c05_power_census() -> tuple[bool, str]:
    start = time.perf_counter()
    expect = {2: (3, "5"), 3: (2, "5"), 4: (1, "5"), 5: (1, "3+2")}
    parts = []
    ok = True
    for k, (size, ct) in expect.items():
        sups = maximal_zero_power_supports.__wrapped__(k)
        sizes = {s.size for s in sups}
        types = {"+".join(map(str, cycle_type(p))) for s in sups for p in s.support}
        good = max(sizes) == size and types == {ct}
        if k >= 4:
            good &= sizes == {1}
        ok &= good
        parts.append(f"k={k}: {len(sups)} supports, max {max(sizes)}, types {sorted(types)}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    return ok, "; ".join(parts) + f"; {elapsed:.1f}s"


def c06_trace_square() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    A = random_matrices(rng, SCALE_SAMPLES, _mixed_sizes(rng, SCALE_SAMPLES))
    A2 = A @ A
    t2 = np.trace(A2, axis1=1, axis2=2)
    dist = np.abs(A2 - np.eye(5)).max(axis=(1, 2))
    ok = bool((t2 < 5 - 1e-6).all() and (dist >= 1e-6).all())
    return ok, f"max tr(A^2) = {t2.max():.6f}, min ||A^2 - I||inf = {dist.min():.3e} over {SCALE_SAMPLES}"


def c07_newton_vs_direct() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 1)
    A = random_matrices(rng, COEFF_SAMPLES, _mixed_sizes(rng, COEFF_SAMPLES))
    newton = coeffs_batch(A)
    worst_c = worst_r = worst_one = 0.0
    for M, k in zip(A, newton):
        d = np.array(coeffs_direct(M).as_tuple())
        worst_c = max(worst_c, float(np.abs(d - k).max()))
        c = CharPolyCoeffs.from_sequence(k)
        zs = roots(c)
        poly = c.monic()
        worst_r = max(worst_r, max(abs(np.polyval(poly, z)) for z in zs))
        worst_one = max(worst_one, min(abs(z - 1) for z in zs), abs(c(1.0)))
    ok = worst_c <= 1e-10 and worst_r <= 1e-8 and worst_one <= 1e-8
    return ok, f"coeff diff {worst_c:.2e}, root residual {worst_r:.2e}, distance of 1 from roots {worst_one:.2e}"


def c08_examples() -> tuple[bool, str]:
    errs = []
    for M, want in ((EXAMPLE_1, EXAMPLE_1_COEFFS), (EXAMPLE_2, EXAMPLE_2_COEFFS)):
        t = [float(np.trace(np.linalg.matrix_power(M, k))) for k in range(2, 6)]
        via_traces = coeffs_from_traces(*t).as_tuple()
        direct = coeffs_direct(M).as_tuple()
        errs.append(max(abs(a - b) for a, b in zip(via_traces + direct, want + want)))
    cs = c_star(EXAMPLE_1_COEFFS[2], EXAMPLE_1_COEFFS[3])
    ok = max(errs) <= 1e-12 and abs(cs - 0.448) <= 0.001
    return ok, f"coefficient errors {errs[0]:.1e}, {errs[1]:.1e}; c* = {cs:.6f}"


def c09_necessity_at_scale() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    sizes = _mixed_sizes(rng, SCALE_SAMPLES)
    A = random_matrices(rng, SCALE_SAMPLES, sizes)
    ks = coeffs_batch(A)
    failures = [i for i, k in enumerate(ks) if not check_necessary(CharPolyCoeffs.from_sequence(k)).passes]
    k2, k3 = ks[:, 1], ks[:, 2]
    ranges_ok = bool((k2 > -2.5).all() and (k2 <= 1e-12).all() and (k3 >= -5 / 3).all() and (k3 <= 1e-12).all())
    fail_sizes = sorted({int(sizes[i]) for i in failures})
    detail = (
        f"{len(failures)} of {SCALE_SAMPLES} fail check_necessary"
        + (f" (support sizes {fail_sizes})" if failures else "")
        + f"; k2 in [{k2.min():.4f}, {k2.max():.2e}], k3 in [{k3.min():.4f}, {k3.max():.2e}], ranges ok: {ranges_ok}"
    )
    return not failures and ranges_ok, detail


def c10_families() -> tuple[bool, str]:
    grid = np.linspace(0.005, 0.995, 100)
    worst = 0.0
    for fam in FAMILIES.values():
        for c in grid:
            k = coeffs_direct(fam.matrix(c)).as_tuple()[1:4]
            worst = max(worst, max(abs(a - b) for a, b in zip(k, fam.coeffs(c))))
    return worst <= 1e-10 and len(FAMILIES) == 15, f"{len(FAMILIES)} families, worst deviation {worst:.2e}"


def c11_boundary() -> tuple[bool, str]:
    ev = boundary_event()
    beta = Permutation.parse("(1 2 4)(3 5)", 5)
    zs = roots(coeffs_direct(beta.matrix().astype(float)), assume_root_one=True)
    nonreal = sorted((z for z in zs if abs(z.imag) > 1e-6), key=lambda z: z.imag)
    w = cmath.exp(2j * math.pi / 3)
    start_err = max(abs(nonreal[0] - w.conjugate()), abs(nonreal[1] - w)) if len(nonreal) == 2 else math.inf
    ok = abs(ev.t - 0.282) <= 0.005 and start_err <= 1e-9
    return ok, f"t* = {ev.t:.6f} ({ev.kind} at {ev.point.real:.5f}{ev.point.imag:+.5f}i), start error {start_err:.1e}"


def c12_region() -> tuple[bool, str]:
    cfg = SamplerConfig(grid_step=0.01, random_samples=2000, support_size=8, seed=42, output_path="-")
    pts = sample_region(cfg)
    disk = max(abs(p.z) for p in pts)
    key = lambda z: (round(z.real, 9), round(z.imag, 9))
    cloud = sorted(key(p.z) for p in pts)
    mirrored = sorted(key(p.z.conjugate()) for p in pts)
    # -0.0 vs 0.0 after rounding compares equal, so this is a clean multiset check
    symmetric = cloud == mirrored
    same = points_to_csv(pts) == points_to_csv(sample_region(cfg))
    ok = disk <= 1 + 1e-9 and symmetric and same
    return ok, f"{len(pts)} points, max |z| - 1 = {disk - 1:.1e}, conjugate-symmetric {symmetric}, byte-identical rerun {same}"


def c13_derangements() -> tuple[bool, str]:
    n = len(trace_zero_permutations(5))
    return n == 44, f"{n} fixed-point-free permutations of degree 5"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "class counts at n=5", c01_class_counts),
    (2, "class-count formula at n=3 and n=7", c02_formula_beyond_five),
    (3, "product trace sets", c03_trace_sets),
    (4, "reference pair table", c04_table1),
    (5, "zero-power census", c05_power_census),
    (6, "tr(A^2) < 5 on random samples", c06_trace_square),
    (7, "Newton vs direct coefficients and roots", c07_newton_vs_direct),
    (8, "worked examples and c*", c08_examples),
    (9, "necessary conditions at scale", c09_necessity_at_scale),
    (10, "closed-form pair families", c10_families),
    (11, "boundary transition", c11_boundary),
    (12, "region sanity", c12_region),
    (13, "derangement count", c13_derangements),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # report, never abort the run
                ok, detail = False, f"error: {type(exc).__name__}: {exc}"
            return CriterionResult(num, name, bool(ok), detail, time.perf_counter() - start)
    raise ValueError(f"no criterion {number}")


def run_all() -> list[CriterionResult]:
    return [run_criterion(num) for num, _, _ in CRITERIA]

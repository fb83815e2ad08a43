"""Sampling the eigenvalue region of trace-zero doubly stochastic 5x5 matrices.

The exact region is not known; everything here is empirical.  Points come
from convex combinations ``c P_pi + (1 - c) P_beta`` of the reference
permutation pairs on a grid of ``c``, from random combinations over larger
supports, and from the vertices of the polygons Pi_j^0 (1 together with the
convex hull of the other j-th roots of unity).
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .charpoly import CharPolyCoeffs, coeffs_batch, coeffs_direct, roots
from .dsmat import random_matrices
from .pairgraph import table1_representatives
from .perm import Permutation, fixed_point_count

DISK_TOL = 1e-9
OUTPUT_DIR_ENV = "TRACEZERO_OUTPUT_DIR"


@dataclass(frozen=True)
class RegionPoint:
    re: float
    im: float
    source: str
    parameter: float

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


# -- Pi_j^0 -----------------------------------------------------------------


@dataclass(frozen=True)
class HullPi0:
    j: int
    vertices: tuple[complex, ...]

    @property
    def extreme_points(self) -> tuple[complex, ...]:
        """Roots of unity other than 1, counter-clockwise from angle 2pi/j."""
        return self.vertices[1:]

    def edges(self) -> list[tuple[complex, complex]]:
        pts = self.extreme_points
        if len(pts) < 2:
            return []
        if len(pts) == 2:
            return [(pts[0], pts[1])]
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    def contains(self, z: complex, tol: float = 1e-12) -> bool:
        if abs(z - 1) <= tol:
            return True
        pts = self.extreme_points
        if len(pts) == 1:
            return abs(z - pts[0]) <= tol
        if len(pts) == 2:
            return _segment_distance(z, *pts) <= tol
        return all(_cross(b - a, z - a) >= -tol for a, b in self.edges())


def _cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((z - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def hull_pi0(j: int) -> HullPi0:
    if j < 2:
        raise ValueError(f"j must be at least 2, got {j}")
    others = tuple(cmath.exp(2j * math.pi * m / j) for m in range(1, j))
    # exact real values where they are known
    others = tuple(complex(-1.0, 0.0) if 2 * m == j else z for m, z in enumerate(others, 1))
    return HullPi0(j, (complex(1.0, 0.0),) + others)


# -- pair curves -----------------------------------------------------------


def pair_matrix(pi: Permutation, beta: Permutation, c: float) -> np.ndarray:
    return c * pi.matrix() + (1 - c) * beta.matrix()


def pair_curve(
    pair: tuple[Permutation, Permutation],
    c_grid: Iterable[float],
    source: str = "pair",
) -> list[RegionPoint]:
    """Eigenvalues of ``c P_pi + (1 - c) P_beta`` for every ``c`` in the grid."""
    pi, beta = pair
    for p in pair:
        if p.n != 5 or fixed_point_count(p):
            raise ValueError(f"{p} is not a fixed-point-free permutation of degree 5")
    out = []
    for c in c_grid:
        if not 0 < c < 1:
            raise ValueError(f"grid value {c} outside (0, 1)")
        try:
            zs = roots(coeffs_direct(pair_matrix(pi, beta, c)), assume_root_one=True)
        except ArithmeticError as exc:
            raise ArithmeticError(f"root solver failed at c={c!r}: {exc}") from exc
        out.extend(RegionPoint(z.real, z.imag, source, float(c)) for z in zs)
    return out


# -- the boundary event on A(t) = t P_(12345) + (1 - t) P_(124)(35) -------------


@dataclass(frozen=True)
class BoundaryEvent:
    t: float
    kind: str
    point: complex


class EventNotFound(RuntimeError):
    pass


def _spectrum(pi: Permutation, beta: Permutation, t: float) -> list[complex]:
    return roots(coeffs_direct(pair_matrix(pi, beta, t)), assume_root_one=True)


def _follow(prev: complex, zs: Sequence[complex]) -> complex:
    return min(zs, key=lambda w: abs(w - prev))


def boundary_event(
    pi: Permutation | None = None,
    beta: Permutation | None = None,
    step: float = 1e-4,
    t_tol: float = 1e-6,
    eps: float = 1e-7,
    hull_j: int = 5,
) -> BoundaryEvent:
    """First point where the upper non-real eigenvalue path of
    ``A(t) = t P_pi + (1 - t) P_beta`` terminates as a boundary piece.

    The eigenvalue starting at the top of the spectrum of ``P_beta`` is
    followed by nearest-neighbour continuation.  Three events end the
    path: reaching the real axis, meeting another eigenvalue, or crossing
    an edge of Pi_{hull_j}^0.  The first one is bisected to ``t_tol``.
    """
    pi = pi or Permutation.parse("(1 2 3 4 5)", 5)
    beta = beta or Permutation.parse("(1 2 4)(3 5)", 5)
    hull = hull_pi0(hull_j)
    zs0 = _spectrum(pi, beta, 0.0)
    z = max(zs0, key=lambda w: w.imag)
    if z.imag <= eps:
        raise EventNotFound("no non-real eigenvalue at t=0")

    def state(t: float, prev: complex) -> tuple[complex, dict[str, bool]]:
        zs = _spectrum(pi, beta, t)
        w = _follow(prev, zs)
        rest = list(zs)
        rest.remove(w)
        conj = _follow(w.conjugate(), rest)
        rest.remove(conj)
        flags = {
            "real_axis_collision": abs(w.imag) <= eps,
            "pair_merge": bool(rest) and min(abs(w - v) for v in rest) <= eps,
            "hull_edge_crossing": hull.contains(w, tol=0.0),
        }
        return w, flags

    _, flags0 = state(0.0, z)
    inside0 = flags0["hull_edge_crossing"]
    nsteps = int(round(1.0 / step))
    prev_t, prev_z = 0.0, z
    for i in range(1, nsteps + 1):
        t = min(1.0, i * step)
        w, flags = state(t, prev_z)
        fired = [k for k, v in flags.items() if (v != inside0 if k == "hull_edge_crossing" else v)]
        if fired:
            best = None
            for kind in fired:
                lo, hi, zlo = prev_t, t, prev_z
                while hi - lo > t_tol:
                    mid = 0.5 * (lo + hi)
                    wm, fm = state(mid, zlo)
                    hit = fm[kind] != inside0 if kind == "hull_edge_crossing" else fm[kind]
                    if hit:
                        hi = mid
                    else:
                        lo, zlo = mid, wm
                tm = 0.5 * (lo + hi)
                cand = BoundaryEvent(tm, kind, state(tm, zlo)[0])
                if best is None or cand.t < best.t:
                    best = cand
            return best
        prev_t, prev_z = t, w
    raise EventNotFound("tracked eigenvalue path shows no event in (0, 1)")


def boundary_transition() -> float:
    return boundary_event().t


# -- sampler -------------------------------------------------------------


def default_output_path() -> str:
    return str(Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / "region.csv")


@dataclass
class SamplerConfig:
    """Sampling parameters.

    File form is one ``key = value`` per line; ``#`` starts a comment.
    """

    grid_step: float = 0.01
    random_samples: int = 0
    support_size: int = 5
    seed: int = 0
    output_path: str = ""
    plot: bool = False
    include_pairs: bool = True

    def __post_init__(self):
        if not self.output_path:
            self.output_path = default_output_path()

    def validate(self) -> "SamplerConfig":
        if not 0 < self.grid_step <= 0.1:
            raise ValueError(f"grid_step must lie in (0, 0.1], got {self.grid_step}")
        if self.random_samples < 0:
            raise ValueError("random_samples must be non-negative")
        if not 1 <= self.support_size <= 44:
            raise ValueError(f"support_size must lie in 1..44, got {self.support_size}")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        return self

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            lines.append(f"{f.name} = {repr(v) if isinstance(v, float) else v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_text(cls, text: str) -> dict:
        """Parse the file form into a dict of typed overrides."""
        types = {f.name: f.type for f in fields(cls)}
        out = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in types:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            out[key] = _coerce(types[key], val)
        return out

    @classmethod
    def from_text(cls, text: str) -> "SamplerConfig":
        return cls(**cls.parse_text(text))


def _coerce(typ: str, val: str):
    if typ == "float":
        return float(val)
    if typ == "int":
        return int(val)
    if typ == "bool":
        low = val.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {val!r}")
    return val


def grid(step: float) -> np.ndarray:
    n = int(math.floor(1.0 / step + 1e-9))
    g = np.arange(1, n + 1) * step
    return g[g < 1.0 - 1e-12]


def sample_region(config: SamplerConfig) -> list[RegionPoint]:
    """Deterministic point cloud for a validated config, sorted by source then parameter."""
    config.validate()
    points: list[RegionPoint] = []
    for j in (3, 5):
        for z in hull_pi0(j).vertices:
            points.append(RegionPoint(z.real, z.imag, f"hull:{j}", float(j)))
    if config.include_pairs:
        cs = grid(config.grid_step)
        for idx, pair in enumerate(table1_representatives()):
            points.extend(pair_curve(pair, cs, source=f"pair:{idx:02d}"))
    if config.random_samples:
        rng = np.random.default_rng(config.seed)
        mats = random_matrices(rng, config.random_samples, config.support_size)
        ks = coeffs_batch(mats)
        for i, k in enumerate(ks):
            zs = roots(CharPolyCoeffs.from_sequence(k), assume_root_one=True)
            points.extend(RegionPoint(z.real, z.imag, f"random:{i:08d}", float(config.seed)) for z in zs)
    for p in points:
        if abs(p.z) > 1 + DISK_TOL:
            raise RuntimeError(f"eigenvalue {p.z} from {p.source} outside the unit disk")
    points.sort(key=lambda p: (p.source, p.parameter, p.re, p.im))
    return points


def pair_only_curves(step: float) -> list[RegionPoint]:
    return sample_region(SamplerConfig(grid_step=step, output_path="-"))


# -- envelopes -----------------------------------------------------------


def outer_envelope(points: Iterable[RegionPoint | complex], bins: int = 90) -> np.ndarray:
    """Largest modulus per angular bin on [-pi, pi); empty bins hold NaN."""
    zs = np.array([p.z if isinstance(p, RegionPoint) else complex(p) for p in points])
    env = np.full(bins, np.nan)
    if zs.size == 0:
        return env
    ang = np.angle(zs)
    idx = np.minimum(((ang + np.pi) / (2 * np.pi) * bins).astype(int), bins - 1)
    for b in range(bins):
        sel = idx == b
        if sel.any():
            env[b] = np.abs(zs[sel]).max()
    return env


def compare_envelopes(pair_points, random_points, bins: int = 90, tol: float = 1e-9) -> dict:
    """Where, if anywhere, random samples reach beyond the pair-curve envelope."""
    pe = outer_envelope(pair_points, bins)
    re_ = outer_envelope(random_points, bins)
    both = ~np.isnan(pe) & ~np.isnan(re_)
    excess = np.where(both, re_ - pe, np.nan)
    beyond = both & (excess > tol)
    return {
        "bins": bins,
        "bins_compared": int(both.sum()),
        "bins_random_beyond_pairs": int(beyond.sum()),
        "max_excess": float(np.nanmax(excess)) if both.any() else None,
    }


# -- output --------------------------------------------------------------


CSV_COLUMNS = ("re", "im", "source", "parameter")


def _fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def points_to_csv(points: Iterable[RegionPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in points:
        w.writerow([_fmt(p.re), _fmt(p.im), p.source, _fmt(p.parameter)])
    return buf.getvalue()


def points_from_csv(text: str) -> list[RegionPoint]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [RegionPoint(float(r["re"]), float(r["im"]), r["source"], float(r["parameter"])) for r in rows]


def points_to_json(points: Iterable[RegionPoint]) -> str:
    return json.dumps([asdict(p) for p in points], separators=(",", ":"))

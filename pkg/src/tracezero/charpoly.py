"""Characteristic polynomials of 5x5 matrices and their roots.

Coefficients are stored for ``x^5 + k1 x^4 + k2 x^3 + k3 x^2 + k4 x + k5``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dsmat import trace_powers_batch


class RootFindingError(ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (worst residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class CharPolyCoeffs:
    k1: float
    k2: float
    k3: float
    k4: float
    k5: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.k1, self.k2, self.k3, self.k4, self.k5)

    def monic(self) -> np.ndarray:
        """Full coefficient vector, highest degree first."""
        return np.array((1.0,) + self.as_tuple())

    def __call__(self, x: complex) -> complex:
        acc = 1.0
        for k in self.as_tuple():
            acc = acc * x + k
        return acc

    def norm(self) -> float:
        return math.sqrt(sum(k * k for k in self.as_tuple()))

    def to_json(self) -> list[float]:
        return list(self.as_tuple())

    @classmethod
    def from_sequence(cls, ks: Sequence[float]) -> "CharPolyCoeffs":
        if len(ks) != 5:
            raise ValueError(f"expected 5 coefficients, got {len(ks)}")
        return cls(*(float(k) for k in ks))


def newton_coeffs(traces: Sequence[float]) -> list[float]:
    """Coefficients k1..kn from power sums tr(A), ..., tr(A^n) (Newton's identities)."""
    ks = [1.0]
    for i in range(1, len(traces) + 1):
        s = sum(ks[i - j] * traces[j - 1] for j in range(1, i + 1))
        ks.append(-s / i)
    return ks[1:]


def coeffs_from_traces(t2: float, t3: float, t4: float, t5: float) -> CharPolyCoeffs:
    """Coefficients of a trace-zero 5x5 matrix from tr(A^2)..tr(A^5)."""
    return CharPolyCoeffs.from_sequence(newton_coeffs([0.0, t2, t3, t4, t5]))


def coeffs_direct(M: np.ndarray) -> CharPolyCoeffs:
    """Coefficients of det(xI - M) by the Faddeev-LeVerrier recursion."""
    M = np.asarray(M, dtype=float)
    if M.shape != (5, 5):
        raise ValueError(f"expected a 5x5 matrix, got shape {M.shape}")
    n = 5
    ks = []
    Mk = np.zeros_like(M)
    c = 1.0
    for k in range(1, n + 1):
        Mk = M @ Mk + c * np.eye(n)
        c = -np.trace(M @ Mk) / k
        ks.append(c)
    return CharPolyCoeffs.from_sequence(ks)


def coeffs_batch(A: np.ndarray) -> np.ndarray:
    """Newton coefficients k1..k5 for a stack of 5x5 matrices; shape (count, 5)."""
    t = trace_powers_batch(A, 5)
    k = np.empty_like(t)
    prev = [np.ones(t.shape[:-1])]
    for i in range(1, 6):
        s = sum(prev[i - j] * t[..., j - 1] for j in range(1, i + 1))
        prev.append(-s / i)
        k[..., i - 1] = prev[i]
    return k


# -- roots ---------------------------------------------------------------


def _cubic_roots(a: complex, b: complex, c: complex) -> list[complex]:
    """Roots of m^3 + a m^2 + b m + c by Cardano, in complex arithmetic."""
    p = b - a * a / 3
    q = 2 * a**3 / 27 - a * b / 3 + c
    shift = -a / 3
    if abs(p) < 1e-300 and abs(q) < 1e-300:
        return [shift] * 3
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    u3 = -q / 2 + disc
    if abs(u3) < abs(-q / 2 - disc):
        u3 = -q / 2 - disc
    u = u3 ** (1 / 3) if u3 != 0 else 0
    omega = complex(-0.5, math.sqrt(3) / 2)
    out = []
    for j in range(3):
        uj = u * omega**j
        vj = -p / (3 * uj) if uj != 0 else 0
        out.append(uj + vj + shift)
    return out


def quartic_roots(b1: float, b2: float, b3: float, b4: float) -> list[complex]:
    """Roots of x^4 + b1 x^3 + b2 x^2 + b3 x + b4 by Ferrari's resolvent cubic."""
    shift = -b1 / 4
    p = b2 - 3 * b1 * b1 / 8
    q = b3 - b1 * b2 / 2 + b1**3 / 8
    r = b4 - b1 * b3 / 4 + b1 * b1 * b2 / 16 - 3 * b1**4 / 256
    scale = max(1.0, abs(p), abs(q), abs(r))
    if abs(q) <= 1e-14 * scale:
        # biquadratic in y
        d = cmath.sqrt(p * p - 4 * r)
        ys = []
        for y2 in ((-p + d) / 2, (-p - d) / 2):
            s = cmath.sqrt(y2)
            ys += [s, -s]
        return [y + shift for y in ys]
    # y^4 + p y^2 + q y + r = (y^2 + p/2 + m)^2 - (2m y^2 - q y + m^2 + m p + p^2/4 - r)
    # and the bracket is a square when 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
    ms = _cubic_roots(p, (p * p - 4 * r) / 4, -q * q / 8)
    m = max(ms, key=abs)
    s = cmath.sqrt(2 * m)
    t = q / (2 * s)
    ys = []
    for sign in (1, -1):
        # y^2 - sign*s*y + (p/2 + m + sign*t) = 0
        bb = -sign * s
        cc = p / 2 + m + sign * t
        d = cmath.sqrt(bb * bb - 4 * cc)
        ys += [(-bb + d) / 2, (-bb - d) / 2]
    return [y + shift for y in ys]


def _deflate(coeffs: Sequence[float], root: float) -> list[float]:
    """Synthetic division of a monic polynomial by (x - root); drops the remainder."""
    out = [1.0]
    for k in coeffs[1:-1]:
        out.append(k + root * out[-1])
    return out


def _real_root(poly: np.ndarray) -> float:
    """A real root of an odd-degree monic polynomial by bisection."""
    bound = 1.0 + max(abs(float(c)) for c in poly[1:])
    lo, hi = -bound, bound
    f = lambda x: np.polyval(poly, x)
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or hi - lo <= 1e-15 * max(1.0, abs(mid)):
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _polish(poly: np.ndarray, z: complex) -> complex:
    dpoly = np.polyder(poly)
    fz = np.polyval(poly, z)
    dz = np.polyval(dpoly, z)
    if dz == 0:
        return z
    w = z - fz / dz
    return w if abs(np.polyval(poly, w)) < abs(fz) else z


def _pair_conjugates(zs: list[complex]) -> list[complex]:
    """Make the root multiset exactly closed under conjugation."""
    real, upper, lower = [], [], []
    for z in zs:
        if abs(z.imag) <= 1e-14 * max(1.0, abs(z)):
            real.append(complex(z.real, 0.0))
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    while len(upper) != len(lower):
        big = upper if len(upper) > len(lower) else lower
        z = min(big, key=lambda w: abs(w.imag))
        big.remove(z)
        real.append(complex(z.real, 0.0))
    out = list(real)
    for z in sorted(upper, key=lambda w: (w.real, w.imag)):
        w = min(lower, key=lambda v: abs(v - z.conjugate()))
        lower.remove(w)
        mid = 0.5 * (z + w.conjugate())
        out += [mid, mid.conjugate()]
    return out


def roots(c: CharPolyCoeffs, assume_root_one: bool = False) -> list[complex]:
    """The five roots, sorted by (real, imag).

    With ``assume_root_one`` the constant term is reset to
    ``-(1 + k1 + k2 + k3 + k4)`` so that 1 is an exact root before deflation.
    Otherwise a real root is located by bisection.  The remaining quartic
    is solved in closed form and every root gets one Newton step against
    the quintic.
    """
    ks = c.as_tuple()
    if not all(math.isfinite(k) for k in ks):
        raise ValueError("coefficients must be finite")
    if assume_root_one:
        ks = ks[:4] + (-(1.0 + sum(ks[:4])),)
        first = 1.0
    else:
        first = _real_root(np.array((1.0,) + ks))
    full = [1.0, *ks]
    quartic = _deflate(full, first)
    zs = [complex(first)] + quartic_roots(*quartic[1:])
    poly = np.array(full)
    zs = [zs[0]] + [_polish(poly, z) for z in zs[1:]]
    zs = _pair_conjugates([complex(z) for z in zs])
    tol = 1e-8 * max(1.0, CharPolyCoeffs.from_sequence(ks).norm())
    worst = max(abs(np.polyval(poly, z)) for z in zs)
    if not worst <= tol:
        raise RootFindingError("root residual target not met", worst)
    return sorted(zs, key=lambda z: (z.real, z.imag))

"""Static SVG rendering of a region point cloud, written by hand so the bytes
depend only on the input points."""

from __future__ import annotations

from typing import Iterable

from .region import RegionPoint, hull_pi0

SIZE = 600
MARGIN = 30
SCALE = (SIZE - 2 * MARGIN) / 2.2

COLORS = {"pair": "#1f77b4", "random": "#bbbbbb", "hull": "#d62728"}


def _xy(z: complex) -> tuple[float, float]:
    return SIZE / 2 + SCALE * z.real, SIZE / 2 - SCALE * z.imag


def _family(source: str) -> str:
    return source.split(":", 1)[0]


def render_svg(points: Iterable[RegionPoint]) -> str:
    points = list(points)
    cx, cy = _xy(0j)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{cy:.1f}" x2="{SIZE - MARGIN}" y2="{cy:.1f}" stroke="#999" stroke-width="0.5"/>',
        f'<line x1="{cx:.1f}" y1="{MARGIN}" x2="{cx:.1f}" y2="{SIZE - MARGIN}" stroke="#999" stroke-width="0.5"/>',
        f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{SCALE:.1f}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for j, dash in ((5, "6,3"), (3, "2,2")):
        pts = hull_pi0(j).extreme_points
        coords = " ".join("{:.2f},{:.2f}".format(*_xy(z)) for z in pts)
        tag = "polygon" if len(pts) > 2 else "polyline"
        out.append(f'<{tag} points="{coords}" fill="none" stroke="#d62728" stroke-dasharray="{dash}" stroke-width="1"/>')

    # one dot per pixel cell and colour keeps the file small for dense clouds
    seen: set[tuple[str, int, int]] = set()
    for order in ("random", "pair", "hull"):
        for p in points:
            fam = _family(p.source)
            if fam != order:
                continue
            x, y = _xy(p.z)
            cell = (fam, round(x * 2), round(y * 2))
            if cell in seen:
                continue
            seen.add(cell)
            r = 2.5 if fam == "hull" else 0.7
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{COLORS.get(fam, "black")}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

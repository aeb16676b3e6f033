"""Poincare-disk pictures of triangulations as standalone SVG.

Geodesics between boundary points are circular arcs orthogonal to the unit
circle (straight lines through the centre for antipodal endpoints).  The
arc endpoints are exact dyadics, the orthogonal-circle construction is the
standard one, and coordinates are printed with a fixed six-decimal format,
so output is byte-identical across runs.
"""
from __future__ import annotations

import math

from .dyadic import HALF, Arc, CirclePoint
from .triangulation import RegionLike, Triangulation, arcs_in_region, as_region


def _xy(p: CirclePoint, cx: float, cy: float, r: float) -> tuple[float, float]:
    t = 2.0 * math.pi * float(p.value)
    return (cx + r * math.cos(t), cy - r * math.sin(t))


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _geodesic(p: CirclePoint, q: CirclePoint, cx: float, cy: float, r: float) -> str:
    x1, y1 = _xy(p, cx, cy, r)
    x2, y2 = _xy(q, cx, cy, r)
    if q.value - p.value == HALF:
        return (
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    t1 = 2.0 * math.pi * float(p.value)
    t2 = 2.0 * math.pi * float(q.value)
    ux, uy = math.cos(t1), math.sin(t1)
    vx, vy = math.cos(t2), math.sin(t2)
    dot = ux * vx + uy * vy
    ccx, ccy = (ux + vx) / (1.0 + dot), (uy + vy) / (1.0 + dot)
    rad = math.sqrt(ccx * ccx + ccy * ccy - 1.0)
    norm = math.hypot(ccx, ccy)
    mx, my = ccx * (1.0 - rad / norm), ccy * (1.0 - rad / norm)
    sx, sy = cx + r * mx, cy - r * my
    cross = (sx - x1) * (y2 - sy) - (sy - y1) * (x2 - sx)
    sweep = 1 if cross > 0 else 0
    rr = _fmt(r * rad)
    return (
        f'<path d="M {_fmt(x1)} {_fmt(y1)} A {rr} {rr} 0 0 {sweep} '
        f'{_fmt(x2)} {_fmt(y2)}" fill="none"/>'
    )


def render_svg(
    v: Triangulation,
    region: RegionLike,
    size: int = 640,
    labels: bool = True,
) -> str:
    """Render the arcs of a vertex inside a region as an SVG document."""
    polys = as_region(region)
    cx = cy = size / 2.0
    disk_r = size * 0.42
    arcs: list[Arc] = []
    for poly in polys:
        arcs.extend(poly.sides())
    arcs.extend(arcs_in_region(v, polys))
    arcs = sorted(set(arcs), key=Arc.sort_key)
    points = sorted({pt for poly in polys for pt in poly.vertices})

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(disk_r)}" '
        'fill="none" stroke="black" stroke-width="1.5"/>',
        '<g stroke="black" stroke-width="1">',
    ]
    for arc in arcs:
        lines.append(_geodesic(arc.p, arc.q, cx, cy, disk_r))
    lines.append("</g>")
    if labels:
        lines.append('<g font-family="serif" font-size="13" text-anchor="middle">')
        for pt in points:
            lx, ly = _xy(pt, cx, cy, disk_r * 1.09)
            lines.append(
                f'<text x="{_fmt(lx)}" y="{_fmt(ly + 4.0)}">{pt}</text>'
            )
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

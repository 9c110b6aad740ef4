"""SVG 1.1 rendering of point sets, spanner edges, cone wedges and witness paths.

Drawing happens in point coordinates inside a group flipped by
``scale(1,-1)`` so the y-axis points up, as in the usual mathematical figures.
"""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

from .geometry import ConeScheme, PointSet
from .spanners import GeoGraph


def _num(v: float) -> str:
    return f"{v:.6g}"


def render_svg(
    points: PointSet,
    graph: GeoGraph | None = None,
    *,
    witness: Sequence[int] = (),
    cones_at: int | None = None,
    k: int | None = None,
    size: float = 600.0,
    title: str | None = None,
) -> str:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    extent = max(xmax - xmin, ymax - ymin) or 1.0
    pad = 0.08 * extent
    scale = size / (extent + 2 * pad)
    radius = 0.008 * extent
    stroke = 0.003 * extent
    width = (xmax - xmin + 2 * pad) * scale
    height = (ymax - ymin + 2 * pad) * scale
    # maps (x, y) to (x * scale + tx, -y * scale + ty)
    tx = (pad - xmin) * scale
    ty = (ymax + pad) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<g transform="translate({_num(tx)},{_num(ty)}) scale({_num(scale)},{_num(-scale)})">')

    if cones_at is not None:
        if k is None:
            k = graph.k if graph is not None else None
        if k is None:
            raise ValueError("cone wedges need k")
        if not 0 <= cones_at < len(points):
            raise ValueError(f"no vertex {cones_at}")
        scheme = ConeScheme(k)
        apex = points[cones_at]
        reach = 0.35 * extent
        out.append('<g class="cones" fill-opacity="0.12" stroke="#888888" stroke-width="' + _num(stroke / 2) + '">')
        for i in range(k):
            lo, hi = scheme.boundaries(i)
            x0, y0 = apex.x + reach * math.cos(lo), apex.y + reach * math.sin(lo)
            x1, y1 = apex.x + reach * math.cos(hi), apex.y + reach * math.sin(hi)
            fill = "#4477aa" if i % 2 == 0 else "#66ccee"
            out.append(
                f'<path class="cone" data-cone="{i}" fill="{fill}" d="M {_num(apex.x)} {_num(apex.y)} '
                f'L {_num(x0)} {_num(y0)} A {_num(reach)} {_num(reach)} 0 0 1 {_num(x1)} {_num(y1)} Z"/>'
            )
        out.append("</g>")

    if graph is not None:
        out.append(f'<g class="edges" stroke="#333333" stroke-width="{_num(stroke)}">')
        for e in graph.edges:
            a, b = points[e.source], points[e.target]
            out.append(
                f'<line x1="{_num(a.x)}" y1="{_num(a.y)}" x2="{_num(b.x)}" y2="{_num(b.y)}" data-cone="{e.cone}"/>'
            )
        out.append("</g>")

    if len(witness) >= 2:
        pts = " ".join(f"{_num(points[i].x)},{_num(points[i].y)}" for i in witness)
        out.append(
            f'<polyline class="witness" fill="none" stroke="#cc3311" stroke-width="{_num(3 * stroke)}" points="{pts}"/>'
        )

    out.append('<g class="points" fill="#000000">')
    for p in points:
        out.append(f'<circle cx="{_num(p.x)}" cy="{_num(p.y)}" r="{_num(radius)}" data-id="{p.id}"/>')
    out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

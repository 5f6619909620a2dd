"""SVG drawings of rank-2 fans next to a dual polygon."""

from __future__ import annotations

import math
from fractions import Fraction

from .geometry import Fan, FanError
from .io import label_to_str

_COLORS = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5")


def _unit(v) -> tuple[float, float]:
    x, y = float(v[0]), float(v[1])
    r = math.hypot(x, y)
    return x / r, y / r


def dual_vertices(fan: Fan) -> list[tuple[Fraction, Fraction]]:
    """One vertex per maximal cone of {x : <x, u> >= -1 for every ray u}, in cyclic order."""
    verts = []
    for c in fan.max_cones:
        (a, b), (p, q) = fan.rays[c[0]], fan.rays[c[1]]
        det = a * q - b * p
        # solve a x + b y = -1, p x + q y = -1
        x = Fraction(-q + b, det)
        y = Fraction(-a + p, det)
        ua, ub = _unit(fan.rays[c[0]]), _unit(fan.rays[c[1]])
        verts.append((math.atan2(ua[1] + ub[1], ua[0] + ub[0]), (x, y)))
    verts.sort(key=lambda t: t[0])
    return [v for _, v in verts]


def render_svg(fan: Fan, title: str = "") -> str:
    """Rays as labelled arrows over shaded sectors, the dual polygon on the right."""
    if fan.rank != 2:
        raise FanError("render supports rank-2 fans only")
    if any(len(c) != 2 for c in fan.max_cones):
        raise FanError("render needs a complete rank-2 fan")
    size, radius = 320, 120
    cx, cy = size / 2, size / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * size}" height="{size}" '
        f'viewBox="0 0 {2 * size} {size}">',
        "<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>",
    ]
    if title:
        out.append(f'<title>{title}</title>')

    def pt(v, r=radius, ox=cx, oy=cy):
        ux, uy = _unit(v)
        return ox + r * ux, oy - r * uy

    out.append('<g class="sectors">')
    for k, c in enumerate(sorted(fan.max_cones)):
        (x1, y1), (x2, y2) = pt(fan.rays[c[0]]), pt(fan.rays[c[1]])
        color = _COLORS[k % len(_COLORS)]
        out.append(
            f'<path d="M {cx:.3f} {cy:.3f} L {x1:.3f} {y1:.3f} L {x2:.3f} {y2:.3f} Z" '
            f'fill="{color}" fill-opacity="0.6" stroke="none"/>'
        )
    out.append("</g>")
    out.append('<g class="rays" stroke="black" stroke-width="1.5">')
    for i, r in enumerate(fan.rays):
        x, y = pt(r)
        out.append(f'<line x1="{cx:.3f}" y1="{cy:.3f}" x2="{x:.3f}" y2="{y:.3f}" marker-end="url(#tip)"/>')
    out.append("</g>")
    out.append('<g class="labels" font-family="sans-serif" font-size="12" text-anchor="middle">')
    for i, r in enumerate(fan.rays):
        text = label_to_str(fan.labels[i]) if fan.labels is not None else ""
        text = text or str(list(r))
        x, y = pt(r, radius + 18)
        out.append(f'<text x="{x:.3f}" y="{y + 4:.3f}">{text}</text>')
    out.append("</g>")

    verts = dual_vertices(fan)
    scale = 0.8 * radius / max(max(abs(float(x)), abs(float(y))) for x, y in verts)
    ox = size + size / 2
    pts = " ".join(f"{ox + scale * float(x):.3f},{cy - scale * float(y):.3f}" for x, y in verts)
    out.append(f'<polygon class="dual" points="{pts}" fill="#dddddd" stroke="black" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

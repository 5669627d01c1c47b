"""Static SVG rendering of (p, q) charts.

Deliberately dumb: one dot per class at (stem, weight) = (p - q, q),
vertical segments where multiplication by the deformation parameter can
act (consecutive weights in one stem), fixed layout, no interactivity.
"""

from __future__ import annotations

from typing import List
from xml.sax.saxutils import escape

from .charts import Chart

CELL = 28
MARGIN = 46
DOT = 3.4


def render_svg(chart: Chart, title: str = "isotropic chart") -> str:
    if chart.gradings != ("p", "q"):
        raise ValueError("SVG rendering expects a (p, q) chart")
    points = {}
    for (p, q), dim, _labels in chart.items():
        points[(p - q, q)] = dim
    if points:
        stems = [s for s, _ in points]
        weights = [w for _, w in points]
        min_s, max_s = min(stems + [0]), max(stems + [0])
        min_w, max_w = min(weights + [0]), max(weights + [0])
    else:
        min_s = max_s = min_w = max_w = 0
    width = MARGIN * 2 + (max_s - min_s + 1) * CELL
    height = MARGIN * 2 + (max_w - min_w + 1) * CELL

    def x_of(stem: int) -> float:
        return MARGIN + (stem - min_s + 0.5) * CELL

    def y_of(weight: int) -> float:
        return height - MARGIN - (weight - min_w + 0.5) * CELL

    out: List[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    # axes ticks
    for stem in range(min_s, max_s + 1):
        out.append(
            f'<text x="{x_of(stem):.1f}" y="{height - MARGIN + 16}" font-size="9" '
            f'text-anchor="middle" fill="#555">{stem}</text>'
        )
    for weight in range(min_w, max_w + 1):
        out.append(
            f'<text x="{MARGIN - 10}" y="{y_of(weight) + 3:.1f}" font-size="9" '
            f'text-anchor="end" fill="#555">{weight}</text>'
        )
    out.append(
        f'<text x="{width / 2:.1f}" y="{height - 8}" font-size="10" '
        f'text-anchor="middle" fill="#333">stem p - q</text>'
    )
    out.append(
        f'<text x="12" y="{height / 2:.1f}" font-size="10" text-anchor="middle" '
        f'fill="#333" transform="rotate(-90 12 {height / 2:.1f})">weight q</text>'
    )
    # parameter-multiplication lines: vertical segments between adjacent weights
    for (stem, weight), _dim in sorted(points.items()):
        if (stem, weight - 1) in points:
            out.append(
                f'<line x1="{x_of(stem):.1f}" y1="{y_of(weight):.1f}" '
                f'x2="{x_of(stem):.1f}" y2="{y_of(weight - 1):.1f}" '
                f'stroke="#888" stroke-width="1"/>'
            )
    for (stem, weight), dim in sorted(points.items()):
        # several classes in one bidegree fan out horizontally
        for k in range(dim):
            dx = (k - (dim - 1) / 2) * (DOT * 2.4)
            out.append(
                f'<circle cx="{x_of(stem) + dx:.1f}" cy="{y_of(weight):.1f}" '
                f'r="{DOT}" fill="#102a6d"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["render_svg"]

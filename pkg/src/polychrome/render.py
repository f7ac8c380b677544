"""SVG rendering of an instance, its coloring and one highlighted homothet.

Coordinates are converted to float for drawing only; the exact values of
the highlighted homothet are recorded in an SVG comment.
"""

from __future__ import annotations

from typing import Sequence

from .geometry import AffineMap, Homothet, Point, Triangle, format_scalar

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _polygon(pts, **style) -> str:
    coords = " ".join(f"{x:.6g},{y:.6g}" for x, y in pts)
    attrs = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in style.items())
    return f'<polygon points="{coords}" {attrs}/>'


def render_svg(points: Sequence[Point], triangle: Triangle, colors: Sequence[int] | None = None,
               highlight: Homothet | None = None, to_world: AffineMap | None = None,
               size: int = 600) -> str:
    """``highlight`` is in canonical coordinates; ``to_world`` maps it back."""
    world = list(points)
    extent = world + list(triangle.vertices)
    hl = None
    if highlight is not None:
        hl = [to_world(v) if to_world else v for v in highlight.vertices()]
        extent += hl
    xs = [float(p.x) for p in extent]
    ys = [float(p.y) for p in extent]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def tr(p: Point) -> tuple[float, float]:
        # y axis points up in the plane, down in SVG
        return ((float(p.x) - lo_x + pad) * scale, (hi_y - float(p.y) + pad) * scale)

    r = max(1.5, size / 150)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>',
           _polygon([tr(v) for v in triangle.vertices], fill="none", stroke="#999999",
                    stroke_dasharray="4,3")]
    if hl is not None:
        exact = " ".join(f"{format_scalar(v.x)},{format_scalar(v.y)}" for v in hl)
        out.append(f"<!-- highlighted homothet a={format_scalar(highlight.a)} "
                   f"b={format_scalar(highlight.b)} s={format_scalar(highlight.s)}; "
                   f"world vertices {exact} -->")
        out.append(_polygon([tr(v) for v in hl], fill="#ffdd57", fill_opacity="0.35",
                            stroke="#c49a00"))
    for i, p in enumerate(world):
        x, y = tr(p)
        fill = PALETTE[colors[i] % len(PALETTE)] if colors is not None else "#000000"
        out.append(f'<circle cx="{x:.6g}" cy="{y:.6g}" r="{r:.3g}" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

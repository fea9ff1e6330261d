"""Dependency-free SVG rendering of n-generation pictures.

One shape element per length-n word: rectangles for 1D systems (intervals
drawn as a band) and for axis-aligned 2D systems, polygons when rotations are
in play.  The output is plain XML, diffable and countable in tests.
"""

from __future__ import annotations

from .ifs import IteratedFunctionSystem, generation_geometry

_CANVAS = 640.0
_BAND_FRACTION = 0.12  # height of the 1D band relative to its width
_FILL = "#31557a"


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


def _is_axis_rect(corners) -> bool:
    xs = {round(float(c[0]), 12) for c in corners}
    ys = {round(float(c[1]), 12) for c in corners}
    return len(xs) == 2 and len(ys) == 2


def render_generation_svg(ifs: IteratedFunctionSystem, depth: int, seed_box=None) -> str:
    if seed_box is None:
        seed_box = [(0.0, 1.0)] * ifs.ambient_dim
    d = ifs.ambient_dim
    if d not in (1, 2):
        raise ValueError("SVG rendering supports 1D and 2D systems only")
    pieces = generation_geometry(ifs, depth, seed_box)

    x0, x1 = (float(seed_box[0][0]), float(seed_box[0][1]))
    scale = _CANVAS / (x1 - x0)
    if d == 1:
        canvas_h = _CANVAS * _BAND_FRACTION
    else:
        y0, y1 = (float(seed_box[1][0]), float(seed_box[1][1]))
        canvas_h = (y1 - y0) * scale

    shapes = []
    for _, corners in pieces:
        if d == 1:
            lo, hi = float(corners[0][0]), float(corners[1][0])
            shapes.append(
                f'<rect x="{_fmt((lo - x0) * scale)}" y="0" '
                f'width="{_fmt((hi - lo) * scale)}" height="{_fmt(canvas_h)}" '
                f'fill="{_FILL}"/>'
            )
            continue
        pts = [((float(cx) - x0) * scale, (y1 - float(cy)) * scale) for cx, cy in corners]
        if _is_axis_rect(corners):
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            shapes.append(
                f'<rect x="{_fmt(min(xs))}" y="{_fmt(min(ys))}" '
                f'width="{_fmt(max(xs) - min(xs))}" height="{_fmt(max(ys) - min(ys))}" '
                f'fill="{_FILL}"/>'
            )
        else:
            points = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
            shapes.append(f'<polygon points="{points}" fill="{_FILL}"/>')
    body = "\n  ".join(shapes)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_CANVAS)}" '
        f'height="{_fmt(canvas_h)}" viewBox="0 0 {_fmt(_CANVAS)} {_fmt(canvas_h)}">\n'
        f"  {body}\n</svg>\n"
    )


def write_generation_svg(ifs, depth, path, seed_box=None) -> None:
    svg = render_generation_svg(ifs, depth, seed_box)
    with open(path, "w") as fh:
        fh.write(svg)

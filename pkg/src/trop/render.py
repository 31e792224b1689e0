"""Deterministic SVG rendering of algebraic and layered sets.

All geometry is clipped exactly to the rational viewport before emission;
coordinates are printed through one exact fixed-precision formatter, so a
given input always produces byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ArityError
from .geom import (
    PointCell,
    RegionCell,
    SegCell,
    box_polygon,
    clip_cell_to_box,
)
from .layered import LayeredAlgebraicSet
from .loci import AlgebraicSet
from .values import format_layer

PALETTE = ("#000000", "#cc2222", "#2244cc", "#118844", "#886600")


@dataclass(frozen=True)
class RenderSpec:
    xmin: Fraction = Fraction(-5)
    xmax: Fraction = Fraction(5)
    ymin: Fraction = Fraction(-5)
    ymax: Fraction = Fraction(5)
    scale: int = 40
    grid: bool = True
    fill: str = "#cccccc"

    @staticmethod
    def of(viewport: Optional[Sequence] = None) -> "RenderSpec":
        if viewport is None:
            return RenderSpec()
        a, b, c, d = (Fraction(v) for v in viewport)
        return RenderSpec(a, b, c, d)


def _fmt(q: Fraction) -> str:
    """Exact fixed-point decimal with up to 4 places, half-even ties."""
    scaled = q * 10000
    n, d = scaled.numerator, scaled.denominator
    whole, rem = divmod(n, d)
    if rem * 2 > d or (rem * 2 == d and whole % 2 == 1):
        whole += 1
    sign = "-" if whole < 0 else ""
    whole = abs(whole)
    ip, fp = divmod(whole, 10000)
    if fp == 0:
        return f"{sign}{ip}"
    frac = f"{fp:04d}".rstrip("0")
    return f"{sign}{ip}.{frac}"


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.width = (spec.xmax - spec.xmin) * spec.scale
        self.height = (spec.ymax - spec.ymin) * spec.scale

    def to_px(self, p: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        s = self.spec
        return (
            (Fraction(p[0]) - s.xmin) * s.scale,
            (s.ymax - Fraction(p[1])) * s.scale,
        )

    def pt(self, p) -> str:
        x, y = self.to_px(p)
        return f"{_fmt(x)},{_fmt(y)}"


def render_svg(
    sets: Sequence[Union[AlgebraicSet, LayeredAlgebraicSet, tuple]],
    spec: Optional[RenderSpec] = None,
) -> str:
    """Render sets to a standalone SVG document.

    Each entry is an AlgebraicSet or LayeredAlgebraicSet, optionally a
    (set, stroke-color) tuple.  Layered sets get their layer values as
    labels.
    """
    spec = spec or RenderSpec()
    cv = _Canvas(spec)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(cv.width)}" '
        f'height="{_fmt(cv.height)}" '
        f'viewBox="0 0 {_fmt(cv.width)} {_fmt(cv.height)}">',
    ]
    if spec.grid:
        parts.append(_grid(cv))
    for i, entry in enumerate(sets):
        if isinstance(entry, tuple):
            item, stroke = entry
        else:
            item, stroke = entry, PALETTE[i % len(PALETTE)]
        parts.append(_render_item(cv, i, item, stroke))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _grid(cv: _Canvas) -> str:
    s = cv.spec
    lines = ['<g id="grid" stroke="#dddddd" stroke-width="1">']
    x = s.xmin.__ceil__()
    while x <= s.xmax:
        px = _fmt((x - s.xmin) * s.scale)
        w = "#bbbbbb" if x == 0 else "#dddddd"
        lines.append(
            f'<line x1="{px}" y1="0" x2="{px}" y2="{_fmt(cv.height)}" stroke="{w}"/>'
        )
        x += 1
    y = s.ymin.__ceil__()
    while y <= s.ymax:
        py = _fmt((s.ymax - y) * s.scale)
        w = "#bbbbbb" if y == 0 else "#dddddd"
        lines.append(
            f'<line x1="0" y1="{py}" x2="{_fmt(cv.width)}" y2="{py}" stroke="{w}"/>'
        )
        y += 1
    lines.append("</g>")
    return "\n".join(lines)


def _render_item(cv: _Canvas, idx: int, item, stroke: str) -> str:
    if isinstance(item, LayeredAlgebraicSet):
        complex_ = item.complex
        layers = item.layers
    elif isinstance(item, AlgebraicSet):
        if item.arity != 2:
            raise ArityError("rendering needs arity 2")
        complex_ = item.complex
        layers = None
    else:
        raise TypeError(f"cannot render {type(item).__name__}")
    if complex_.arity != 2:
        raise ArityError("rendering needs arity 2")
    s = cv.spec
    out = [f'<g id="set{idx}" stroke="{stroke}" stroke-width="2.5" fill="none">']
    labels = []
    for ci, cell in enumerate(complex_.cells):
        if isinstance(cell, RegionCell):
            poly = box_polygon(cell.constraints, s.xmin, s.xmax, s.ymin, s.ymax)
            if len(poly) >= 3:
                d = "M " + " L ".join(cv.pt(p) for p in poly) + " Z"
                out.append(
                    f'<path d="{d}" fill="{s.fill}" fill-opacity="0.6" stroke="none"/>'
                )
        elif cell.dim == 1:
            clipped = clip_cell_to_box(cell, s.xmin, s.xmax, s.ymin, s.ymax)
            if clipped is None:
                continue
            if isinstance(clipped, SegCell):
                out.append(
                    f'<path d="M {cv.pt(clipped.a)} L {cv.pt(clipped.b)}"/>'
                )
            elif isinstance(clipped, PointCell):
                pass  # grazes the box in one point; the vertex pass covers it
        elif isinstance(cell, PointCell):
            if _inside_box(cell.p, s):
                x, y = cv.to_px(cell.p)
                out.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" '
                    f'fill="{stroke}" stroke="none"/>'
                )
        if layers is not None and _inside_box(cell.sample(), s):
            x, y = cv.to_px(cell.sample())
            labels.append(
                f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" font-size="13" '
                f'font-family="sans-serif" fill="{stroke}" stroke="none">'
                f"{format_layer(layers[ci])}</text>"
            )
    out.extend(labels)
    out.append("</g>")
    return "\n".join(out)


def _inside_box(p, s: RenderSpec) -> bool:
    return s.xmin <= p[0] <= s.xmax and s.ymin <= p[1] <= s.ymax

"""Stock plane-curve configurations used in the documentation and tests.

Each configuration is a list of (set, stroke) pairs ready for render_svg:
a line and a conic with their intersection highlighted, the square curve
with a ray at each vertex, its filled total-locus variant, the cubic whose
rays continue inside the square, and the two decompositions of one
reducible curve.
"""

from __future__ import annotations

from .grammar import parse_poly
from .loci import AlgebraicSet, corner_locus, total_locus


def _p(text: str) -> "TropicalPolynomial":
    return parse_poly(text, 2)


def line_conic_with_intersection() -> list[tuple[AlgebraicSet, str]]:
    line = corner_locus(_p("x1 + 1*x2 + 1"))
    conic = corner_locus(_p("x1*x2 + x1 + 0"))
    both = line.intersect(conic)
    return [(line, "#000000"), (conic, "#cc2222"), (both, "#2244cc")]


def square_with_rays() -> list[tuple[AlgebraicSet, str]]:
    return [(corner_locus(_p("x1^2*x2^2 + x1^2 + x2^2 + 0 + 1*x1*x2")), "#000000")]


def filled_square_with_rays() -> list[tuple[AlgebraicSet, str]]:
    return [(total_locus(_p("x1^2*x2^2 + x1^2 + x2^2 + 0 + 1v*x1*x2")), "#000000")]


def square_with_inner_rays() -> list[tuple[AlgebraicSet, str]]:
    f = _p("x1^2*x2^2 + x1^2 + x2^2 + 0 + 1*x1*x2") * _p("x1*x2 + x1 + x2 + 0")
    return [(corner_locus(f), "#000000")]


def line_and_conic_decomposition() -> list[tuple[AlgebraicSet, str]]:
    line = corner_locus(_p("x1 + x2 + 0"))
    conic = corner_locus(_p("x1*x2 + x1 + x2"))
    return [(line, "#000000"), (conic, "#cc2222")]


def three_lines_decomposition() -> list[tuple[AlgebraicSet, str]]:
    return [
        (corner_locus(_p("x1 + x2")), "#000000"),
        (corner_locus(_p("x1 + 0")), "#cc2222"),
        (corner_locus(_p("x2 + 0")), "#2244cc"),
    ]


FIGURES = {
    "line-conic": line_conic_with_intersection,
    "square": square_with_rays,
    "filled-square": filled_square_with_rays,
    "square-inner-rays": square_with_inner_rays,
    "line-conic-union": line_and_conic_decomposition,
    "three-lines": three_lines_decomposition,
}

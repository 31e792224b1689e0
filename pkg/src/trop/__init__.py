"""Exact supertropical and layered tropical algebra over the rationals."""

from .values import (
    LAYER_INF,
    LayeredValue,
    SupertropicalValue,
    lay,
    lay_add,
    lay_mul,
    layered_of_supertropical,
    nu,
    st,
    st_add,
    st_mul,
    supertropical_of_layered,
    tangible_lift,
)
from .poly import (
    Classification,
    Context,
    LayeredPolynomial,
    Monomial,
    Point,
    TropicalPolynomial,
    eval_on_segment,
    poly,
    segment_point,
)
from .grammar import (
    format_point,
    format_poly,
    format_value,
    parse_layered_poly,
    parse_point,
    parse_poly,
    parse_supertropical,
    parse_value,
)

__all__ = [
    "LAYER_INF",
    "LayeredValue",
    "SupertropicalValue",
    "lay",
    "lay_add",
    "lay_mul",
    "layered_of_supertropical",
    "nu",
    "st",
    "st_add",
    "st_mul",
    "supertropical_of_layered",
    "tangible_lift",
    "Classification",
    "Context",
    "LayeredPolynomial",
    "Monomial",
    "Point",
    "TropicalPolynomial",
    "eval_on_segment",
    "poly",
    "segment_point",
    "format_point",
    "format_poly",
    "format_value",
    "parse_layered_poly",
    "parse_point",
    "parse_poly",
    "parse_supertropical",
    "parse_value",
]

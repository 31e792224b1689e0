from fractions import Fraction

import pytest

from trop.errors import ParseError
from trop.grammar import (
    format_point,
    format_poly,
    parse_layered_poly,
    parse_point,
    parse_poly,
    parse_value,
)
from trop.poly import Context
from trop.values import LAYER_INF, lay, st


def test_value_literals():
    assert parse_value("3/2") == st(Fraction(3, 2))
    assert parse_value("3/2v") == st(Fraction(3, 2), True)
    assert parse_value("-5") == st(-5)
    assert parse_value("7@3") == lay(7, 3)
    assert parse_value("0@inf") == lay(0, LAYER_INF)


def test_value_errors():
    for bad in ("", "x", "1.5", "3v@2", "@2"):
        with pytest.raises(ParseError):
            parse_value(bad)


def test_point_round_trip():
    p = parse_point("3,4v")
    assert [str(c) for c in p.coords] == ["3", "4v"]
    assert parse_point(format_point(p)).coords == p.coords


def test_poly_examples():
    f = parse_poly("x1 + 1*x2 + 1")
    assert len(f.terms) == 3 and f.arity == 2
    g = parse_poly("x^2 + 3*x + 6")
    assert g.arity == 1
    h = parse_poly("1v*x1*x2 + 0")
    cross = h.terms[0]
    assert cross.exps == (1, 1) and cross.coeff == st(1, True)


def test_poly_round_trip_is_identity_on_canonical_forms():
    texts = [
        "x^2 + 3*x + 6",
        "x1 + 1*x2 + 1",
        "2*x1^2 + 2*x2^2 + 0",
        "x1^2*x2^2 + x1^2 + x2^2 + 0 + 1v*x1*x2",
        "x^-2 + 0",
        "x^1/2 + -3/2",
        "-1*x1^3 + 1/2",
    ]
    for text in texts:
        f = parse_poly(text)
        assert parse_poly(format_poly(f), f.arity) == f
        assert format_poly(parse_poly(format_poly(f), f.arity)) == format_poly(f)


def test_duplicate_pure_parts_merge_on_parse():
    f = parse_poly("x + x")
    assert f == parse_poly("0v*x")
    g = parse_poly("3 + 3")
    assert [str(m.coeff) for m in g.terms] == ["3v"]


def test_arity_override_and_errors():
    f = parse_poly("x1 + 0", arity=2)
    assert f.arity == 2
    with pytest.raises(ParseError):
        parse_poly("x3 + 0", arity=2)
    with pytest.raises(ParseError):
        parse_poly("")
    with pytest.raises(ParseError):
        parse_poly("x + + 0")
    with pytest.raises(ParseError):
        parse_poly("y + 0")


def test_rational_exponents():
    f = parse_poly("x1^1/2*x2^1/2 + 0")
    assert f.context == Context.RATL
    assert f.terms[0].exps == (Fraction(1, 2), Fraction(1, 2))


def test_layered_poly_parse_and_print():
    f = parse_layered_poly("x^2 + 1@2*x + 0")
    assert f.layers == (1, 2, 1)
    text = str(f)
    assert "@2" in text
    again = parse_layered_poly(text)
    assert again.base == f.base and again.layers == f.layers


def test_layered_merge_adds_layers():
    f = parse_layered_poly("x + x")
    assert f.layers == (2,)
    assert f.base.terms[0].coeff.ghost  # collapses to ghost supertropically


def test_ghost_coefficient_round_trip_in_layered_print():
    f = parse_layered_poly("x + 2v")
    assert f.layers[-1] is LAYER_INF
    assert parse_layered_poly(str(f)).layers == f.layers

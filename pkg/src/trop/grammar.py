"""Text grammar for values, points, and polynomials.

Values:      3/2   -5   3/2v   7@3   0@inf
Points:      comma-separated values, e.g. "3,4v" or "1/2@2,0"
Polynomials: terms joined by '+'; a term is an optional coefficient literal
             and '*'-separated variable factors xK^E (K a 1-based index,
             E an optional integer or rational exponent).  'x' abbreviates
             'x1'.  An omitted coefficient is the multiplicative identity 0.

Printing produces the canonical form (terms in descending lexicographic
exponent order) and round-trips bit-exactly through the parser.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ParseError
from .poly import LayeredPolynomial, Point, TropicalPolynomial
from .values import (
    LAYER_INF,
    Layer,
    LayeredValue,
    SupertropicalValue,
    format_rational,
    lay,
    st,
)

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")
_VALUE = re.compile(r"(-?\d+(?:/\d+)?)(v|@(\d+|inf))?$")
_FACTOR = re.compile(r"x(\d*)(?:\^(-?\d+(?:/\d+)?))?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ParseError("expected a rational number", text, 0)
    return Fraction(text)


def parse_value(text: str):
    """A supertropical or layered value; '@' literals come back layered."""
    s = text.strip()
    m = _VALUE.match(s)
    if not m:
        raise ParseError("expected a value literal", text, 0)
    mag = Fraction(m.group(1))
    tag = m.group(2)
    if tag is None:
        return st(mag)
    if tag == "v":
        return st(mag, ghost=True)
    layer_text = m.group(3)
    layer: Layer = LAYER_INF if layer_text == "inf" else int(layer_text)
    return lay(mag, layer)


def parse_supertropical(text: str) -> SupertropicalValue:
    v = parse_value(text)
    if isinstance(v, LayeredValue):
        return SupertropicalValue(v.magnitude, v.layer > 1)
    return v


def parse_layered(text: str) -> LayeredValue:
    v = parse_value(text)
    if isinstance(v, SupertropicalValue):
        return lay(v.magnitude, LAYER_INF if v.ghost else 1)
    return v


def format_value(v) -> str:
    return str(v)


def parse_point(text: str) -> Point:
    parts = text.split(",")
    return Point(tuple(parse_supertropical(p) for p in parts))


def parse_layered_point(text: str) -> list[LayeredValue]:
    return [parse_layered(p) for p in text.split(",")]


def format_point(p: Point) -> str:
    return ",".join(str(c) for c in p.coords)


# -- polynomials --------------------------------------------------------------


def _scan_terms(text: str):
    """Yield (exponent dict, magnitude, tag) per term.

    tag is None (tangible), 'v' (ghost), or an explicit layer.
    """
    if not text.strip():
        raise ParseError("empty polynomial", text, 0)
    pos = 0
    for chunk in text.split("+"):
        term = chunk.strip()
        if not term:
            raise ParseError("empty term", text, pos)
        exps: dict[int, Fraction] = {}
        mag = Fraction(0)
        tag = None
        saw_coeff = False
        for raw_factor in chunk.split("*"):
            factor = raw_factor.strip()
            if not factor:
                raise ParseError("empty factor", text, pos)
            fm = _FACTOR.match(factor)
            if fm and factor.startswith("x"):
                idx = int(fm.group(1)) if fm.group(1) else 1
                if idx < 1:
                    raise ParseError("variable indices start at 1", text, pos)
                exp = Fraction(fm.group(2)) if fm.group(2) else Fraction(1)
                exps[idx - 1] = exps.get(idx - 1, Fraction(0)) + exp
            else:
                vm = _VALUE.match(factor)
                if not vm:
                    raise ParseError(f"cannot read factor {factor!r}", text, pos)
                mag += Fraction(vm.group(1))
                vtag = vm.group(2)
                if vtag is not None:
                    if saw_coeff and tag is not None:
                        raise ParseError("multiple tagged coefficients", text, pos)
                    tag = "v" if vtag == "v" else vm.group(3)
                saw_coeff = True
        yield exps, mag, tag
        pos += len(chunk) + 1


def _term_tuples(text: str, arity: Optional[int]):
    scanned = list(_scan_terms(text))
    max_idx = 0
    for exps, _, _ in scanned:
        for i in exps:
            max_idx = max(max_idx, i + 1)
    n = arity if arity is not None else max(max_idx, 1)
    if max_idx > n:
        raise ParseError(f"variable x{max_idx} exceeds arity {n}", text, 0)
    out = []
    for exps, mag, tag in scanned:
        vec = tuple(exps.get(i, Fraction(0)) for i in range(n))
        out.append((vec, mag, tag))
    return n, out


def parse_poly(text: str, arity: Optional[int] = None) -> TropicalPolynomial:
    n, tuples = _term_tuples(text, arity)
    terms = []
    for vecexp, mag, tag in tuples:
        if tag is None:
            ghost = False
        elif tag == "v" or tag == "inf":
            ghost = True
        else:
            ghost = int(tag) > 1
        terms.append((vecexp, st(mag, ghost)))
    return TropicalPolynomial(n, terms)


def parse_layered_poly(text: str, arity: Optional[int] = None) -> LayeredPolynomial:
    n, tuples = _term_tuples(text, arity)
    merged: dict[tuple, LayeredValue] = {}
    for vecexp, mag, tag in tuples:
        if tag is None:
            layer: Layer = 1
        elif tag == "v" or tag == "inf":
            layer = LAYER_INF
        else:
            layer = int(tag)
        v = lay(mag, layer)
        merged[vecexp] = merged[vecexp] + v if vecexp in merged else v
    base = TropicalPolynomial(
        n, [(e, st(v.magnitude, v.layer > 1)) for e, v in merged.items()]
    )
    layers = {m.exps: merged[m.exps].layer for m in base.terms}
    return LayeredPolynomial.of(base, layers)


def _var_names(arity: int) -> list[str]:
    if arity == 1:
        return ["x"]
    return [f"x{i + 1}" for i in range(arity)]


def format_term(
    exps: Sequence[Fraction],
    coeff: SupertropicalValue,
    names: Optional[Sequence[str]] = None,
) -> str:
    names = names if names is not None else _var_names(len(exps))
    factors = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        if e == 1:
            factors.append(name)
        else:
            factors.append(f"{name}^{format_rational(e)}")
    coeff_text = str(coeff)
    if not factors:
        return coeff_text
    if coeff_text == "0":
        return "*".join(factors)
    return "*".join([coeff_text] + factors)


def format_poly(f: TropicalPolynomial) -> str:
    names = _var_names(f.arity)
    return " + ".join(format_term(m.exps, m.coeff, names) for m in f.terms)


def format_layered_poly(f: LayeredPolynomial) -> str:
    names = _var_names(f.arity)
    parts = []
    for i, m in enumerate(f.base.terms):
        layer = f.layers[i]
        if layer == 1:
            coeff_text = format_rational(m.coeff.magnitude)
            shown = st(m.coeff.magnitude)
        elif layer is LAYER_INF:
            coeff_text = format_rational(m.coeff.magnitude) + "v"
            shown = None
        else:
            coeff_text = f"{format_rational(m.coeff.magnitude)}@{layer}"
            shown = None
        if shown is not None and any(e != 0 for e in m.exps):
            parts.append(format_term(m.exps, shown, names))
            continue
        factors = []
        for name, e in zip(names, m.exps):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{format_rational(e)}")
        parts.append("*".join([coeff_text] + factors) if factors else coeff_text)
    return " + ".join(parts)

"""Command-line interface: evaluate, classify, loci, equality, admissibility,
layered sets, dimension, and SVG rendering.

Verdict-style verbs exit 0 on true/affirmative results, 1 on negative
verdicts, and 2 on errors.  All machine output is JSON on stdout except
`render --svg`, which writes an SVG document.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .dimension import dimension_with_chain, verify_chain
from .equivalence import check_admissible, disagreements_on
from .errors import TropError
from .figures import FIGURES
from .grammar import (
    parse_layered_point,
    parse_layered_poly,
    parse_point,
    parse_poly,
)
from .layered import layered_set, layering_of
from .loci import (
    AlgebraicSet,
    ambient,
    corner_locus,
    corner_locus_pair,
    nu_fiber,
    total_locus,
)
from .render import RenderSpec, render_svg
from .values import format_layer


def _read_arg_file(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_set_spec(text: str) -> AlgebraicSet:
    """plane[N] | {"ambient": n} | {"mode","polys"[,"erase"]} | {"pair"} | {"fiber"}"""
    text = text.strip()
    if text.startswith("plane"):
        suffix = text[len("plane"):]
        return ambient(int(suffix) if suffix else 2)
    data = json.loads(_read_arg_file(text))
    if "ambient" in data:
        return ambient(int(data["ambient"]))
    if "fiber" in data:
        return nu_fiber(parse_point(data["fiber"]))
    arity = data.get("arity")
    if "pair" in data:
        f = parse_poly(data["pair"][0], arity)
        g = parse_poly(data["pair"][1], f.arity)
        return corner_locus_pair(f, g)
    mode = data.get("mode", "corner")
    texts = data["polys"]
    if arity is None:
        arity = max(parse_poly(t).arity for t in texts)
    polys = [parse_poly(t, arity) for t in texts]
    X: Optional[AlgebraicSet] = None
    for f in polys:
        piece = corner_locus(f) if mode == "corner" else total_locus(f)
        X = piece if X is None else X.intersect(piece)
    for triple in data.get("erase", []):
        cond, i, j = triple
        X = X.erase_facet(int(cond), int(i), int(j))
    return X


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


def cmd_eval(args) -> int:
    if args.layered:
        f = parse_layered_poly(args.f)
        point = parse_layered_point(args.a)
        value = f.eval(point)
    else:
        f = parse_poly(args.f)
        point = parse_point(args.a)
        value = f.eval(point)
    print(json.dumps(str(value)))
    return 0


def cmd_classify(args) -> int:
    f = parse_poly(args.f)
    out = [
        {"term": str(m), "class": cls.value}
        for m, cls in zip(f.terms, f.classify())
    ]
    _emit({"polynomial": str(f), "terms": out})
    return 0


def cmd_shell(args) -> int:
    f = parse_poly(args.f)
    _emit({"polynomial": str(f), "shell": str(f.shell()),
           "tangible": f.is_tangible()})
    return 0


def cmd_locus(args) -> int:
    f = parse_poly(args.f)
    X = total_locus(f) if args.total else corner_locus(f)
    _emit(X.to_json())
    return 0


def cmd_intersect(args) -> int:
    polys = [parse_poly(t) for t in args.f]
    arity = max(p.arity for p in polys)
    polys = [parse_poly(t, arity) for t in args.f]
    X = None
    for p in polys:
        piece = total_locus(p) if args.total else corner_locus(p)
        X = piece if X is None else X.intersect(piece)
    _emit(X.to_json())
    return 0


def cmd_equal(args) -> int:
    X = parse_set_spec(args.X)
    f = parse_poly(args.f, X.arity)
    g = parse_poly(args.g, X.arity)
    dis = disagreements_on(X, f, g)
    result = {"equal": not dis}
    if dis:
        result["disagreements"] = [
            {"piece": str(d.piece), "detail": d.detail,
             "ghost_coordinates": list(d.pattern)}
            for d in dis[:20]
        ]
    _emit(result)
    return 0 if not dis else 1


def cmd_admissible(args) -> int:
    X = parse_set_spec(args.X)
    witnesses = None
    if args.witnesses and args.witnesses != "auto":
        data = json.loads(_read_arg_file(args.witnesses))
        witnesses = [
            (parse_poly(a, X.arity), parse_poly(b, X.arity)) for a, b in data
        ]
    verdict = check_admissible(X, witnesses)
    _emit(verdict.to_json())
    return 1 if verdict.verdict == "inadmissible" else 0


def cmd_layered(args) -> int:
    arity = max(parse_layered_poly(t).arity for t in args.f)
    polys = [parse_layered_poly(t, arity) for t in args.f]
    if args.a is not None:
        point = parse_layered_point(args.a)
        layers = {t: format_layer(layering_of(p, point)) for t, p in zip(args.f, polys)}
        _emit({"point": args.a, "layers": layers})
        return 0
    L = layered_set(polys)
    _emit(L.to_json())
    return 0


def cmd_dim(args) -> int:
    X = parse_set_spec(args.X)
    d, chain = dimension_with_chain(X)
    report = verify_chain(chain)
    _emit({"dimension": d, "report": report.to_json(), "chain": chain.to_json()})
    return 0


def cmd_render(args) -> int:
    spec = RenderSpec.of(
        [Fraction(v) for v in args.viewport.split(",")] if args.viewport else None
    )
    if args.figure:
        if args.figure not in FIGURES:
            raise TropError(
                f"unknown figure {args.figure!r}; choices: {', '.join(sorted(FIGURES))}"
            )
        items = FIGURES[args.figure]()
    else:
        items = [parse_set_spec(t) for t in (args.X or [])]
        if not items:
            raise TropError("render needs -X or --figure")
    doc = render_svg(items, spec)
    if args.svg == "-":
        sys.stdout.write(doc)
    else:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trop",
        description="Exact supertropical and layered tropical algebra.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="evaluate a polynomial at a point")
    p.add_argument("-f", required=True, help="polynomial text")
    p.add_argument("-a", required=True, help="point, e.g. '3' or '1/2,4v'")
    p.add_argument("--layered", action="store_true", help="layered arithmetic")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="essential/quasi-essential/inessential terms")
    p.add_argument("-f", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("shell", help="sum of the essential terms")
    p.add_argument("-f", required=True)
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("locus", help="corner (default) or total locus as JSON")
    p.add_argument("-f", required=True)
    p.add_argument("--total", action="store_true")
    p.set_defaults(func=cmd_locus)

    p = sub.add_parser("intersect", help="intersection of loci")
    p.add_argument("-f", action="append", required=True,
                   help="polynomial (repeatable)")
    p.add_argument("-g", dest="f", action="append", help=argparse.SUPPRESS)
    p.add_argument("--total", action="store_true")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("equal", help="function equality on a set")
    p.add_argument("-X", required=True, help="set spec (plane, JSON, or @file)")
    p.add_argument("-f", required=True)
    p.add_argument("-g", required=True)
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("admissible", help="admissibility verdict for a set")
    p.add_argument("-X", required=True)
    p.add_argument("--witnesses", default="auto", help="auto or @file")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("layered", help="layered set of a family, or a layer query")
    p.add_argument("-f", action="append", required=True)
    p.add_argument("-a", help="query the layering maps at a point")
    p.set_defaults(func=cmd_layered)

    p = sub.add_parser("dim", help="dimension via the canonical chain")
    p.add_argument("-X", required=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("render", help="SVG rendering")
    p.add_argument("-X", action="append")
    p.add_argument("--figure", help=f"one of: {', '.join(sorted(FIGURES))}")
    p.add_argument("--svg", required=True, help="output path or -")
    p.add_argument("--viewport", help="xmin,xmax,ymin,ymax")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TropError as exc:
        print(f"trop: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"trop: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

import os
import pathlib

import pytest

from trop.errors import ArityError
from trop.figures import FIGURES
from trop.grammar import parse_poly
from trop.layered import layered_set
from trop.loci import corner_locus
from trop.render import RenderSpec, render_svg

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figures_match_golden_files(name):
    doc = render_svg(FIGURES[name]())
    assert doc == (GOLDEN / f"{name}.svg").read_text()


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_rendering_is_byte_stable(name):
    assert render_svg(FIGURES[name]()) == render_svg(FIGURES[name]())


def test_intersection_segment_is_highlighted():
    doc = render_svg(FIGURES["line-conic"]())
    assert 'id="set2"' in doc  # the separately stroked intersection
    assert '<path d="M 200,200 L 240,200"/>' in doc


def test_filled_region_emitted():
    doc = render_svg(FIGURES["filled-square"]())
    assert 'fill="#cccccc"' in doc and "Z\"" in doc


def test_layered_labels():
    L = layered_set([parse_poly("x1 + x2 + 0", 2)])
    doc = render_svg([L])
    assert ">3</text>" in doc and ">2</text>" in doc


def test_viewport_and_clipping():
    X = corner_locus(parse_poly("x1 + x2 + 0", 2))
    spec = RenderSpec.of([-1, 1, -1, 1])
    doc = render_svg([X], spec)
    assert 'width="80"' in doc and 'height="80"' in doc
    # the diagonal ray is clipped at the viewport corner
    assert '<path d="M 40,40 L 80,0"/>' in doc


def test_arity_one_rejected():
    with pytest.raises(ArityError):
        render_svg([corner_locus(parse_poly("x + 0", 1))])


def test_fractional_coordinates_format_exactly():
    X = corner_locus(parse_poly("x^2 + 1*x + 0", 1) * parse_poly("x + 0", 1))
    # vertex at -1 and 0; arity-1 sets cannot render, so check the formatter
    from trop.render import _fmt
    from fractions import Fraction

    assert _fmt(Fraction(1, 3)) == "0.3333"
    assert _fmt(Fraction(-1, 2)) == "-0.5"
    assert _fmt(Fraction(200)) == "200"
    assert _fmt(Fraction(1, 10000)) == "0.0001"
    assert _fmt(Fraction(1, 20000)) == "0"  # ties to even
    assert _fmt(Fraction(3, 20000)) == "0.0002"


def test_byte_stability_across_processes(tmp_path):
    # hash randomization must not leak into any serialized output
    import json
    import subprocess
    import sys

    outputs = []
    for seed in ("0", "4242"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        run = subprocess.run(
            [sys.executable, "-m", "trop.cli", "render", "--figure",
             "filled-square", "--svg", "-"],
            capture_output=True, text=True, env=env, check=True,
        )
        locus = subprocess.run(
            [sys.executable, "-m", "trop.cli", "locus", "-f",
             "x1^2*x2^2+x1^2+x2^2+0+1v*x1*x2"],
            capture_output=True, text=True, env=env, check=True,
        )
        outputs.append((run.stdout, locus.stdout))
    assert outputs[0] == outputs[1]
    golden = (GOLDEN / "filled-square.svg").read_text()
    assert outputs[0][0] == golden
    json.loads(outputs[0][1])  # valid JSON

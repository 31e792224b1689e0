from fractions import Fraction

from trop.complexes import CellComplex
from trop.geom import PointCell, RayCell, SegCell
from trop.grammar import parse_poly
from trop.loci import (
    ambient,
    components,
    corner_locus,
    corner_locus_pair,
    intersect,
    nu_fiber,
    principal_open,
    total_locus,
)
from conftest import random_fraction


def p1(s):
    return parse_poly(s, 1)


def p2(s):
    return parse_poly(s, 2)


LINE = "x1 + x2 + 0"
SQUARE = "x1^2*x2^2 + x1^2 + x2^2 + 0 + 1*x1*x2"


def rays_of(X):
    return sorted(c.dir for c in X.complex.cells if isinstance(c, RayCell))


def test_tropical_line_is_three_rays():
    X = corner_locus(p2(LINE))
    assert rays_of(X) == [(-1, 0), (0, -1), (1, 1)]
    verts = [c for c in X.complex.cells if c.dim == 0]
    assert [v.p for v in verts] == [(Fraction(0), Fraction(0))]


def test_double_corner_root_is_one_point():
    X = corner_locus(p1("x^2 + 3*x + 6"))
    assert [str(c) for c in X.complex.cells] == ["point(Fraction(3, 1),)"]


def test_square_with_rays():
    X = corner_locus(p2(SQUARE))
    verts = sorted(c.p for c in X.complex.cells if c.dim == 0)
    assert verts == [
        (Fraction(-1), Fraction(0)),
        (Fraction(0), Fraction(-1)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(0)),
    ]
    segs = [c for c in X.complex.cells if isinstance(c, SegCell)]
    assert len(segs) == 4
    assert rays_of(X) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(X.facets()) == 8
    assert len(X.faces()) == 4


def test_filled_square_total_locus():
    X = total_locus(p2(SQUARE.replace("1*x1*x2", "1v*x1*x2")))
    regions = [c for c in X.complex.cells if c.dim == 2]
    assert len(regions) == 1
    assert X.contains_mags((0, 0))
    assert X.contains_mags((Fraction(1, 2), 0))
    assert not X.contains_mags((3, 3))
    # the crisp square's interior is NOT in its corner locus
    Y = corner_locus(p2(SQUARE))
    assert not Y.contains_mags((0, 0))


def test_corner_subset_of_total_equality_iff_tangible():
    f = p2(LINE)
    assert corner_locus(f).same_set(total_locus(f))
    g = p1("x + 2v")
    total = total_locus(g)
    corner = corner_locus(g)
    assert total.covers(corner)
    assert not corner.covers(total)
    # the ghost constant dominates below 2
    assert total.contains_mags((0,)) and not corner.contains_mags((0,))
    assert total.contains_mags((2,)) and corner.contains_mags((2,))


def test_segment_intersection():
    X = intersect(corner_locus(p2("x1 + 1*x2 + 1")), corner_locus(p2("x1*x2 + x1 + 0")))
    cells = X.complex.cells
    assert [str(c) for c in cells if c.dim == 1] == [
        "seg(Fraction(0, 1), Fraction(0, 1))->(Fraction(1, 1), Fraction(0, 1))"
    ]
    assert sorted(c.p for c in cells if c.dim == 0) == [
        (Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(0)),
    ]


def test_parallel_lines_intersection_is_ray():
    X = intersect(corner_locus(p2(LINE)), corner_locus(p2("x1 + x2 + 1")))
    assert rays_of(X) == [(1, 1)]
    assert [c.p for c in X.complex.cells if c.dim == 0] == [(Fraction(1), Fraction(1))]


def test_intersection_idempotent():
    X = corner_locus(p2(LINE))
    assert intersect(X, X).same_set(X)


def test_pair_locus():
    X = corner_locus_pair(p2("x1 + x2"), p2(LINE))
    assert rays_of(X) == [(1, 1)]
    assert X.contains_mags((3, 3)) and not X.contains_mags((-1, -1))
    # reflexive case degenerates to the corner locus
    assert corner_locus_pair(p2(LINE), p2(LINE)).same_set(corner_locus(p2(LINE)))
    # never-ghost pair is empty
    assert corner_locus_pair(p2("x1"), p2("x2")).is_empty()


def test_components():
    comps = components(p1("x + 0"))
    assert [str(c) for _, c, _ in comps] == [
        "ray(Fraction(0, 1),)+t(1,)",
        "ray(Fraction(0, 1),)+t(-1,)",
    ]
    comps = components(p1("x^2 + 3*x + 6"))
    middle = comps[1]
    assert isinstance(middle[1], PointCell) and middle[1].p == (Fraction(3),)
    comps = components(p2("2*x1^2 + 2*x2^2 + x1*x2 + 0"))
    cross = [c for i, c, _ in comps if p2("2*x1^2 + 2*x2^2 + x1*x2 + 0").terms[i].exps == (1, 1)]
    assert cross == [None]
    # tangibility flags
    comps = components(p1("x + 2v"))
    assert [t for _, _, t in comps] == [True, False]


def test_components_cover_the_plane(rng):
    f = p2("x1^2 + 1*x1*x2 + x2^2 + 0")
    comps = [c for _, c, _ in components(f) if c is not None]
    for _ in range(100):
        p = (random_fraction(rng), random_fraction(rng))
        assert any(c.contains(p) for c in comps)


def test_principal_open():
    po = principal_open(p2(LINE))
    assert not po.contains_mags((0, 0))
    assert po.contains_mags((1, 0))
    s = po.sample()
    assert s is not None and po.contains_mags(s)
    assert principal_open(p2("3")).is_everything()


def test_principal_open_intersection_contains_principal_open(rng):
    # the complement of Z(fg) equals the intersection of the complements
    for _ in range(10):
        f = p2("x1^2 + %s*x1*x2 + x2^2" % random_fraction(rng, 3))
        g = p2("x1 + x2 + %s" % random_fraction(rng, 3))
        prod = corner_locus(f * g)
        union = CellComplex(
            2,
            list(corner_locus(f).complex.cells) + list(corner_locus(g).complex.cells),
            [],
        )
        assert prod.complex.same_set(union)


def test_nu_fiber():
    X = nu_fiber((2, 3))
    assert [str(c) for c in X.complex.cells] == [
        "point(Fraction(2, 1), Fraction(3, 1))"
    ]
    assert len(X.facets()) == 1
    assert X.contains_mags((2, 3)) and not X.contains_mags((2, 4))


def test_facets_of_line_with_faces():
    X = corner_locus(p2(LINE))
    facets = X.facets()
    assert len(facets) == 3
    assert all(f.dim == 1 for f in facets)
    faces = X.faces()
    assert len(faces) == 1
    assert faces[0][0].p == (Fraction(0), Fraction(0))


def test_facet_convexity():
    # every facet of these curves is convex: a single 1-dim cell plus faces
    for text in (LINE, SQUARE, "x1*x2 + x1 + 0"):
        X = corner_locus(p2(text))
        for facet in X.facets():
            one_cells = [c for c in facet.cells if c.dim == 1]
            assert len(one_cells) == 1  # convex pieces never split


def test_annotation_resampling():
    X = corner_locus(p2(SQUARE))
    f = X.conditions[0].f
    for cell, ann in zip(X.complex.cells, X.complex.annotations):
        assert tuple(f.eval_mag(cell.sample())[1]) == ann[0]


def test_vertices_on_three_facet_closures_or_ray_end():
    for text in (LINE, SQUARE):
        X = corner_locus(p2(text))
        facets = X.facets()
        for v in (c for c in X.complex.cells if c.dim == 0):
            closures = sum(
                1
                for f in facets
                if any(cl.contains(v.p) for cl in f.cells)
            )
            ray_end = any(
                isinstance(c, RayCell) and c.base == v.p for c in X.complex.cells
            )
            assert closures >= 3 or ray_end


def test_erasure_keeps_closure():
    X = corner_locus(p2(LINE)).erase_facet(0, 0, 1)
    assert rays_of(X) == [(-1, 0), (0, -1)]
    assert X.contains_mags((0, 0))  # the shared origin stays
    assert not X.contains_mags((2, 2))


def test_ambient_and_membership():
    F2 = ambient(2)
    assert F2.is_ambient() and F2.dim() == 2
    assert F2.contains_mags((7, -9))
    assert F2.covers(corner_locus(p2(LINE)))


def test_json_export_schema():
    X = corner_locus(p2(LINE))
    data = X.to_json()
    assert data["arity"] == 2
    assert data["vertices"] == [[[0, 1], [0, 1]]]
    assert {"v": 0, "dir": [1, 1]} in data["edges"]
    assert data["faces"] == []
    assert data["annotations"]["0"]["v0"] == [0, 1, 2]
    # deterministic
    assert X.to_json() == corner_locus(p2(LINE)).to_json()


def test_json_with_region():
    X = total_locus(p2(SQUARE.replace("1*x1*x2", "1v*x1*x2")))
    data = X.to_json()
    assert len(data["faces"]) == 1
    assert len(data["faces"][0]["vertices"]) == 4


def test_unsupported_arity():
    f = parse_poly("x1 + x2 + x3 + 0", 3)
    X = corner_locus(f)  # witness mode: no complex
    assert X.complex is None
    assert X.contains_mags((0, 0, 0))
    assert X.contains_mags((0, -1, -2))  # x1 ties the constant
    assert not X.contains_mags((-1, -2, -3))


def test_erased_surface_witness_points():
    # arity 3 works in witness mode: membership and values checked exactly
    f = parse_poly("x1 + x2 + x3 + 0", 3)
    X = corner_locus(f).erase_facet(0, 0, 1).erase_facet(0, 2, 3)
    # points on the kept part of the surface
    assert X.contains_mags((0, 0, 0))
    assert X.contains_mags((2, 2, 2))  # triple tie, kept as closure
    assert X.contains_mags((0, -1, -2))  # x1 ties the constant
    # points of the two erased facets (pairwise-only ties) are gone
    assert not X.contains_mags((3, 3, 1))  # only x1 = x2 dominate
    assert not X.contains_mags((-1, -2, 0))  # only x3 and the constant
    # the two halves of the agreeing pair, checked at witness points
    g1 = parse_poly("x1 + x2", 3)
    g2 = parse_poly("x3 + 0", 3)
    from trop.poly import Point

    agree_at = [(0, -1, -2), (0, -3, -1)]
    for q in agree_at:
        assert X.contains_mags(q)
        assert g1.eval(Point.of(*q)) == g2.eval(Point.of(*q))
    differ_at = [(2, 2, 2), (0, -1, 0)]
    for q in differ_at:
        assert X.contains_mags(q)
        v1, v2 = g1.eval(Point.of(*q)), g2.eval(Point.of(*q))
        assert v1 != v2 and v1.magnitude == v2.magnitude  # ghost against tangible

import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from buildings.metric import (ComplexPoint, DegenerateShapeError, DisconnectedPointsError,
                              GeneratedComplex, IncompatibleShapesError, MZeroComplex,
                              NotInCommonSimplexError, PLString, Shape, ToleranceNotReachedError,
                              check_properness, davis_metric_complex, geodesic_estimate,
                              intrinsic_distance, string_length, vertex_separation)
from buildings.realizations import SimplicialComplex

R2, R3 = math.sqrt(2), math.sqrt(3)
V = ComplexPoint.vertex


def split_square():
    K = SimplicialComplex([("A", "B", "D"), ("B", "C", "D")])
    lengths = {frozenset("AB"): 1, frozenset("AD"): 1, frozenset("BD"): R2,
               frozenset("BC"): 1, frozenset("CD"): 1}
    return MZeroComplex.from_edge_lengths(K, lengths)


def glued_triangles():
    return MZeroComplex.regular(SimplicialComplex([("A", "B", "C"), ("B", "C", "D")]))


def unit_path(n):
    return MZeroComplex.regular(SimplicialComplex([(k, k + 1) for k in range(n)]))


def test_string_lengths():
    mc = unit_path(2)
    assert string_length(mc, PLString((V(0), V(0)), ((0, 1),))) == 0
    assert string_length(mc, PLString((V(0), V(1)), ((0, 1),))) == 1
    assert string_length(mc, PLString((V(0), V(1), V(2)), ((0, 1), (1, 2)))) == 2
    with pytest.raises(NotInCommonSimplexError):
        string_length(mc, PLString((V(0), V(2)), ((0, 1),)))


def test_closed_forms():
    assert abs(intrinsic_distance(split_square(), V("A"), V("C")) - R2) <= 1e-6
    assert abs(intrinsic_distance(glued_triangles(), V("A"), V("D")) - R3) <= 1e-6


def test_same_simplex_distance_is_exact():
    mc = glued_triangles()
    x = ComplexPoint(("A", "B", "C"), (0.2, 0.3, 0.5))
    y = ComplexPoint(("B", "C"), (0.9, 0.1))
    assert intrinsic_distance(mc, x, y) == mc.simplex_distance(x, y)


def test_vertex_separation_examples():
    assert vertex_separation(unit_path(1)) == 1.0
    assert abs(vertex_separation(glued_triangles()) - R3 / 2) <= 1e-12
    mixed = MZeroComplex.regular(SimplicialComplex([("A", "B", "C"), ("C", "D")]))
    assert abs(vertex_separation(mixed) - R3 / 2) <= 1e-12


def test_shape_validation():
    with pytest.raises(DegenerateShapeError):
        Shape(((0, 1, 2), (1, 0, 1), (2, 1, 0)))  # collinear
    with pytest.raises(DegenerateShapeError):
        Shape(((0, 1, 3), (1, 0, 1), (3, 1, 0)))  # triangle inequality fails
    K = SimplicialComplex([("A", "B", "C"), ("B", "C", "D")])
    doc = {"shapes": [{"dim": 2, "edge_lengths": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]},
                      {"dim": 2, "edge_lengths": [[0, 2, 2], [2, 0, 2], [2, 2, 0]]}],
           "assignment": [[["A", "B", "C"], 0, [0, 1, 2]], [["B", "C", "D"], 1, [0, 1, 2]]]}
    with pytest.raises(IncompatibleShapesError):
        MZeroComplex.from_json(K, doc)


def test_shape_table_round_trip():
    mc = split_square()
    again = MZeroComplex.from_json(mc.complex, mc.to_json())
    assert abs(intrinsic_distance(again, V("A"), V("C")) - R2) <= 1e-6


def test_disconnected_points():
    mc = MZeroComplex.regular(SimplicialComplex([(0, 1), (2, 3)]))
    with pytest.raises(DisconnectedPointsError):
        intrinsic_distance(mc, V(0), V(3))


def test_tolerance_not_reached_carries_a_bound():
    with pytest.raises(ToleranceNotReachedError) as info:
        intrinsic_distance(glued_triangles(), V("A"), V("D"), max_levels=1)
    assert info.value.estimate.value >= R3 - 1e-12


def test_properness_of_finite_complex():
    mc = glued_triangles()
    rep = check_properness(mc, V("A"), 0.5)
    assert rep.locally_finite and not rep.partial
    assert set(rep.ball_facets) <= {tuple(sorted(f)) for f in mc.complex.facets}


def test_infinite_star_is_not_locally_finite():
    star = GeneratedComplex(lambda v: ((0, k) for k in itertools.count(1)) if v == 0 else [(0, v)],
                            declared_bound=32)
    rep = check_properness(star, V(0), 1.0)
    assert not rep.locally_finite and rep.partial
    assert rep.witness_vertex == 0 and rep.ball_meets_at_least == 33


def test_half_line_ball():
    half = GeneratedComplex(lambda v: [(v - 1, v), (v, v + 1)] if v > 0 else [(0, 1)])
    rep = check_properness(half, V(0), 2.5)
    assert rep.locally_finite and rep.partial
    assert rep.ball_facets == [(0, 1), (1, 2), (2, 3)]


# -- properties on the Davis complex of the hexagon -------------------------------

@pytest.fixture(scope="module")
def davis_hex(hexagon):
    return davis_metric_complex(hexagon)


def points(mc):
    facets = [tuple(sorted(f, key=str)) for f in mc.complex.facets]

    @st.composite
    def draw(d):
        f = d(st.sampled_from(facets))
        w = d(st.lists(st.floats(0.01, 1.0), min_size=len(f), max_size=len(f)))
        s = sum(w)
        return ComplexPoint(f, tuple(x / s for x in w))

    return draw()


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_symmetry_and_triangle_inequality(davis_hex, data):
    tol = 1e-7
    x, y, z = (data.draw(points(davis_hex)) for _ in range(3))
    dxy = intrinsic_distance(davis_hex, x, y, tol)
    assert abs(dxy - intrinsic_distance(davis_hex, y, x, tol)) <= 2 * tol
    dxz = intrinsic_distance(davis_hex, x, z, tol)
    dzy = intrinsic_distance(davis_hex, z, y, tol)
    assert dxy <= dxz + dzy + 3 * tol


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_any_string_is_at_least_the_distance(davis_hex, data):
    tol = 1e-7
    x = data.draw(points(davis_hex))
    pts, wits = [x], []
    for _ in range(data.draw(st.integers(1, 4))):
        f = data.draw(st.sampled_from(davis_hex.facets_containing(pts[-1].support)))
        w = data.draw(st.lists(st.floats(0.0, 1.0), min_size=len(f), max_size=len(f)))
        if sum(w) == 0:
            w = [1.0] + [0.0] * (len(f) - 1)
        pts.append(ComplexPoint(f, tuple(a / sum(w) for a in w)))
        wits.append(f)
    s = PLString(tuple(pts), tuple(wits))
    assert string_length(davis_hex, s) >= intrinsic_distance(davis_hex, pts[0], pts[-1], tol) - tol


def test_chamber_vertices_are_separated(davis_hex, hexagon):
    eps = vertex_separation(davis_hex)
    chambers = [v for v in davis_hex.vertices if v.colors == ()]
    assert len(chambers) == 6
    for a, b in itertools.combinations(chambers, 2):
        d = intrinsic_distance(davis_hex, V(a), V(b))
        assert d >= eps > 0
        # instance constants: adjacent chambers sit at sqrt(3), opposite ones at 2
        ratio = hexagon.distance(a.chambers[0], b.chambers[0]) / d
        assert 1 / R3 - 1e-9 <= ratio <= 1.5 + 1e-9

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from buildings.building import InfiniteWError
from buildings.constructions import (GraphProductSpec, cayley_building, cyclic_group,
                                     graph_product_building)
from buildings.coxeter import dihedral, type_A, type_H3
from buildings.realizations import (RankZeroError, SimplicialComplex, davis_realization,
                                    homology_ranks, opposite_count, spherical_residues,
                                    tits_realization)


def sphere(d):
    """Boundary of the (d+1)-simplex."""
    return SimplicialComplex(combinations(range(d + 2), d + 1))


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_homology_of_spheres(d):
    expected = [2] if d == 0 else [1] + [0] * (d - 1) + [1]
    assert homology_ranks(sphere(d)) == expected


def test_homology_of_a_torus():
    # 7-vertex Moebius torus
    tris = [tuple(sorted((i % 7, (i + a) % 7, (i + b) % 7))) for i in range(7) for a, b in ((1, 3), (2, 3))]
    K = SimplicialComplex(tris)
    assert K.f_vector() == [7, 21, 14]
    assert homology_ranks(K) == [1, 2, 1]


def test_complex_keeps_only_facets():
    K = SimplicialComplex([(0, 1, 2), (0, 1), (3,)])
    assert K.facets == (frozenset({0, 1, 2}), frozenset({3}))
    assert (1, 2) in K and (2, 3) not in K
    assert SimplicialComplex.from_json(K.to_json()).f_vector() == K.f_vector()


def test_hexagon_realizations(hexagon):
    T = tits_realization(hexagon)
    assert homology_ranks(T) == [1, 1]
    D = davis_realization(hexagon)
    assert len(D.vertices) == 13
    assert homology_ranks(D) == [1, 0, 0]
    assert opposite_count(hexagon, "c0") == 1


def test_fano_realizations(fano):
    T = tits_realization(fano)
    assert T.f_vector() == [14, 21]
    assert homology_ranks(T) == [1, 8]
    D = davis_realization(fano)
    assert len(D.vertices) == 21 + 7 + 7 + 1
    assert homology_ranks(D) == [1, 0, 0]


def test_solomon_tits_rank_three():
    for W in (type_A(3), type_H3()):
        b = cayley_building(W)
        assert homology_ranks(tits_realization(b)) == [1, 0, 1]


def test_davis_vertices_match_residue_census(fano):
    census = sum(len(set(part.values())) for part in spherical_residues(fano).values())
    assert census == len(davis_realization(fano).vertices)


def test_davis_of_a_ball_keeps_only_complete_residues():
    b = cayley_building(dihedral(0), 2)
    D = davis_realization(b)
    assert len(D.vertices) == 5 + 4
    assert homology_ranks(D) == [1, 0]


def test_graph_product_ball_is_contractible():
    b = graph_product_building(GraphProductSpec([cyclic_group(3), cyclic_group(3)]), 2)
    assert homology_ranks(davis_realization(b)) == [1, 0]


def test_rank_one_panel():
    b = graph_product_building(GraphProductSpec([cyclic_group(3)]), 1)
    assert len(tits_realization(b).vertices) == 3
    assert len(davis_realization(b).vertices) == 4
    assert opposite_count(b, b.chambers[0]) == 2


def test_errors():
    with pytest.raises(InfiniteWError):
        opposite_count(cayley_building(dihedral(0), 2), "e")
    b = cayley_building(dihedral(3)).residue("e", [])
    with pytest.raises(RankZeroError):
        tits_realization(b)


@settings(max_examples=21, deadline=None)
@given(st.integers(0, 20))
def test_top_betti_number_counts_opposite_chambers(fano, k):
    assert opposite_count(fano, fano.chambers[k]) == 8


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["tits", "davis"]), st.sampled_from(["hex", "fano", "a3"]))
def test_euler_characteristic_matches_betti_numbers(hexagon, fano, which, name):
    b = {"hex": hexagon, "fano": fano, "a3": cayley_building(type_A(3))}[name]
    K = tits_realization(b) if which == "tits" else davis_realization(b)
    betti = homology_ranks(K)
    assert K.euler_characteristic() == sum((-1) ** k * x for k, x in enumerate(betti))

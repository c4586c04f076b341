"""Acceptance criteria 1-11, one test each; every test records a PASS/FAIL line."""
import itertools
import math
import time

import pytest

from buildings.actions import (automorphism_group, chamber_orbits, fano_singer_subgroup,
                               group_order, is_strongly_transitive_max_atlas, is_weyl_transitive,
                               properness_certificate)
from buildings.building import enumerate_apartments, verify_axioms
from buildings.constructions import (GraphProductSpec, cayley_building, cyclic_group,
                                     fano_building, graph_product_building, klein_four, label_word)
from buildings.coxeter import dihedral, type_A, type_H3, validate_matrix
from buildings.metric import (ComplexPoint, GeneratedComplex, MZeroComplex, check_properness,
                              davis_metric_complex, intrinsic_distance, vertex_separation)
from buildings.realizations import (SimplicialComplex, davis_realization, homology_ranks,
                                    opposite_count, tits_realization)

from conftest import record
from mutations import twenty_mutations
from oracles import CayleyBall, chamber_graph_distances, group_order as oracle_order, key

pytestmark = pytest.mark.acceptance

ENTRIES = [2, 3, 4, 0]  # 0 encodes an infinite entry


def small_systems():
    yield [[1]]
    for a in ENTRIES:
        yield [[1, a], [a, 1]]
    for a, b, c in itertools.product(ENTRIES, repeat=3):
        yield [[1, a, b], [a, 1, c], [b, c, 1]]


def finite_rank3_or_less():
    out = [validate_matrix([[1]])] + [dihedral(m) for m in range(2, 9)]
    for a, b, c in itertools.product(range(2, 7), repeat=3):
        W = validate_matrix([[1, a, b], [a, 1, c], [b, c, 1]])
        if W.is_finite():
            out.append(W)
    return out


def test_criterion_01_coxeter_oracle_equivalence():
    t0 = time.perf_counter()
    words = mismatches = 0
    systems = list(small_systems())
    for m in systems:
        W = validate_matrix(m)
        ball = CayleyBall(m, 8)
        stack = [((), ball.matrix[()])]
        while stack:
            w, M = stack.pop()
            words += 1
            nf = ball.words[key(M)]
            if W.reduce(w) != nf or W.length(w) != len(nf):
                mismatches += 1
            if len(w) < 8:
                stack.extend((w + (i,), M @ ball.S[i]) for i in W.generators)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 30
    record(1, ok, f"{len(systems)} systems, {words} words, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_criterion_02_finite_group_orders():
    cases = {f"I2({m})": (dihedral(m), 2 * m) for m in range(2, 8)}
    cases["A3"] = (type_A(3), 24)
    cases["B3"] = (validate_matrix([[1, 4, 2], [4, 1, 3], [2, 3, 1]]), 48)
    cases["H3"] = (type_H3(), 120)
    wrong = []
    for name, (W, expected) in cases.items():
        got = len(W.enumerate_elements())
        if got != expected or oracle_order(W.entries()) != expected:
            wrong.append(f"{name}={got}")
    record(2, not wrong, f"{len(cases)} groups" + (f"; wrong: {wrong}" if wrong else ""))
    assert not wrong


def test_criterion_03_building_axioms(hexagon, fano):
    false_fails = []
    n_cayley = n_gp = 0
    for W in finite_rank3_or_less():
        n_cayley += 1
        if not verify_axioms(cayley_building(W)).ok:
            false_fails.append(f"cayley {W.entries()}")
    if not verify_axioms(fano).ok:
        false_fails.append("fano")
    groups = [cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
    for n in (1, 2, 3):
        pairs = list(itertools.combinations(range(n), 2))
        tuples = [(g,) * n for g in groups]
        if n > 1:
            tuples += [tuple(groups[:n]), tuple(groups[::-1][:n])]
        for mask in range(2 ** len(pairs)):
            gamma = [p for k, p in enumerate(pairs) if mask >> k & 1]
            for tup in tuples:
                for r in range(4):
                    n_gp += 1
                    b = graph_product_building(GraphProductSpec(tup, gamma), r)
                    if not verify_axioms(b).ok:
                        false_fails.append(f"graph product {n} {gamma} r={r}")
    mutants = twenty_mutations(hexagon, fano)
    false_passes = [name for name, b in mutants if verify_axioms(b).ok]
    ok = not false_fails and not false_passes and len(mutants) == 20
    record(3, ok, f"{n_cayley} Cayley + Fano + {n_gp} graph products pass; "
                  f"{len(mutants) - len(false_passes)}/{len(mutants)} mutations caught")
    assert ok, (false_fails, false_passes)


def test_criterion_04_delta_correctness(fano):
    bad = []
    pairs = 0
    for W in finite_rank3_or_less():
        b = cayley_building(W)
        for a in b.chambers:
            u = W.inverse(label_word(a))
            for c in b.chambers:
                pairs += 1
                if b.weyl_distance(a, c) != W.multiply(u, label_word(c)):
                    bad.append((W.entries(), a, c))
    for a in fano.chambers:
        dist = chamber_graph_distances(fano, a)
        for c in fano.chambers:
            pairs += 1
            if len(fano.weyl_distance(a, c)) != dist[c]:
                bad.append(("fano", a, c))
    record(4, not bad, f"{pairs} pairs checked, {len(bad)} wrong")
    assert not bad


def test_criterion_05_solomon_tits(hexagon):
    t0 = time.perf_counter()
    fano = fano_building()  # fresh: no cached distances from other tests
    hex_betti = homology_ranks(tits_realization(hexagon))
    fano_betti = homology_ranks(tits_realization(fano))
    opp = {opposite_count(fano, c) for c in fano.chambers}
    elapsed = time.perf_counter() - t0
    ok = hex_betti == [1, 1] and fano_betti == [1, 8] and opp == {8} and elapsed < 5
    record(5, ok, f"hexagon {hex_betti}, Fano {fano_betti}, opposite counts {sorted(opp)}, {elapsed:.2f}s")
    assert ok


def test_criterion_06_davis_realization(hexagon):
    D = davis_realization(hexagon)
    betti = homology_ranks(D)
    ok = betti[:2] == [1, 0] and not any(betti[2:]) and len(D.vertices) == 13
    record(6, ok, f"Betti {betti}, {len(D.vertices)} vertices")
    assert ok


def _is_color_isomorphic_to_cayley(b, apartment):
    W = b.system
    chart = apartment.chart
    if sorted(chart.values()) != sorted(apartment.chambers) or len(chart) != W.order():
        return False
    for w, c in chart.items():
        for i in W.generators:
            if chart[W.multiply(w, (i,))] not in b.adj[c][i]:
                return False
    return True


def test_criterion_07_apartments():
    t0 = time.perf_counter()
    fano = fano_building()
    apts = enumerate_apartments(fano)
    elapsed = time.perf_counter() - t0
    sizes = {len(A) for A in apts}
    iso = all(_is_color_isomorphic_to_cayley(fano, A) for A in apts)
    covered = all(any(a in A.chambers and c in A.chambers for A in apts)
                  for a in fano.chambers for c in fano.chambers)
    ok = len(apts) == 28 and sizes == {6} and iso and covered and elapsed < 60
    record(7, ok, f"{len(apts)} apartments of sizes {sorted(sizes)}, hexagon charts {iso}, "
                  f"all pairs covered {covered}, {elapsed:.2f}s")
    assert ok


def test_criterion_08_transitivity(fano):
    aut = automorphism_group(fano)
    weyl = is_weyl_transitive(aut).transitive
    strong = is_strongly_transitive_max_atlas(aut).transitive
    S = fano_singer_subgroup(fano)
    s_order = group_order(S)
    s_chamber = chamber_orbits(S).transitive
    s_weyl = is_weyl_transitive(S).transitive
    ok = aut.order == 168 and weyl and strong and s_order == 21 and s_chamber and not s_weyl
    record(8, ok, f"|Aut|={aut.order} Weyl={weyl} strong={strong}; "
                  f"order-{s_order} subgroup chamber-transitive={s_chamber} Weyl={s_weyl}")
    assert ok


def test_criterion_09_metric_closed_forms():
    t0 = time.perf_counter()
    square = MZeroComplex.from_edge_lengths(
        SimplicialComplex([("A", "B", "D"), ("B", "C", "D")]),
        {frozenset("AB"): 1, frozenset("AD"): 1, frozenset("BD"): math.sqrt(2),
         frozenset("BC"): 1, frozenset("CD"): 1})
    tris = MZeroComplex.regular(SimplicialComplex([("A", "B", "C"), ("B", "C", "D")]))
    V = ComplexPoint.vertex
    e2 = abs(intrinsic_distance(square, V("A"), V("C"), tol=1e-9) - math.sqrt(2))
    e3 = abs(intrinsic_distance(tris, V("A"), V("D"), tol=1e-9) - math.sqrt(3))
    single = MZeroComplex.regular(SimplicialComplex([("A", "B", "C")]))
    es = abs(vertex_separation(single) - math.sqrt(3) / 2)
    elapsed = time.perf_counter() - t0
    ok = e2 <= 1e-6 and e3 <= 1e-6 and es <= 1e-12 and elapsed < 10
    record(9, ok, f"errors sqrt2 {e2:.1e}, sqrt3 {e3:.1e}, separation {es:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_10_properness_dichotomy(hexagon, fano):
    star = GeneratedComplex(
        lambda v: ((0, k) for k in itertools.count(1)) if v == 0 else [(0, v)], declared_bound=64)
    rep = check_properness(star, ComplexPoint.vertex(0), 1.0)
    star_ok = (not rep.locally_finite and rep.partial and rep.ball_meets_at_least is not None
               and rep.ball_meets_at_least > rep.declared_bound)
    fixtures = {
        "glued triangles": MZeroComplex.regular(SimplicialComplex([("A", "B", "C"), ("B", "C", "D")])),
        "unit path": MZeroComplex.regular(SimplicialComplex([(k, k + 1) for k in range(5)])),
        "Davis hexagon": davis_metric_complex(hexagon),
        "Davis Fano": davis_metric_complex(fano),
    }
    finite_ok = []
    for name, mc in fixtures.items():
        x = ComplexPoint.vertex(mc.vertices[0])
        r = check_properness(mc, x, 1.5)
        facets = {frozenset(f) for f in mc.complex.facets}
        ball = r.ball_facets or []
        finite_ok.append(r.proper and not r.partial and ball
                         and all(frozenset(f) in facets for f in ball))
    ok = star_ok and all(finite_ok)
    record(10, ok, f"star: locally finite={rep.locally_finite}, ball meets >= {rep.ball_meets_at_least} "
                   f"simplices (bound {rep.declared_bound}); {sum(finite_ok)}/{len(fixtures)} finite fixtures proper")
    assert ok


def test_criterion_11_properness_certificate(fano):
    aut = automorphism_group(fano)
    c = fano.chambers[0]
    cert = properness_certificate(aut, [c], [c], depth=50)
    orbit = next(o for o in chamber_orbits(aut).orbits if fano.index[c] in o)
    ok = cert.closed and len(cert.elements) == 8 and len(orbit) * len(cert.elements) == 168
    record(11, ok, f"stabilizer {len(cert.elements)} (closed={cert.closed}, depth {cert.depth}), "
                   f"|orbit|*|stab| = {len(orbit) * len(cert.elements)}")
    assert ok

"""Compare the chamber metric l(delta) with the intrinsic metric of the Davis complex.

For each building, every pair of chamber vertices of the Davis realization
(all simplices regular with unit edges) is measured; the script prints the
extreme ratios d_chamber / d_intrinsic and the vertex separation.

    python3 scripts/bilipschitz_constants.py [--tol 1e-9]
"""
import argparse
import itertools
import time

from buildings.constructions import (GraphProductSpec, cayley_building, cyclic_group,
                                     fano_building, graph_product_building)
from buildings.coxeter import dihedral, type_A
from buildings.metric import ComplexPoint, davis_metric_complex, intrinsic_distance, vertex_separation


def instances():
    yield "hexagon", cayley_building(dihedral(3))
    yield "square", cayley_building(dihedral(2))
    yield "fano", fano_building()
    yield "A3 thin", cayley_building(type_A(3))
    yield "Z3*Z3 ball r=2", graph_product_building(GraphProductSpec([cyclic_group(3)] * 2), 2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    print(f"{'building':16s} {'pairs':>6s} {'min ratio':>10s} {'max ratio':>10s} {'eps':>8s} {'sec':>6s}")
    for name, b in instances():
        t0 = time.perf_counter()
        mc = davis_metric_complex(b)
        chambers = [v for v in mc.vertices if v.colors == ()]
        ratios = []
        for a, c in itertools.combinations(chambers, 2):
            d = intrinsic_distance(mc, ComplexPoint.vertex(a), ComplexPoint.vertex(c), args.tol)
            ratios.append(b.distance(a.chambers[0], c.chambers[0]) / d)
        print(f"{name:16s} {len(ratios):6d} {min(ratios):10.6f} {max(ratios):10.6f} "
              f"{vertex_separation(mc):8.5f} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()

"""Betti numbers of Tits and Davis realizations next to the opposite-chamber count.

    python3 scripts/solomon_tits_table.py
"""
from buildings.constructions import (cayley_building, fano_building, flag_building_from_incidence,
                                     projective_plane)
from buildings.coxeter import dihedral, type_A, type_B, type_H3
from buildings.realizations import (davis_realization, homology_ranks, opposite_count,
                                    tits_realization)


def instances():
    yield "I2(3) thin", cayley_building(dihedral(3))
    yield "I2(5) thin", cayley_building(dihedral(5))
    yield "A3 thin", cayley_building(type_A(3))
    yield "B3 thin", cayley_building(type_B(3))
    yield "H3 thin", cayley_building(type_H3())
    yield "PG(2,2) flags", fano_building()
    yield "PG(2,3) flags", flag_building_from_incidence(*projective_plane(3))


def main():
    print(f"{'building':14s} {'chambers':>8s} {'opposite':>8s}  {'Tits betti':18s} Davis betti")
    for name, b in instances():
        opp = {opposite_count(b, c) for c in b.chambers}
        tits = homology_ranks(tits_realization(b))
        davis = homology_ranks(davis_realization(b))
        print(f"{name:14s} {len(b):8d} {','.join(map(str, sorted(opp))):>8s}  {str(tits):18s} {davis}")


if __name__ == "__main__":
    main()

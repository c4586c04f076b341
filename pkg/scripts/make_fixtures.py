"""Regenerate the JSON fixtures in data/ (deterministic)."""
import json
import sys
from pathlib import Path

from buildings.actions import automorphism_group, fano_singer_subgroup
from buildings.constructions import (GraphProductSpec, cayley_building, cyclic_group, fano_building,
                                     fano_plane)
from buildings.coxeter import dihedral, type_A, type_B, type_H3, validate_matrix
from buildings.realizations import SimplicialComplex

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "data"


def dump(name, doc):
    (OUT / name).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def hexagon():
    # c0..c5 run around the 6-cycle starting at the identity
    b = cayley_building(dihedral(3))
    cycle = ["e", "0", "0.1", "0.1.0", "1.0", "1"]
    return b.relabel({w: f"c{k}" for k, w in enumerate(cycle)})


def main():
    OUT.mkdir(exist_ok=True)
    for name, W in [("i2_3", dihedral(3)), ("i2_inf", dihedral(0)), ("a1xa1", dihedral(2)),
                    ("a3", type_A(3)), ("b3", type_B(3)), ("h3", type_H3()),
                    ("affine_a2", validate_matrix([[1, 3, 3], [3, 1, 3], [3, 3, 1]]))]:
        dump(f"coxeter_{name}.json", W.to_json())
    dump("hexagon.json", hexagon().to_json())
    dump("square.json", cayley_building(dihedral(2)).to_json())
    fano = fano_building()
    dump("fano.json", fano.to_json())
    pts, lines = fano_plane()
    dump("fano_incidence.json", {"points": pts, "lines": lines})
    dump("fano_aut_action.json", automorphism_group(fano).to_json("fano.json"))
    dump("fano_singer_action.json", fano_singer_subgroup(fano).to_json("fano.json"))
    dump("graph_product_z3_z3.json", GraphProductSpec([cyclic_group(3), cyclic_group(3)]).to_json())
    dump("split_square.json", SimplicialComplex([("A", "B", "D"), ("B", "C", "D")]).to_json())
    r2 = 2 ** 0.5
    dump("split_square_shapes.json", {
        "shapes": [{"dim": 2, "edge_lengths": [[0, 1, 1], [1, 0, r2], [1, r2, 0]]}],
        # shape vertex 0 is the right-angle corner
        "assignment": [[["A", "B", "D"], 0, [0, 1, 2]], [["B", "C", "D"], 0, [1, 0, 2]]],
    })


if __name__ == "__main__":
    main()

"""Regenerate the bundled fixtures in src/hyperkube/data.

Every fixture is either written down directly, derived by moves, or found by
a seeded search, so running this script twice gives identical files.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from hyperkube.cube import cube_lift, cube_lifts, check_cube_crossings
from hyperkube.grid import validate_grid
from hyperkube.hmoves import hyper_commute, hyper_stabilize
from hyperkube.hypercube import hyper_project_grid, markings_from_sequences, validate_hypercube
from hyperkube.search import SearchSpec, repair_fixture, search_lifts

DATA = Path(__file__).resolve().parents[1] / "src" / "hyperkube" / "data"

# the marking table of the size-8 Hopf-linked tori, cells (coordinate - 1/2)
HOPF_TABLE = {
    "W": [(3, 0, 7, 7), (5, 1, 0, 0), (6, 2, 3, 1), (2, 3, 1, 4),
          (7, 4, 2, 2), (4, 5, 4, 6), (1, 6, 5, 5), (0, 7, 6, 3)],
    "X": [(3, 2, 3, 1), (5, 3, 1, 4), (7, 4, 2, 2), (2, 7, 5, 5),
          (7, 5, 4, 6), (4, 0, 7, 7), (1, 7, 6, 3), (0, 1, 0, 0)],
    "Y": [(3, 0, 3, 1), (5, 1, 1, 4), (6, 2, 2, 2), (2, 3, 5, 5),
          (7, 4, 4, 6), (4, 5, 7, 7), (1, 6, 6, 3), (0, 7, 0, 0)],
    "Z": [(3, 0, 7, 1), (5, 1, 0, 4), (6, 2, 3, 2), (2, 3, 1, 5),
          (7, 4, 3, 6), (4, 5, 4, 7), (1, 6, 5, 3), (0, 7, 6, 0)],
}


def write(name: str, obj: dict, note: str) -> None:
    out = {"note": note}
    out.update(obj)
    (DATA / name).write_text(json.dumps(out, indent=1) + "\n")
    print("wrote", name)


def main() -> int:
    DATA.mkdir(exist_ok=True)

    unknot2 = validate_grid(2, [0, 1], [1, 0])
    trefoil5 = validate_grid(5, [0, 1, 2, 3, 4], [3, 4, 0, 1, 2])
    hopf4 = validate_grid(4, [0, 1, 2, 3], [2, 3, 0, 1])
    write("unknot_grid.json", unknot2.to_json(), "size-2 unknot grid")
    write("trefoil_grid.json", trefoil5.to_json(), "diagonal size-5 trefoil grid")
    write("hopf_grid.json", hopf4.to_json(), "size-4 Hopf link grid")

    m = markings_from_sequences((1, 0), (0, 1), (0, 1), (0, 1))
    std = validate_hypercube(2, m.W, m.X, m.Y, m.Z)
    write("standard_torus.json", std.to_json(), "standard torus, size 2")
    stab = hyper_stabilize(std, 0)
    write("standard_torus_stabilized.json", stab.to_json(),
          "standard torus stabilized at its first W marking")
    comm = hyper_commute(hyper_commute(stab, "x", 0), "w", 0)
    write("standard_torus_commuted.json", comm.to_json(),
          "the stabilized standard torus after commuting x levels 0,1 then w levels 0,1")

    # two standard tori, one in each diagonal block
    shifted = {lbl: [tuple(c + 2 for c in p) for p in pts] for lbl, pts in std.families().items()}
    two = validate_hypercube(4, *(list(std.families()[l]) + shifted[l] for l in "WXYZ"))
    write("two_tori.json", two.to_json(), "two unlinked standard tori in block form")

    res = search_lifts(SearchSpec(5, target_wx=trefoil5, predicate="unknot",
                                  class_filter="embedded", budget=5000, seed=1))
    write("trefoil.json", res.hits[0].diagram.to_json(),
          "embedded torus over the size-5 trefoil grid with an unknotted yz projection "
          f"(search seed 1, candidate {res.hits[0].index})")

    res = search_lifts(SearchSpec(4, target_wx=hopf4, predicate="split2",
                                  class_filter="embedded", budget=5000, seed=0))
    write("once_linked.json", res.hits[0].diagram.to_json(),
          "two embedded tori: Hopf link in wx, split unknots in yz "
          f"(search seed 0, candidate {res.hits[0].index})")

    write("hopf_table.json", {"size": 8, "table": {k: [list(p) for p in v] for k, v in HOPF_TABLE.items()}},
          "the published Hopf-linked marking table, inconsistent as printed; input to repair")
    hopf = repair_fixture(HOPF_TABLE, 8, 4)[0]
    write("hopf_linked.json", hopf.to_json(),
          "Hopf-linked tori: best repair of hopf_table.json (3 chains, 3 coordinates edited)")

    cube = next(cube_lifts(trefoil5))
    write("cube_trefoil.json", cube.to_json(), "the crossing-valid cube over the size-5 trefoil grid")
    levels = [p[2] for p in cube.X]
    rows = [p[1] for p in cube.X]
    z_of_row = dict(zip(rows, levels))
    for a in range(5):
        for b in range(a + 1, 5):
            lv = [z_of_row[r] for r in range(5)]
            lv[a], lv[b] = lv[b], lv[a]
            bad = cube_lift(trefoil5, lv)
            viol = check_cube_crossings(bad).planes()
            if viol == ["xy"]:
                write("cube_zflip.json", bad.to_json(),
                      f"cube_trefoil with the z-levels of rows {a} and {b} exchanged")
                break
        else:
            continue
        break

    amalgam = DATA / "amalgam.json"
    if not amalgam.exists():
        print("amalgam.json is produced by scripts/find_amalgam.py", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

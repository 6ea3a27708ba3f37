"""Hypercube diagrams: four marking families in the 4D cell lattice.

Coordinates are ordered ``(w, x, y, z)`` and markings are integer cells.
Segments run W->X parallel to w, X->Y parallel to x, Y->Z parallel to y and
Z->W parallel to z.  Each family is kept sorted so that equal marking sets
compare equal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cube import CubeDiagram, check_cube_crossings, cube_project_grid, right_angle_vertex
from .errors import (
    CrossingViolation,
    CubeCountViolation,
    MalformedSchematic,
    OpenChain,
    RightAngleViolation,
    UnpairedMarking,
    VertexLabelViolation,
)
from .grid import GridDiagram

Point4 = Tuple[int, int, int, int]
AXES = "wxyz"
LABELS = "WXYZ"

# flat (named by its two long axes) -> required vertex marking
_FLAT_VERTEX = {frozenset("zw"): "W", frozenset("wx"): "X",
                frozenset("xy"): "Y", frozenset("yz"): "Z"}


def _as_points(pts) -> Tuple[Point4, ...]:
    return tuple(sorted(tuple(int(c) for c in p) for p in pts))


@dataclass(frozen=True)
class MarkingSet:
    """Four marking families, not yet checked against any condition."""
    size: int
    W: Tuple[Point4, ...]
    X: Tuple[Point4, ...]
    Y: Tuple[Point4, ...]
    Z: Tuple[Point4, ...]

    def families(self) -> Dict[str, Tuple[Point4, ...]]:
        return {"W": self.W, "X": self.X, "Y": self.Y, "Z": self.Z}

    def to_json(self) -> dict:
        d = {"size": self.size}
        for lbl, pts in self.families().items():
            d[lbl] = [list(p) for p in pts]
        return d


@dataclass(frozen=True)
class HypercubeDiagram(MarkingSet):
    """A marking set that passed :func:`validate_hypercube`.

    ``succ[L][i]`` is the index (in the next family) of the marking the
    segment leaving marking ``L[i]`` ends at.
    """
    succ: Dict[str, Tuple[int, ...]] = field(default=None, compare=False, repr=False, hash=False)

    @classmethod
    def from_json(cls, d: dict) -> "HypercubeDiagram":
        return validate_hypercube(d["size"], d["W"], d["X"], d["Y"], d["Z"])

    def marking_set(self) -> MarkingSet:
        return MarkingSet(self.size, self.W, self.X, self.Y, self.Z)


def _pairing(src: Sequence[Point4], dst: Sequence[Point4], axis: int, names: str):
    keep = [k for k in range(4) if k != axis]
    index = {tuple(p[k] for k in keep): j for j, p in enumerate(dst)}
    out = []
    for i, p in enumerate(src):
        j = index.get(tuple(p[k] for k in keep))
        if j is None:
            raise UnpairedMarking(f"{names[0]} marking {p} has no {names[1]} partner "
                                  f"along the {AXES[axis]}-axis")
        out.append(j)
    return tuple(out)


def check_markings(size: int, W, X, Y, Z) -> MarkingSet:
    """Marking conditions only; returns the canonicalised marking set."""
    n = size
    fams = {"W": _as_points(W), "X": _as_points(X), "Y": _as_points(Y), "Z": _as_points(Z)}
    for lbl, pts in fams.items():
        if len(pts) != n or any(len(p) != 4 or not all(0 <= c < n for c in p) for p in pts):
            raise CubeCountViolation(f"need {n} {lbl} markings inside the hypercube")
    for k in range(4):
        for lbl, pts in fams.items():
            if sorted(p[k] for p in pts) != list(range(n)):
                raise CubeCountViolation(
                    f"some cube thin in {AXES[k]} does not hold exactly one {lbl} marking")
    for a in range(4):
        for v in range(n):
            cube = {lbl: next(p for p in pts if p[a] == v) for lbl, pts in fams.items()}
            three = []
            for b in range(4):
                if b == a:
                    continue
                groups: Dict[int, List[str]] = {}
                for lbl, p in cube.items():
                    groups.setdefault(p[b], []).append(lbl)
                three += [(b, g) for g in groups.values() if len(g) == 3]
            if len(three) != 2:
                raise CubeCountViolation(
                    f"cube {AXES[a]}={v} has {len(three)} flats with three markings, expected 2")
            for b, lbls in three:
                long_axes = [k for k in range(4) if k not in (a, b)]
                pts = {lbl: cube[lbl] for lbl in lbls}
                vert = right_angle_vertex(pts, long_axes)
                name = "".join(AXES[k] for k in long_axes)
                if vert is None:
                    raise RightAngleViolation(f"{name}-flat in cube {AXES[a]}={v}: {pts}")
                want = _FLAT_VERTEX.get(frozenset(name))
                if want != vert:
                    raise VertexLabelViolation(
                        f"{name}-flat in cube {AXES[a]}={v}: vertex {vert}, expected {want}")
    return MarkingSet(n, fams["W"], fams["X"], fams["Y"], fams["Z"])


def _pairings(m: MarkingSet) -> Dict[str, Tuple[int, ...]]:
    return {
        "W": _pairing(m.W, m.X, 0, "WX"),
        "X": _pairing(m.X, m.Y, 1, "XY"),
        "Y": _pairing(m.Y, m.Z, 2, "YZ"),
        "Z": _pairing(m.Z, m.W, 3, "ZW"),
    }


def _cube_xyz(m: MarkingSet) -> CubeDiagram:
    # W-X pairs merge into the X marking
    return CubeDiagram(m.size, tuple(p[1:] for p in m.X), tuple(p[1:] for p in m.Y),
                       tuple(p[1:] for p in m.Z), "xyz")


def _cube_wxz(m: MarkingSet) -> CubeDiagram:
    # Y-Z pairs merge into the Z marking; roles (w, x, z) <- (W, X, Z)
    def drop_y(p):
        return (p[0], p[1], p[3])
    return CubeDiagram(m.size, tuple(map(drop_y, m.W)), tuple(map(drop_y, m.X)),
                       tuple(map(drop_y, m.Z)), "wxz")


def crossing_violations(m: MarkingSet):
    """All crossing-condition failures of the four grid projections."""
    rep1 = check_cube_crossings(_cube_xyz(m), (0, 2))   # G_yz, G_xy
    rep2 = check_cube_crossings(_cube_wxz(m), (2, 1))   # G_wx, G_zw
    return rep1.violations + rep2.violations


def validate_hypercube(size: int, W, X, Y, Z, check_crossings: bool = True) -> HypercubeDiagram:
    m = check_markings(size, W, X, Y, Z)
    succ = _pairings(m)
    if check_crossings:
        bad = crossing_violations(m)
        if bad:
            plane, s1, s2 = bad[0]
            raise CrossingViolation(plane, (s1, s2), f"segments {s1} and {s2} cross the wrong way")
    return HypercubeDiagram(m.size, m.W, m.X, m.Y, m.Z, succ)


def hyper_project_cube(h: MarkingSet, axis: str) -> CubeDiagram:
    """Project out ``w`` (giving C_xyz) or ``y`` (giving C_wxz)."""
    if axis == "w":
        return _cube_xyz(h)
    if axis == "y":
        return _cube_wxz(h)
    raise ValueError(f"only w and y projections are used, got {axis!r}")


_GRID_SOURCE = {"xy": ("w", "xy"), "yz": ("w", "yz"), "wx": ("y", "wx"), "zw": ("y", "zw")}


def hyper_project_grid(h: MarkingSet, plane: str) -> GridDiagram:
    if plane not in _GRID_SOURCE:
        raise ValueError(f"plane must be one of {sorted(_GRID_SOURCE)}, got {plane!r}")
    axis, name = _GRID_SOURCE[plane]
    return cube_project_grid(hyper_project_cube(h, axis), name)


@dataclass(frozen=True)
class Hyperlink:
    """Closed loops of the hyperlink; each loop lists W indices in order."""
    components: Tuple[Tuple[int, ...], ...]
    marking_count: Tuple[int, ...]
    loops: Tuple[Tuple[Tuple[str, int], ...], ...]

    def component_of(self, label: str) -> List[int]:
        """Component index for every marking of one family."""
        n = sum(self.marking_count)
        out = [-1] * n
        for ci, loop in enumerate(self.loops):
            for lbl, i in loop:
                if lbl == label:
                    out[i] = ci
        return out

    def __len__(self):
        return len(self.components)


def trace_hyperlink(h: HypercubeDiagram) -> Hyperlink:
    succ = h.succ if h.succ is not None else _pairings(h)
    n = h.size
    seen = [False] * n
    comps, loops = [], []
    for start in range(n):
        if seen[start]:
            continue
        ws, loop = [], []
        i = start
        steps = 0
        while not seen[i]:
            seen[i] = True
            ws.append(i)
            x = succ["W"][i]
            y = succ["X"][x]
            z = succ["Y"][y]
            loop += [("W", i), ("X", x), ("Y", y), ("Z", z)]
            i = succ["Z"][z]
            steps += 1
            if steps > n:
                raise OpenChain("hyperlink does not close")
        if i != start:
            raise OpenChain(f"loop from W[{start}] does not return to it")
        comps.append(tuple(ws))
        loops.append(tuple(loop))
    return Hyperlink(tuple(comps), tuple(len(c) for c in comps), tuple(loops))


def grid_components(h: HypercubeDiagram, plane: str) -> List[int]:
    """Hyperlink component of every row of the ``wx`` or ``yz`` projection."""
    link = trace_hyperlink(h)
    if plane == "wx":
        comp = link.component_of("W")
        return [comp[i] for i, _ in sorted(enumerate(h.W), key=lambda t: t[1][1])]
    if plane == "yz":
        comp = link.component_of("Y")
        return [comp[i] for i, _ in sorted(enumerate(h.Y), key=lambda t: t[1][3])]
    raise ValueError(plane)


def generate_markings(n: int, seed=None, rng: Optional[random.Random] = None,
                      wx: Optional[GridDiagram] = None) -> MarkingSet:
    """Random marking set following the five placement steps.

    The yz-flats holding W markings form a permutation ``f``; X markings sit
    in flat columns ``g`` with ``g[r] != f[r]``.  Y and Z then close the right
    angles.  Passing ``wx`` pins ``f`` and ``g`` to that grid.  Crossing
    conditions are not enforced.
    """
    if n < 2:
        raise ValueError("hypercube size must be at least 2")
    rng = rng or random.Random(seed)
    if wx is not None:
        if wx.size != n:
            raise ValueError("target grid size differs from n")
        f, g = list(wx.x_col), list(wx.y_col)
    else:
        f = list(range(n))
        rng.shuffle(f)
        while True:
            g = list(range(n))
            rng.shuffle(g)
            if all(g[i] != f[i] for i in range(n)):
                break
    ys = list(range(n))
    zs = list(range(n))
    rng.shuffle(ys)
    rng.shuffle(zs)
    return markings_from_sequences(f, g, ys, zs)


def markings_from_sequences(f: Sequence[int], g: Sequence[int],
                            ys: Sequence[int], zs: Sequence[int]) -> MarkingSet:
    """Marking set with W markings at ``(f[r], r, ys[r], zs[r])`` whose
    W->X segment ends in flat column ``g[r]``."""
    n = len(f)
    f_inv = {c: r for r, c in enumerate(f)}
    W, X, Y, Z = [], [], [], []
    for r in range(n):
        nxt = f_inv[g[r]]
        W.append((f[r], r, ys[r], zs[r]))
        X.append((g[r], r, ys[r], zs[r]))
        Y.append((g[r], nxt, ys[r], zs[r]))
        Z.append((g[r], nxt, ys[nxt], zs[r]))
    return MarkingSet(n, _as_points(W), _as_points(X), _as_points(Y), _as_points(Z))


def render_schematic(h: MarkingSet) -> str:
    """Panels of yz-flats: panel rows run x = n-1 .. 0 (separated by blank
    lines), panel columns w = 0 .. n-1; inside a panel, columns are y and rows
    run z = n-1 .. 0."""
    n = h.size
    glyph = {}
    for lbl, pts in h.families().items():
        for p in pts:
            glyph[p] = lbl
    out = [f"hypercube n={n}"]
    for x in reversed(range(n)):
        out.append("")
        for z in reversed(range(n)):
            panels = []
            for w in range(n):
                panels.append(" ".join(glyph.get((w, x, y, z), ".") for y in range(n)))
            out.append(" | ".join(panels))
    return "\n".join(out) + "\n"


def parse_schematic(text: str) -> MarkingSet:
    lines = [ln.rstrip() for ln in text.strip("\n").splitlines()]
    if not lines or not lines[0].startswith("hypercube n="):
        raise MalformedSchematic("missing 'hypercube n=' header")
    try:
        n = int(lines[0].split("=", 1)[1])
    except ValueError as exc:
        raise MalformedSchematic(f"bad header {lines[0]!r}") from exc
    body = [ln for ln in lines[1:] if not ln.startswith("#")]
    blocks, cur = [], []
    for ln in body:
        if ln.strip():
            cur.append(ln)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    if len(blocks) != n or any(len(b) != n for b in blocks):
        raise MalformedSchematic(f"expected {n} panel rows of {n} lines each")
    fams: Dict[str, List[Point4]] = {lbl: [] for lbl in LABELS}
    for bi, block in enumerate(blocks):
        x = n - 1 - bi
        for li, ln in enumerate(block):
            z = n - 1 - li
            panels = ln.split("|")
            if len(panels) != n:
                raise MalformedSchematic(f"line {ln!r}: expected {n} panels")
            for w, panel in enumerate(panels):
                cells = panel.split()
                if len(cells) != n:
                    raise MalformedSchematic(f"panel {panel!r}: expected {n} cells")
                for y, ch in enumerate(cells):
                    if ch in fams:
                        fams[ch].append((w, x, y, z))
                    elif ch != ".":
                        raise MalformedSchematic(f"unknown glyph {ch!r}")
    return MarkingSet(n, *(_as_points(fams[lbl]) for lbl in LABELS))

"""Three-dimensional cube diagrams.

Markings are integer cells ``(c0, c1, c2)`` in the coordinates named by
``axes`` (``"xyz"`` for an honest cube diagram; the hypercube module builds
``"xyz"`` and ``"wxz"`` structures from its two 3D projections).  Marking
roles follow the segment rule: X starts the segment parallel to axis 0, Y
the one parallel to axis 1 and Z the one parallel to axis 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import (
    FlatCountViolation,
    ProjectionNotGrid,
    RightAngleViolation,
    VertexLabelViolation,
)
from .grid import GridDiagram

Point3 = Tuple[int, int, int]

# a flat thin in axis k must have its right angle at this marking
_VERTEX_FOR_THIN_AXIS = {0: "Z", 1: "X", 2: "Y"}


@dataclass(frozen=True)
class CubeDiagram:
    """Marking-valid cube structure (crossing conditions checked separately)."""
    size: int
    X: Tuple[Point3, ...]
    Y: Tuple[Point3, ...]
    Z: Tuple[Point3, ...]
    axes: str = "xyz"

    def markings(self) -> Dict[str, Tuple[Point3, ...]]:
        return {"X": self.X, "Y": self.Y, "Z": self.Z}

    def to_json(self) -> dict:
        d = {"size": self.size, "X": [list(p) for p in self.X],
             "Y": [list(p) for p in self.Y], "Z": [list(p) for p in self.Z]}
        if self.axes != "xyz":
            d["axes"] = self.axes
        return d

    @classmethod
    def from_json(cls, d: dict) -> "CubeDiagram":
        return validate_cube_markings(d["size"], d["X"], d["Y"], d["Z"], d.get("axes", "xyz"))

    def segments(self) -> List[Tuple[int, Point3, Point3]]:
        """(parallel axis, start, end) for every segment X->Y, Y->Z, Z->X."""
        segs = []
        y_by_c2 = {p[2]: p for p in self.Y}
        z_by_c0 = {p[0]: p for p in self.Z}
        x_by_c1 = {p[1]: p for p in self.X}
        for p in self.X:
            segs.append((0, p, y_by_c2[p[2]]))
        for p in self.Y:
            segs.append((1, p, z_by_c0[p[0]]))
        for p in self.Z:
            segs.append((2, p, x_by_c1[p[1]]))
        return segs


def right_angle_vertex(points: Dict[str, Sequence[int]], free: Sequence[int]):
    """Label of the marking at the corner of an axis-parallel right angle
    formed by three points, looking only at coordinates ``free``; None if
    the points do not form one."""
    a, b = free
    for v, pv in points.items():
        others = [p for lbl, p in points.items() if lbl != v]
        diffs = []
        for p in others:
            d = [k for k in (a, b) if p[k] != pv[k]]
            if len(d) != 1:
                break
            diffs.append(d[0])
        else:
            if sorted(diffs) == sorted((a, b)):
                return v
    return None


def validate_cube_markings(size: int, X, Y, Z, axes: str = "xyz") -> CubeDiagram:
    n = size
    fams = {"X": [tuple(int(c) for c in p) for p in X],
            "Y": [tuple(int(c) for c in p) for p in Y],
            "Z": [tuple(int(c) for c in p) for p in Z]}
    for lbl, pts in fams.items():
        if len(pts) != n or any(len(p) != 3 or not all(0 <= c < n for c in p) for p in pts):
            raise FlatCountViolation(f"need {n} {lbl} markings inside the cube")
    for k in range(3):
        for lbl, pts in fams.items():
            levels = sorted(p[k] for p in pts)
            if levels != list(range(n)):
                raise FlatCountViolation(
                    f"{axes[k]}-flats do not each hold exactly one {lbl} marking")
    for k in range(3):
        free = [j for j in range(3) if j != k]
        for v in range(n):
            pts = {lbl: next(p for p in fam if p[k] == v) for lbl, fam in fams.items()}
            vert = right_angle_vertex(pts, free)
            if vert is None:
                raise RightAngleViolation(f"{axes[k]}-flat {v}: markings {pts} form no right angle")
            if vert != _VERTEX_FOR_THIN_AXIS[k]:
                raise VertexLabelViolation(
                    f"{axes[k]}-flat {v}: right angle at {vert}, expected {_VERTEX_FOR_THIN_AXIS[k]}")
    return CubeDiagram(n, tuple(fams["X"]), tuple(fams["Y"]), tuple(fams["Z"]), axes)


@dataclass(frozen=True)
class CrossingReport:
    """Violations of the crossing conditions, per projection plane."""
    violations: Tuple[Tuple[str, Tuple[Point3, Point3], Tuple[Point3, Point3]], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def planes(self) -> List[str]:
        return [v[0] for v in self.violations]


def _plane_name(axes: str, drop: int) -> str:
    return {2: axes[0] + axes[1], 0: axes[1] + axes[2], 1: axes[2] + axes[0]}[drop]


def check_cube_crossings(c: CubeDiagram, drops: Sequence[int] = (2, 0, 1)) -> CrossingReport:
    """Check crossing conditions for the projections dropping each axis in
    ``drops``.  In the plane (a, b) obtained by dropping axis d, the segment
    parallel to b must be deeper (larger coordinate d) than the one parallel
    to a.  Touching segments count as violations."""
    segs = c.segments()
    bad = []
    for d in drops:
        a, b = (d + 1) % 3, (d + 2) % 3
        under = [s for s in segs if s[0] == a]
        over = [s for s in segs if s[0] == b]
        for _, p0, p1 in under:
            lo_a, hi_a = sorted((p0[a], p1[a]))
            for _, q0, q1 in over:
                lo_b, hi_b = sorted((q0[b], q1[b]))
                if lo_a < q0[a] < hi_a and lo_b < p0[b] < hi_b:
                    if not p0[d] < q0[d]:
                        bad.append((_plane_name(c.axes, d), (p0, p1), (q0, q1)))
    return CrossingReport(tuple(bad))


def cube_project_grid(c: CubeDiagram, plane: str) -> GridDiagram:
    """Project to the plane named by two of ``c.axes`` (ab, bc or ca)."""
    names = {_plane_name(c.axes, d): d for d in range(3)}
    generic = {"xy": 2, "yz": 0, "zx": 1}
    if plane in names:
        d = names[plane]
    elif plane in generic:
        d = generic[plane]
    else:
        raise ValueError(f"unknown plane {plane!r} for axes {c.axes}")
    rep = check_cube_crossings(c, (d,))
    if not rep.ok:
        raise ProjectionNotGrid(f"crossing condition fails in plane {_plane_name(c.axes, d)}: "
                                f"{rep.violations[0][1:]}")
    n = c.size
    a, b = (d + 1) % 3, (d + 2) % 3
    # first-role marking starts the segment parallel to axis a; the marking
    # whose segment is parallel to d merges into it
    role = {0: c.X, 1: c.Y, 2: c.Z}
    first, second = role[a], role[b]
    x_col = [0] * n
    y_col = [0] * n
    for p in first:
        x_col[p[b]] = p[a]
    for p in second:
        y_col[p[b]] = p[a]
    name = _plane_name(c.axes, d)
    return GridDiagram(n, tuple(x_col), tuple(y_col), name, name)


def reconstruct_cube(g_ab: GridDiagram, g_bc: GridDiagram, axes: str = "xyz") -> CubeDiagram:
    """Rebuild a cube from its projections dropping axis 2 and axis 0."""
    n = g_ab.size
    # Y sits at (g_ab.y_col[b], b, c) where g_bc.x_col[c] == b
    c_of_b = {g_bc.x_col[cc]: cc for cc in range(n)}
    Y = [(g_ab.y_col[b], b, c_of_b[b]) for b in range(n)]
    X = [(g_ab.x_col[b], b, c_of_b[b]) for b in range(n)]
    y_by_c = {p[2]: p for p in Y}
    Z = [(y_by_c[cc][0], g_bc.y_col[cc], cc) for cc in range(n)]
    return validate_cube_markings(n, X, Y, Z, axes)


def cube_lift(g: GridDiagram, levels: Sequence[int]) -> CubeDiagram:
    """The cube over the xy grid ``g`` whose row ``b`` sits at z-level
    ``levels[b]``; raises if the marking conditions fail."""
    n = g.size
    x_row = {c: r for r, c in enumerate(g.x_col)}
    X = [(g.x_col[b], b, levels[b]) for b in range(n)]
    Y = [(g.y_col[b], b, levels[b]) for b in range(n)]
    Z = [(g.y_col[b], x_row[g.y_col[b]], levels[b]) for b in range(n)]
    return validate_cube_markings(n, X, Y, Z)


def cube_lifts(g: GridDiagram):
    """Every crossing-valid cube over ``g`` (exhaustive over z-levels)."""
    from itertools import permutations
    from .errors import ValidationError
    for levels in permutations(range(g.size)):
        try:
            c = cube_lift(g, levels)
        except ValidationError:
            continue
        if check_cube_crossings(c).ok:
            yield c

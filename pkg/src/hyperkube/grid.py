"""Oriented planar grid diagrams.

A grid of size ``n`` is stored row-major: ``x_col[r]`` is the column of the
X marking in row ``r`` and ``y_col[r]`` the column of the Y marking.  Cells
are integer indices; the marking in cell ``(c, r)`` sits at the half-integer
point ``(c + 1/2, r + 1/2)``.

X markings start segments parallel to the first (column) axis, Y markings
start segments parallel to the second (row) axis.  ``plane`` names the two
coordinate axes of the grid (columns first) and ``axis_order`` is the chosen
orientation of the grid.  When ``axis_order == plane`` the segments parallel
to the row axis (the vertical ones) are over-strands; reversing the order
mirrors the link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import (
    BadComponentIndex,
    DuplicateInColumn,
    DuplicateInRow,
    IllegalCommutation,
    InvalidRow,
    SharedCell,
)

__all__ = [
    "GridDiagram",
    "LinkComponents",
    "Crossing",
    "validate_grid",
    "trace_components",
    "resolve_crossings",
    "linking_number",
    "mirror",
    "grid_stabilize",
    "grid_destabilize",
    "grid_commute",
    "render_grid_ascii",
]


_CANONICAL_PLANES = ("xy", "wx", "yz", "zw", "zx")


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class GridDiagram:
    size: int
    x_col: Tuple[int, ...]
    y_col: Tuple[int, ...]
    axis_order: str = "xy"
    plane: str = "xy"
    _x_row: Tuple[int, ...] = field(default=(), repr=False, compare=False)
    _y_row: Tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        n = self.size
        x_col = tuple(int(c) for c in self.x_col)
        y_col = tuple(int(c) for c in self.y_col)
        object.__setattr__(self, "x_col", x_col)
        object.__setattr__(self, "y_col", y_col)
        if not isinstance(n, int) or n < 1:
            raise DuplicateInRow(f"size must be a positive integer, got {n!r}")
        if len(x_col) != n or len(y_col) != n:
            raise DuplicateInRow(
                f"expected {n} rows, got {len(x_col)} X and {len(y_col)} Y entries")
        if len(self.plane) != 2 or sorted(self.axis_order) != sorted(self.plane):
            raise ValueError(f"axis order {self.axis_order!r} does not match plane {self.plane!r}")
        x_row = [-1] * n
        y_row = [-1] * n
        for r in range(n):
            for col, rows, label in ((x_col[r], x_row, "X"), (y_col[r], y_row, "Y")):
                if not 0 <= col < n:
                    raise DuplicateInColumn(f"{label} marking of row {r} in column {col} outside grid")
                if rows[col] != -1:
                    raise DuplicateInColumn(
                        f"column {col} holds two {label} markings (rows {rows[col]} and {r})")
                rows[col] = r
        for r in range(n):
            if x_col[r] == y_col[r]:
                raise SharedCell(f"row {r}: X and Y share cell ({x_col[r]}, {r})")
        object.__setattr__(self, "_x_row", tuple(x_row))
        object.__setattr__(self, "_y_row", tuple(y_row))

    @property
    def over_vertical(self) -> bool:
        """True when segments parallel to the row axis cross over."""
        return self.axis_order == self.plane

    def x_row(self, col: int) -> int:
        """Row of the X marking in column ``col``."""
        return self._x_row[col]

    def y_row(self, col: int) -> int:
        return self._y_row[col]

    def x_cells(self) -> List[Tuple[int, int]]:
        return [(self.x_col[r], r) for r in range(self.size)]

    def y_cells(self) -> List[Tuple[int, int]]:
        return [(self.y_col[r], r) for r in range(self.size)]

    def to_json(self) -> dict:
        d = {"size": self.size, "xCol": list(self.x_col), "yCol": list(self.y_col),
             "axisOrder": self.axis_order}
        if self.plane != "xy":
            d["plane"] = self.plane
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GridDiagram":
        order = d.get("axisOrder", "xy")
        plane = d.get("plane")
        if plane is None:
            plane = order[::-1] if order[::-1] in _CANONICAL_PLANES else order
        return validate_grid(d["size"], d["xCol"], d["yCol"], order, plane)


def validate_grid(size: int, x_col: Sequence[int], y_col: Sequence[int],
                  axis_order: str = "xy", plane: Optional[str] = None) -> GridDiagram:
    """Build a grid, raising the first violated marking condition."""
    if plane is None:
        plane = axis_order
    return GridDiagram(size, tuple(x_col), tuple(y_col), axis_order, plane)


@dataclass(frozen=True)
class LinkComponents:
    """Cyclic marking sequences; each entry lists rows in traversal order.

    A row stands for both its X marking and the Y marking joined to it by
    the horizontal segment.
    """
    components: Tuple[Tuple[int, ...], ...]
    marking_count: Tuple[int, ...]

    def component_of_row(self) -> List[int]:
        out = [0] * sum(self.marking_count)
        for i, rows in enumerate(self.components):
            for r in rows:
                out[r] = i
        return out

    def __len__(self):
        return len(self.components)


def trace_components(g: GridDiagram) -> LinkComponents:
    """Follow X -> Y (horizontal) -> X (vertical) until every row is used."""
    seen = [False] * g.size
    comps = []
    for start in range(g.size):
        if seen[start]:
            continue
        cyc = []
        r = start
        while not seen[r]:
            seen[r] = True
            cyc.append(r)
            r = g.x_row(g.y_col[r])
        comps.append(tuple(cyc))
    return LinkComponents(tuple(comps), tuple(len(c) for c in comps))


@dataclass(frozen=True)
class Crossing:
    position: Tuple[int, int]   # (column, row) cell where the strands cross
    over_axis: str              # plane axis the over-strand is parallel to
    sign: int
    row: int                    # row of the horizontal strand
    column: int                 # column of the vertical strand


def resolve_crossings(g: GridDiagram) -> List[Crossing]:
    n = g.size
    out = []
    for r in range(n):
        a, b = g.x_col[r], g.y_col[r]
        dx = _sign(b - a)
        lo, hi = min(a, b), max(a, b)
        for c in range(lo + 1, hi):
            ry, rx = g.y_row(c), g.x_row(c)
            if min(ry, rx) < r < max(ry, rx):
                dy = _sign(rx - ry)
                if g.over_vertical:
                    sign, axis = -dx * dy, g.plane[1]
                else:
                    sign, axis = dx * dy, g.plane[0]
                out.append(Crossing((c, r), axis, sign, r, c))
    return out


def linking_number(g: GridDiagram, i: int, j: int) -> int:
    comps = trace_components(g)
    k = len(comps)
    if i == j or not (0 <= i < k and 0 <= j < k):
        raise BadComponentIndex(f"need distinct component indices in [0, {k}), got ({i}, {j})")
    of_row = comps.component_of_row()
    total = 0
    for cr in resolve_crossings(g):
        pair = {of_row[cr.row], of_row[g.y_row(cr.column)]}
        if pair == {i, j}:
            total += cr.sign
    return total // 2


def mirror(g: GridDiagram) -> GridDiagram:
    return GridDiagram(g.size, g.x_col, g.y_col, g.axis_order[::-1], g.plane)


def grid_stabilize(g: GridDiagram, row: int, corner: int = 0) -> GridDiagram:
    """Split ``row`` in two and insert a column between its X and Y.

    ``corner`` packs two choices: bit 0 puts the new column next to the X
    (0) or the Y (1) marking; bit 1 puts X in the lower (0) or upper (1) of
    the two new rows.
    """
    n = g.size
    if not 0 <= row < n:
        raise InvalidRow(f"row {row} outside grid of size {n}")
    if corner not in (0, 1, 2, 3):
        raise InvalidRow(f"corner choice must be 0..3, got {corner}")
    a, b = g.x_col[row], g.y_col[row]
    if corner & 1 == 0:
        p = a + 1 if a < b else a
    else:
        p = b if a < b else b + 1

    def col(c):
        return c + 1 if c >= p else c

    x_new, y_new = [], []
    for r in range(n):
        if r == row:
            lower = (col(a), p)   # X row: X stays, Y' in new column
            upper = (p, col(b))   # Y row: X' in new column, Y stays
            if corner & 2:
                lower, upper = upper, lower
            x_new += [lower[0], upper[0]]
            y_new += [lower[1], upper[1]]
        else:
            x_new.append(col(g.x_col[r]))
            y_new.append(col(g.y_col[r]))
    return GridDiagram(n + 1, tuple(x_new), tuple(y_new), g.axis_order, g.plane)


def grid_destabilize(g: GridDiagram, column: int) -> GridDiagram:
    """Remove ``column`` when its X and Y sit in adjacent rows forming a
    three-marking 2x2 block; exact inverse of :func:`grid_stabilize`."""
    n = g.size
    if n < 2 or not 0 <= column < n:
        raise InvalidRow(f"column {column} cannot be destabilized")
    r_y, r_x = g.y_row(column), g.x_row(column)   # Y' row keeps X, X' row keeps Y
    if abs(r_y - r_x) != 1:
        raise InvalidRow(f"column {column}: markings not in adjacent rows")
    a, b = g.x_col[r_y], g.y_col[r_x]
    if abs(a - column) != 1 and abs(b - column) != 1:
        raise InvalidRow(f"column {column}: no three-marking 2x2 block")
    lo = min(r_x, r_y)

    def col(c):
        return c - 1 if c > column else c

    x_new, y_new = [], []
    for r in range(n):
        if r == lo:
            x_new.append(col(a))
            y_new.append(col(b))
        elif r == lo + 1:
            continue
        else:
            x_new.append(col(g.x_col[r]))
            y_new.append(col(g.y_col[r]))
    return validate_grid(n - 1, x_new, y_new, g.axis_order, g.plane)


def _interleaved(s1: Tuple[int, int], s2: Tuple[int, int]) -> bool:
    a1, b1 = sorted(s1)
    a2, b2 = sorted(s2)
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def grid_commute(g: GridDiagram, index: int, axis: str) -> GridDiagram:
    """Interchange rows (axis = row axis) or columns ``index``, ``index+1``."""
    n = g.size
    if not 0 <= index < n - 1:
        raise IllegalCommutation(f"index {index} has no neighbour in a grid of size {n}")
    if axis in g.plane:
        rows = axis == g.plane[1]
    elif axis in ("x", "y"):
        rows = axis == "y"
    else:
        raise IllegalCommutation(f"unknown axis {axis!r} for plane {g.plane}")
    i, j = index, index + 1
    if rows:
        if _interleaved((g.x_col[i], g.y_col[i]), (g.x_col[j], g.y_col[j])):
            raise IllegalCommutation(f"rows {i},{j} have interleaved segments")
        x_new, y_new = list(g.x_col), list(g.y_col)
        x_new[i], x_new[j] = x_new[j], x_new[i]
        y_new[i], y_new[j] = y_new[j], y_new[i]
    else:
        if _interleaved((g.x_row(i), g.y_row(i)), (g.x_row(j), g.y_row(j))):
            raise IllegalCommutation(f"columns {i},{j} have interleaved segments")
        swap = {i: j, j: i}
        x_new = [swap.get(c, c) for c in g.x_col]
        y_new = [swap.get(c, c) for c in g.y_col]
    return validate_grid(n, x_new, y_new, g.axis_order, g.plane)


def render_grid_ascii(g: GridDiagram) -> str:
    """Character picture, top row first.  Crossings show the over-strand."""
    n = g.size
    horiz = [[False] * n for _ in range(n)]   # interior of a horizontal segment
    vert = [[False] * n for _ in range(n)]
    for r in range(n):
        lo, hi = sorted((g.x_col[r], g.y_col[r]))
        for c in range(lo + 1, hi):
            horiz[r][c] = True
    for c in range(n):
        lo, hi = sorted((g.x_row(c), g.y_row(c)))
        for r in range(lo + 1, hi):
            vert[r][c] = True
    lines = [f"{g.plane} order={g.axis_order} n={n}"]
    for r in reversed(range(n)):
        chars = []
        for c in range(n):
            if g.x_col[r] == c:
                ch = "X"
            elif g.y_col[r] == c:
                ch = "Y"
            elif horiz[r][c] and vert[r][c]:
                ch = "|" if g.over_vertical else "-"
            elif horiz[r][c]:
                ch = "-"
            elif vert[r][c]:
                ch = "|"
            else:
                ch = "."
            chars.append(ch)
            if c < n - 1:
                lo, hi = sorted((g.x_col[r], g.y_col[r]))
                chars.append("-" if lo <= c < hi else " ")
        lines.append("".join(chars).rstrip())
        if r > 0:
            gap = []
            for c in range(n):
                lo, hi = sorted((g.x_row(c), g.y_row(c)))
                gap.append("|" if lo < r <= hi else " ")
                if c < n - 1:
                    gap.append(" ")
            lines.append("".join(gap).rstrip())
    return "\n".join(lines) + "\n"

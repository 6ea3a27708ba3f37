"""Hypercube moves: stabilization, commutation, swap and component swap."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import (
    BadIndex,
    HyperkubeError,
    IllegalCommutation,
    NoUnitChain,
    NotBlockForm,
    ValidationError,
)
from .grid import grid_commute
from .hypercube import AXES, HypercubeDiagram, MarkingSet, Point4, hyper_project_grid, validate_hypercube


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _chain_from(h: HypercubeDiagram, k: int) -> Tuple[Point4, Point4, Point4, Point4, Point4]:
    """(W_k, X, Y, Z, next W) following the hyperlink from W marking k."""
    x = h.succ["W"][k]
    y = h.succ["X"][x]
    z = h.succ["Y"][y]
    w2 = h.succ["Z"][z]
    return h.W[k], h.X[x], h.Y[y], h.Z[z], h.W[w2]


def _staircase(p: Point4, q: Point4):
    """X, Y, Z markings of the chain from W at ``p`` to the next W at ``q``."""
    return ((q[0], p[1], p[2], p[3]),
            (q[0], q[1], p[2], p[3]),
            (q[0], q[1], q[2], p[3]))


def stabilize_with_index(h: HypercubeDiagram, index: int) -> Tuple[HypercubeDiagram, int]:
    """Stabilize at W marking ``index``; also return the index of that
    (shifted) W marking in the result, which is where the unit chain starts."""
    n = h.size
    if not 0 <= index < n:
        raise BadIndex(f"W index {index} out of range for size {n}")
    p, xk, yk, zk, q = _chain_from(h, index)
    # each new level sits next to p on the side its chain segment points to;
    # the z level follows the W segment
    s = _sign(xk[0] - p[0])
    sides = (s, _sign(yk[1] - xk[1]), _sign(zk[2] - yk[2]), s)
    new = tuple(p[a] + 1 if sides[a] > 0 else p[a] for a in range(4))

    def lift(pt):
        return tuple(c + 1 if c >= new[a] else c for a, c in enumerate(pt))

    fams = {lbl: [lift(pt) for pt in pts] for lbl, pts in h.families().items()}
    p2, q2 = lift(p), lift(q)
    for lbl, old in zip("XYZ", (xk, yk, zk)):
        fams[lbl].remove(lift(old))
    star = new
    for lbl, pt in zip("XYZ", _staircase(p2, star)):
        fams[lbl].append(pt)
    for lbl, pt in zip("XYZ", _staircase(star, q2)):
        fams[lbl].append(pt)
    fams["W"].append(star)
    out = validate_hypercube(n + 1, fams["W"], fams["X"], fams["Y"], fams["Z"])
    return out, out.W.index(p2)


def hyper_stabilize(h: HypercubeDiagram, index: int, label: str = "W") -> HypercubeDiagram:
    """Stabilize at a W marking, or at a Y marking through swap conjugation."""
    if label == "W":
        return stabilize_with_index(h, index)[0]
    if label == "Y":
        if not 0 <= index < h.size:
            raise BadIndex(f"Y index {index} out of range for size {h.size}")
        sw = hyper_swap(h)
        j = sw.W.index(_sw(h.Y[index]))
        return hyper_swap(stabilize_with_index(sw, j)[0])
    raise BadIndex(f"stabilization is offered at W or Y markings, not {label!r}")


def hyper_destabilize(h: HypercubeDiagram, index: int) -> HypercubeDiagram:
    """Remove the unit chain W_index -> X -> Y -> Z -> W*, merging W_index
    with W*."""
    n = h.size
    if not 0 <= index < n:
        raise BadIndex(f"W index {index} out of range for size {n}")
    p, xk, yk, zk, star = _chain_from(h, index)
    if any(abs(a - b) != 1 for a, b in zip(p, star)):
        raise NoUnitChain(f"W[{index}] does not start a unit chain")
    if n <= 2:
        raise NoUnitChain("destabilizing would leave a degenerate diagram")
    j = h.W.index(star)
    _, xs, ys, zs, q = _chain_from(h, j)
    if q == p:
        raise NoUnitChain("the unit chain is a whole component")

    def drop(pt):
        return tuple(c - 1 if c > star[a] else c for a, c in enumerate(pt))

    fams = {lbl: list(pts) for lbl, pts in h.families().items()}
    fams["W"].remove(star)
    for lbl, pt in zip("XYZ", (xk, yk, zk)):
        fams[lbl].remove(pt)
    for lbl, pt in zip("XYZ", (xs, ys, zs)):
        fams[lbl].remove(pt)
    for lbl, pt in zip("XYZ", _staircase(p, q)):
        fams[lbl].append(pt)
    for lbl in fams:
        for pt in fams[lbl]:
            if any(pt[a] == star[a] for a in range(4)):
                raise NoUnitChain("levels of the unit chain are shared with other markings")
        fams[lbl] = [drop(pt) for pt in fams[lbl]]
    try:
        return validate_hypercube(n - 1, fams["W"], fams["X"], fams["Y"], fams["Z"])
    except ValidationError as exc:
        raise NoUnitChain(f"removing the chain at W[{index}] breaks the diagram: {exc}") from exc


def hyper_commute(h: HypercubeDiagram, axis: str, level: int) -> HypercubeDiagram:
    """Exchange the adjacent cubes at ``level`` and ``level+1`` along ``axis``."""
    if axis not in AXES:
        raise IllegalCommutation(f"unknown axis {axis!r}")
    n = h.size
    if not 0 <= level < n - 1:
        raise IllegalCommutation(f"level {level} has no neighbour in size {n}")
    a = AXES.index(axis)
    swap = {level: level + 1, level + 1: level}

    def move(pt):
        return tuple(swap.get(c, c) if k == a else c for k, c in enumerate(pt))

    fams = {lbl: [move(pt) for pt in pts] for lbl, pts in h.families().items()}
    try:
        out = validate_hypercube(n, fams["W"], fams["X"], fams["Y"], fams["Z"])
    except ValidationError as exc:
        raise IllegalCommutation(str(exc), exc.condition) from exc
    # a valid result is not enough: each changed projection must differ by a
    # grid commutation, otherwise the link type can change
    for plane in ("wx", "yz", "xy", "zw"):
        before, after = hyper_project_grid(h, plane), hyper_project_grid(out, plane)
        if (before.x_col, before.y_col) != (after.x_col, after.y_col) \
                and not _is_grid_commutation(before, after, level):
            raise IllegalCommutation(f"projection {plane} changes by an interleaved exchange",
                                     "GridCommutation")
    return out


def _is_grid_commutation(before, after, level: int) -> bool:
    for axis in before.plane:
        try:
            g = grid_commute(before, level, axis)
        except HyperkubeError:
            continue
        if (g.x_col, g.y_col) == (after.x_col, after.y_col):
            return True
    return False


def _sw(pt):
    w, x, y, z = pt
    return (y, z, w, x)


def _swap_markings(m: MarkingSet):
    return ([_sw(p) for p in m.Y], [_sw(p) for p in m.Z],
            [_sw(p) for p in m.W], [_sw(p) for p in m.X])


def hyper_swap(h: HypercubeDiagram) -> HypercubeDiagram:
    """Apply SW(w,x,y,z) = (y,z,w,x), relabelling W<->Y and X<->Z."""
    return validate_hypercube(h.size, *_swap_markings(h))


def is_block_form(h: HypercubeDiagram, a: int) -> bool:
    n = h.size
    if not 0 < a < n:
        return False
    for pts in h.families().values():
        for p in pts:
            if not (all(c < a for c in p) or all(c >= a for c in p)):
                return False
    for plane in ("wx", "yz", "xy", "zw"):
        g = hyper_project_grid(h, plane)
        for r in range(n):
            if (r < a) != (g.x_col[r] < a) or (r < a) != (g.y_col[r] < a):
                return False
    return True


def component_swap(h: HypercubeDiagram, a: int, block: int = 0) -> HypercubeDiagram:
    """Swap only the markings in block ``[0,a)^4`` (block 0) or ``[a,n)^4``."""
    if block not in (0, 1):
        raise NotBlockForm(f"block must be 0 or 1, got {block}")
    if not is_block_form(h, a):
        raise NotBlockForm(f"diagram is not split into blocks at {a}")

    def inside(p):
        return all(c < a for c in p) if block == 0 else all(c >= a for c in p)

    sub = {lbl: [p for p in pts if inside(p)] for lbl, pts in h.families().items()}
    rest = {lbl: [p for p in pts if not inside(p)] for lbl, pts in h.families().items()}
    W, X, Y, Z = _swap_markings(MarkingSet(h.size, *(tuple(sub[l]) for l in "WXYZ")))
    return validate_hypercube(h.size, W + rest["W"], X + rest["X"], Y + rest["Y"], Z + rest["Z"])


@dataclass(frozen=True)
class Move:
    kind: str
    index: Optional[int] = None
    label: Optional[str] = None
    axis: Optional[str] = None
    level: Optional[int] = None
    split: Optional[int] = None
    block: Optional[int] = None

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        for k in ("index", "label", "axis", "level", "split", "block"):
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Move":
        if d.get("kind") not in _KINDS:
            raise BadIndex(f"unknown move kind {d.get('kind')!r}")
        return cls(**{k: d.get(k) for k in ("kind", "index", "label", "axis", "level",
                                             "split", "block")})


def _apply_stabilize(h, m):
    return hyper_stabilize(h, m.index, m.label or "W")


_KINDS = {
    "stabilize": _apply_stabilize,
    "destabilize": lambda h, m: hyper_destabilize(h, m.index),
    "commute": lambda h, m: hyper_commute(h, m.axis, m.level),
    "swap": lambda h, m: hyper_swap(h),
    "component_swap": lambda h, m: component_swap(h, m.split, m.block or 0),
}


def apply_move(h: HypercubeDiagram, move: Move) -> HypercubeDiagram:
    return _KINDS[move.kind](h, move)


def candidate_moves(n: int) -> List[Move]:
    moves = [Move("stabilize", index=i, label=l) for l in "WY" for i in range(n)]
    moves += [Move("destabilize", index=i) for i in range(n)]
    moves += [Move("commute", axis=a, level=k) for a in AXES for k in range(n - 1)]
    moves.append(Move("swap"))
    moves += [Move("component_swap", split=a, block=b) for a in range(1, n) for b in (0, 1)]
    return moves


def legal_moves(h: HypercubeDiagram) -> List[Move]:
    """Every move in a fixed candidate list that applies to ``h``."""
    out = []
    for m in candidate_moves(h.size):
        try:
            apply_move(h, m)
        except HyperkubeError:
            continue
        out.append(m)
    return out

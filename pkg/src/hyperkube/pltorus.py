"""Piecewise-linear torus swept out by a hypercube diagram.

Every hyperlink segment is parallel to one axis.  Projecting the hyperlink to
the ``(w, y)`` plane gives a rectilinear curve ``C1`` whose edges are the
W->X (along w) and Y->Z (along y) segments; projecting to ``(x, z)`` gives
``C2`` with edges X->Y (along x) and Z->W (along z).  The rectangles of the
torus are the products of one ``C1`` edge with one ``C2`` edge, so each
rectangle lies in a wx-, yz-, xy- or zw-plane:

    WX = (W->X) x (X->Y)     YZ = (Y->Z) x (Z->W)
    XY = (Y->Z) x (X->Y)     ZW = (W->X) x (Z->W)

A YZ rectangle sits over every yz-flat, a WX rectangle over every wx-flat and
so on, giving n^2 rectangles per family.  Coordinates here are lattice
corners, so marking cells ``c`` become the half-integer points ``c + 1/2``;
everything is kept integral by doubling (point = 2c + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import NonManifoldEdge, UnclassifiableCircle
from .hypercube import HypercubeDiagram, trace_hyperlink

Vec4 = Tuple[int, int, int, int]
# axis pairs spanned by each rectangle family, in the plane's own basis order
FAMILY_AXES = {"WX": (0, 1), "YZ": (2, 3), "XY": (1, 2), "ZW": (3, 0)}
# orientation of (C1 edge) x (C2 edge) relative to the plane basis, per
# unit of (sign C1 edge) * (sign C2 edge)
_FAMILY_SIGN = {"WX": 1, "YZ": 1, "XY": -1, "ZW": -1}


@dataclass(frozen=True)
class Rectangle:
    family: str
    lo: Vec4            # doubled coordinates; lo == hi on the two fixed axes
    hi: Vec4
    sign: int
    c1_edge: int
    c2_edge: int

    def corners(self) -> List[Vec4]:
        a, b = FAMILY_AXES[self.family]
        out = []
        for ua, ub in ((0, 0), (1, 0), (1, 1), (0, 1)):
            p = list(self.lo)
            p[a] = self.hi[a] if ua else self.lo[a]
            p[b] = self.hi[b] if ub else self.lo[b]
            out.append(tuple(p))
        return out


@dataclass
class RectangleComplex:
    size: int
    rectangles: List[Rectangle]
    vertices: List[Vec4] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)
    faces: List[Tuple[int, int, int, int]] = field(default_factory=list)

    def family(self, name: str) -> List[Rectangle]:
        return [r for r in self.rectangles if r.family == name]


@dataclass(frozen=True)
class _Curve:
    """Closed rectilinear curve given as oriented edges between 2D points."""
    edges: Tuple[Tuple[Tuple[int, int], Tuple[int, int], int], ...]  # (start, end, axis 0/1)


def _planar_curves(h: HypercubeDiagram) -> Tuple[_Curve, _Curve]:
    link = trace_hyperlink(h)
    fam = h.families()
    c1, c2 = [], []
    for loop in link.loops:
        pts = [fam[lbl][i] for lbl, i in loop]
        for k, (lbl, _) in enumerate(loop):
            p, q = pts[k], pts[(k + 1) % len(pts)]
            if lbl == "W":
                c1.append(((2 * p[0] + 1, 2 * p[2] + 1), (2 * q[0] + 1, 2 * q[2] + 1), 0))
            elif lbl == "Y":
                c1.append(((2 * p[0] + 1, 2 * p[2] + 1), (2 * q[0] + 1, 2 * q[2] + 1), 1))
            elif lbl == "X":
                c2.append(((2 * p[1] + 1, 2 * p[3] + 1), (2 * q[1] + 1, 2 * q[3] + 1), 0))
            else:
                c2.append(((2 * p[1] + 1, 2 * p[3] + 1), (2 * q[1] + 1, 2 * q[3] + 1), 1))
    return _Curve(tuple(c1)), _Curve(tuple(c2))


def _family(a1: int, a2: int) -> str:
    # C1 edge along w (0) or y (1); C2 edge along x (0) or z (1)
    return {(0, 0): "WX", (1, 1): "YZ", (1, 0): "XY", (0, 1): "ZW"}[(a1, a2)]


def _point(u: Tuple[int, int], v: Tuple[int, int]) -> Vec4:
    return (u[0], v[0], u[1], v[1])


def build_rectangles(h: HypercubeDiagram) -> RectangleComplex:
    c1, c2 = _planar_curves(h)
    rects = []
    for i, (u0, u1, a1) in enumerate(c1.edges):
        s1 = 1 if u1[a1] > u0[a1] else -1
        for j, (v0, v1, a2) in enumerate(c2.edges):
            s2 = 1 if v1[a2] > v0[a2] else -1
            p, q = _point(u0, v0), _point(u1, v1)
            lo = tuple(min(x, y) for x, y in zip(p, q))
            hi = tuple(max(x, y) for x, y in zip(p, q))
            fam = _family(a1, a2)
            rects.append(Rectangle(fam, lo, hi, _FAMILY_SIGN[fam] * s1 * s2, i, j))
    rc = RectangleComplex(h.size, rects)
    _build_incidence(rc)
    return rc


def _build_incidence(rc: RectangleComplex) -> None:
    vindex: Dict[Vec4, int] = {}
    eindex: Dict[Tuple[int, int], int] = {}
    faces = []
    for r in rc.rectangles:
        ids = []
        for c in r.corners():
            ids.append(vindex.setdefault(c, len(vindex)))
        eids = []
        for k in range(4):
            e = tuple(sorted((ids[k], ids[(k + 1) % 4])))
            eids.append(eindex.setdefault(e, len(eindex)))
        faces.append(tuple(eids))
    rc.vertices = sorted(vindex, key=vindex.get)
    rc.edges = sorted(eindex, key=eindex.get)
    rc.faces = faces


def cw_euler_characteristic(rc: RectangleComplex) -> Tuple[int, Tuple[int, int, int]]:
    """Euler characteristic and (V, E, F); every edge must bound two faces."""
    count = [0] * len(rc.edges)
    for f in rc.faces:
        for e in f:
            count[e] += 1
    bad = [i for i, c in enumerate(count) if c != 2]
    if bad:
        raise NonManifoldEdge(f"edge {rc.edges[bad[0]]} meets {count[bad[0]]} faces")
    used_v = {v for e in rc.edges for v in e}
    V, E, F = len(used_v), len(rc.edges), len(rc.faces)
    return V - E + F, (V, E, F)


@dataclass(frozen=True)
class DoublePointCircle:
    segments: Tuple[Tuple[Vec4, Vec4], ...]   # doubled coordinates, chained
    kind: str                                 # "horizontal" or "vertical"

    def to_json(self) -> dict:
        return {"class": self.kind,
                "segments": [[[c / 2 for c in a], [c / 2 for c in b]] for a, b in self.segments]}


def _intersection_segment(r: Rectangle, s: Rectangle):
    """Common part of two rectangles if it is a segment (or point) meeting
    the interiors of both; None otherwise."""
    lo = [max(a, b) for a, b in zip(r.lo, s.lo)]
    hi = [min(a, b) for a, b in zip(r.hi, s.hi)]
    if any(l > u for l, u in zip(lo, hi)):
        return None
    for rect in (r, s):
        for a in FAMILY_AXES[rect.family]:
            # the common part must reach the open interior along both
            # spanning axes of each rectangle
            if hi[a] <= rect.lo[a] or lo[a] >= rect.hi[a]:
                return None
            if lo[a] == hi[a] and lo[a] in (rect.lo[a], rect.hi[a]):
                return None
    return tuple(lo), tuple(hi)


def intersection_segments(rc: RectangleComplex):
    """Pairwise penetrations: (segments of positive length, isolated points)."""
    rects = rc.rectangles
    lo = np.array([r.lo for r in rects])
    hi = np.array([r.hi for r in rects])
    segs, points = [], []
    for i in range(len(rects)):
        # boxes overlap in every coordinate
        ok = np.all((np.maximum(lo[i], lo[i + 1:]) <= np.minimum(hi[i], hi[i + 1:])), axis=1)
        for j in np.nonzero(ok)[0] + i + 1:
            res = _intersection_segment(rects[i], rects[j])
            if res is None:
                continue
            a, b = res
            if a == b:
                points.append(a)
            else:
                segs.append((a, b))
    return segs, points


def _chain(segs: Sequence[Tuple[Vec4, Vec4]]) -> List[List[Tuple[Vec4, Vec4]]]:
    ends: Dict[Vec4, List[int]] = {}
    for k, (a, b) in enumerate(segs):
        ends.setdefault(a, []).append(k)
        ends.setdefault(b, []).append(k)
    used = [False] * len(segs)
    loops = []
    for start in range(len(segs)):
        if used[start]:
            continue
        loop = []
        k = start
        a, b = segs[k]
        head = a
        cur = b
        used[k] = True
        loop.append((a, b))
        while cur != head:
            nxt = [m for m in ends.get(cur, []) if not used[m]]
            if not nxt:
                raise UnclassifiableCircle(f"double point curve does not close at {cur}")
            k = nxt[0]
            used[k] = True
            a, b = segs[k]
            if a != cur:
                a, b = b, a
            loop.append((a, b))
            cur = b
        loops.append(loop)
    return loops


def double_point_circles(rc: RectangleComplex) -> List[DoublePointCircle]:
    segs, _ = intersection_segments(rc)
    segs = sorted(set(segs))
    circles = []
    for loop in _chain(segs):
        pts = [p for s in loop for p in s]
        z_const = len({p[3] for p in pts}) == 1
        y_const = len({p[2] for p in pts}) == 1
        if z_const and not y_const:
            kind = "horizontal"
        elif y_const and not z_const:
            kind = "vertical"
        else:
            raise UnclassifiableCircle(f"circle through {pts[0]} is neither horizontal nor vertical")
        circles.append(DoublePointCircle(tuple(loop), kind))
    circles.sort(key=lambda c: (c.kind, c.segments))
    return circles


def _segments_meet(s: Tuple[Vec4, Vec4], t: Tuple[Vec4, Vec4]) -> bool:
    return all(max(min(a), min(b)) <= min(max(a), max(b))
               for a, b in zip(zip(*s), zip(*t)))


def circles_intersect(circles: Sequence[DoublePointCircle]) -> bool:
    horiz = [s for c in circles if c.kind == "horizontal" for s in c.segments]
    vert = [s for c in circles if c.kind == "vertical" for s in c.segments]
    return any(_segments_meet(s, t) for s in horiz for t in vert)


EMBEDDED_LAGRANGIAN = "EmbeddedLagrangian"
EMBEDDED = "Embedded"
IMMERSED = "Immersed"


def classify_circles(circles: Sequence[DoublePointCircle]) -> str:
    if not circles:
        return EMBEDDED_LAGRANGIAN
    return IMMERSED if circles_intersect(circles) else EMBEDDED


def classify_torus(h: HypercubeDiagram) -> str:
    return classify_circles(double_point_circles(build_rectangles(h)))


def torus_report(h: HypercubeDiagram) -> dict:
    rc = build_rectangles(h)
    chi, (V, E, F) = cw_euler_characteristic(rc)
    circles = double_point_circles(rc)
    return {
        "size": h.size,
        "counts": {"V": V, "E": E, "F": F},
        "chi": chi,
        "families": {name: len(rc.family(name)) for name in FAMILY_AXES},
        "circles": [c.to_json() for c in circles],
        "class": classify_circles(circles),
    }


# Lagrangian smoothing patches -------------------------------------------------

def omega(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """dw^dy + dz^dx on row vectors (w, x, y, z)."""
    return u[..., 0] * v[..., 2] - u[..., 2] * v[..., 0] + u[..., 3] * v[..., 1] - u[..., 1] * v[..., 3]


def edge_patch(s, t, eps):
    c, d = np.cos(t / eps), np.sin(t / eps)
    pos = np.stack([s, eps - eps * c, np.zeros_like(s), eps - eps * d], axis=-1)
    ds = np.stack([np.ones_like(s), np.zeros_like(s), np.zeros_like(s), np.zeros_like(s)], axis=-1)
    dt = np.stack([np.zeros_like(s), d, np.zeros_like(s), -c], axis=-1)
    return pos, ds, dt


def vertex_patch(s, t, eps):
    cs, ss = np.cos(s / eps), np.sin(s / eps)
    ct, st = np.cos(t / eps), np.sin(t / eps)
    z = np.zeros_like(s)
    pos = np.stack([eps - eps * cs, eps - eps * ct, eps - eps * ss, eps - eps * st], axis=-1)
    ds = np.stack([ss, z, -cs, z], axis=-1)
    dt = np.stack([z, st, z, -ct], axis=-1)
    return pos, ds, dt


@dataclass(frozen=True)
class PatchResidual:
    omega_max: float
    boundary_max: float


def lagrangian_patch_residual(kind: str, epsilon: float, samples: int = 1000,
                              seed: int = 0) -> PatchResidual:
    """Largest |omega| on sampled tangent planes of one patch, plus the
    largest position/tangent mismatch where the vertex patch meets the edge
    patch (at s = eps*pi/2 for V and s = eps for E)."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    quarter = epsilon * math.pi / 2
    t = rng.uniform(0.0, quarter, samples)
    if kind == "edge":
        s = rng.uniform(0.0, 1.0, samples)
        _, ds, dt = edge_patch(s, t, epsilon)
    elif kind == "vertex":
        s = rng.uniform(0.0, quarter, samples)
        _, ds, dt = vertex_patch(s, t, epsilon)
    else:
        raise ValueError(f"kind must be 'edge' or 'vertex', got {kind!r}")
    om = float(np.max(np.abs(omega(ds, dt))))
    pv, dsv, dtv = vertex_patch(np.full(samples, quarter), t, epsilon)
    pe, dse, dte = edge_patch(np.full(samples, epsilon), t, epsilon)
    bnd = max(float(np.max(np.abs(pv - pe))), float(np.max(np.abs(dsv - dse))),
              float(np.max(np.abs(dtv - dte))))
    return PatchResidual(om, bnd)

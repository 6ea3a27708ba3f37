"""Grid and hypercube Floer complexes over GF(2).

A grid state is a permutation ``s`` read as the lattice points ``(s[r], r)``.
Markings sit at cell centres ``(c + 1/2, r + 1/2)``.  Gradings are computed
from dominance pair counts; half-integers are kept doubled so everything stays
integral.

The tilde complexes count empty rectangles that contain no marking of either
family, which makes the Alexander multi-grading a genuine grading.  The minus
differential counts every empty rectangle with a monomial in the first
family's variables; it is only built to check that it squares to zero.

A hypercube state is a set of points ``(w_i, i, y_i, i)``.  Its wx part lives
in ``G_wx`` (W markings play the role of X, X markings that of Y) and its yz
part in ``G_yz`` (Y and Z markings).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .errors import InexactDivision, SizeBound
from .grid import GridDiagram, trace_components
from .hypercube import HypercubeDiagram, hyper_project_grid, trace_hyperlink
from .laurent import LaurentPoly

GRID_SIZE_BOUND = 9
Table = Dict[Tuple[int, Tuple[int, ...]], int]   # (maslov, doubled alexander) -> rank


def hyper_size_bound() -> int:
    return int(os.environ.get("HYPERKUBE_SIZE_BOUND", "5"))


# pair counts ------------------------------------------------------------------

def pair_count_I(A: Sequence[Sequence], B: Sequence[Sequence]) -> int:
    return sum(1 for a in A for b in B if a[0] < b[0] and a[1] < b[1])


def pair_count_J(A: Sequence[Sequence], B: Sequence[Sequence]) -> Fraction:
    return Fraction(pair_count_I(A, B) + pair_count_I(B, A), 2)


def _marks(cols: Sequence[int]) -> List[Tuple[Fraction, Fraction]]:
    h = Fraction(1, 2)
    return [(c + h, r + h) for r, c in enumerate(cols)]


def _state_points(s: Sequence[int]) -> List[Tuple[int, int]]:
    return [(c, r) for r, c in enumerate(s)]


def maslov(g: GridDiagram, s: Sequence[int]) -> int:
    """J(s - X, s - X) + 1."""
    pts, X = _state_points(s), _marks(g.x_col)
    m = pair_count_J(pts, pts) - 2 * pair_count_J(pts, X) + pair_count_J(X, X) + 1
    return int(m)


def alexander(g: GridDiagram, s: Sequence[int]) -> Tuple[Fraction, ...]:
    """J(s - (X+Y)/2, Y_i - X_i) - (n_i - 1)/2 for every component i."""
    comps = trace_components(g)
    rows_of = comps.component_of_row()
    pts, X, Y = _state_points(s), _marks(g.x_col), _marks(g.y_col)
    out = []
    for i, ni in enumerate(comps.marking_count):
        Xi = [X[r] for r in range(g.size) if rows_of[r] == i]
        Yi = [Y[r] for r in range(g.size) if rows_of[r] == i]
        val = (pair_count_J(pts, Yi) - pair_count_J(pts, Xi)
               - Fraction(1, 2) * (pair_count_J(Y, Yi) - pair_count_J(Y, Xi)
                                   + pair_count_J(X, Yi) - pair_count_J(X, Xi))
               - Fraction(ni - 1, 2))
        out.append(val)
    return tuple(out)


# rectangles --------------------------------------------------------------------

@dataclass(frozen=True)
class TorusRectangle:
    corner: Tuple[int, int]   # lower-left lattice point (column, row)
    width: int
    height: int
    empty: bool               # no state point of the source in the interior
    x_count: int
    y_count: int


def _cells_inside(cells, corner, width, height, n) -> int:
    a, r1 = corner
    return sum(1 for c, r in cells if (c - a) % n < width and (r - r1) % n < height)


def grid_rectangles(g: GridDiagram, s: Sequence[int], t: Sequence[int]) -> List[TorusRectangle]:
    """The rectangles on the torus connecting ``s`` to ``t``."""
    n = g.size
    diff = [r for r in range(n) if s[r] != t[r]]
    if len(diff) != 2:
        return []
    xs, ys = g.x_cells(), g.y_cells()
    out = []
    for r1, r2 in (diff, diff[::-1]):
        a, b = s[r1], s[r2]
        if t[r1] != b or t[r2] != a:
            return []
        w, h = (b - a) % n, (r2 - r1) % n
        interior = [r for r in range(n) if 0 < (r - r1) % n < h and 0 < (s[r] - a) % n < w]
        out.append(TorusRectangle((a, r1), w, h, not interior,
                                  _cells_inside(xs, (a, r1), w, h, n),
                                  _cells_inside(ys, (a, r1), w, h, n)))
    return out


def _rect_table(cells: Sequence[Tuple[int, int]], n: int, weights: bool = False) -> np.ndarray:
    """table[a, r, w, h] = markings (or a 2-bit-per-marking monomial) inside
    the torus rectangle with lower-left (a, r), width w and height h."""
    idx = np.arange(n)
    A, R, W, H = np.meshgrid(idx, idx, idx, idx, indexing="ij")
    out = np.zeros((n, n, n, n), dtype=np.int64)
    for k, (c, r) in enumerate(cells):
        inside = (((c - A) % n) < W) & (((r - R) % n) < H)
        out += inside.astype(np.int64) << (2 * k) if weights else inside
    return out


# state spaces -----------------------------------------------------------------

def all_states(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _codes(cols: np.ndarray, n: int) -> np.ndarray:
    """Injective integer code of each row of ``cols`` (values < n)."""
    return cols @ (n ** np.arange(cols.shape[1], dtype=np.int64))


@dataclass(frozen=True)
class _Plane:
    """One rectangle family: a column block of the state array plus its
    markings (first family, second family) and component labels."""
    offset: int                      # which n-column block of the state array
    first: Tuple[Tuple[int, int], ...]
    second: Tuple[Tuple[int, int], ...]
    comp_first: Tuple[int, ...]
    comp_second: Tuple[int, ...]


def _plane_gradings(cols: np.ndarray, plane: _Plane, ncomp: int,
                    counts: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Doubled Maslov and doubled Alexander gradings of many states at once."""
    N, n = cols.shape
    rows = np.arange(n)

    def twice_J_state(cells, mask):
        c = np.array([m[0] for m in cells], dtype=np.int64)[mask]
        j = np.array([m[1] for m in cells], dtype=np.int64)[mask]
        P = cols[:, :, None]
        R = rows[None, :, None]
        below = (P <= c[None, None, :]) & (R <= j[None, None, :])
        above = (c[None, None, :] < P) & (j[None, None, :] < R)
        return (below.sum(axis=(1, 2)) + above.sum(axis=(1, 2))).astype(np.int64)

    def twice_J_marks(c1, m1, c2, m2):
        a = [c1[k] for k in range(n) if m1[k]]
        b = [c2[k] for k in range(n) if m2[k]]
        return pair_count_I(a, b) + pair_count_I(b, a)

    all_mask = np.ones(n, dtype=bool)
    i_ss = np.zeros(N, dtype=np.int64)
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            i_ss += cols[:, r1] < cols[:, r2]
    X, Y = plane.first, plane.second
    m2 = 2 * i_ss - 2 * twice_J_state(X, all_mask) + twice_J_marks(X, all_mask, X, all_mask) + 2
    alex = np.zeros((N, ncomp), dtype=np.int64)
    cx = np.array(plane.comp_first)
    cy = np.array(plane.comp_second)
    for i in range(ncomp):
        mx, my = cx == i, cy == i
        # 4 * A_i, then halve to the doubled value
        four = (2 * (twice_J_state(Y, my) - twice_J_state(X, mx))
                - (twice_J_marks(Y, all_mask, Y, my) - twice_J_marks(Y, all_mask, X, mx)
                   + twice_J_marks(X, all_mask, Y, my) - twice_J_marks(X, all_mask, X, mx))
                - 2 * (counts[i] - 1))
        if np.any(four % 2):
            raise AssertionError("Alexander grading is not a half-integer")
        alex[:, i] = four // 2
    if np.any(m2 % 2):
        raise AssertionError("Maslov grading is not an integer")
    return m2 // 2, alex


def _plane_edges(states: np.ndarray, plane: _Plane, n: int, lookup, mode: str):
    """Rectangles of one family.  Returns (src, dst, weight) arrays.

    ``mode`` is ``"tilde"`` (no markings of either family, weight 0) or
    ``"minus"`` (any markings; weight is the first-family monomial)."""
    N = states.shape[0]
    cols = states[:, plane.offset:plane.offset + n]
    first = _rect_table(plane.first, n, weights=(mode == "minus"))
    if mode == "tilde":
        blocked = first + _rect_table(plane.second, n)
    srcs, dsts, wts = [], [], []
    idx = np.arange(N)
    for r1 in range(n):
        for r2 in range(n):
            if r1 == r2:
                continue
            h = (r2 - r1) % n
            a, b = cols[:, r1], cols[:, r2]
            w = (b - a) % n
            inner = [(r1 + k) % n for k in range(1, h)]
            ok = np.ones(N, dtype=bool)
            if inner:
                d = (cols[:, inner] - a[:, None]) % n
                ok &= ~np.any((d > 0) & (d < w[:, None]), axis=1)
            if mode == "tilde":
                ok &= blocked[a, r1, w, h] == 0
            sel = idx[ok]
            if not len(sel):
                continue
            tgt = states[sel].copy()
            tgt[:, plane.offset + r1] = b[sel]
            tgt[:, plane.offset + r2] = a[sel]
            srcs.append(sel)
            dsts.append(lookup(tgt))
            wts.append(first[a[sel], r1, w[sel], h] if mode == "minus" else np.zeros(len(sel), np.int64))
    if not srcs:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e
    return np.concatenate(srcs), np.concatenate(dsts), np.concatenate(wts)


def _lookup_for(states: np.ndarray, n: int):
    codes = _codes(states, n)
    order = np.argsort(codes)
    sorted_codes = codes[order]

    def lookup(tgt: np.ndarray) -> np.ndarray:
        c = _codes(tgt, n)
        pos = np.searchsorted(sorted_codes, c)
        if np.any(sorted_codes[np.minimum(pos, len(sorted_codes) - 1)] != c):
            raise AssertionError("rectangle target is not a state")
        return order[pos]

    return lookup


@dataclass
class GradedComplex:
    """Generators with gradings and a GF(2) differential given as edges."""
    maslov: np.ndarray
    alexander: np.ndarray          # doubled, shape (N, components)
    src: np.ndarray
    dst: np.ndarray
    variant: str
    counts: Tuple[int, ...]        # markings per component

    @property
    def size(self) -> int:
        return len(self.maslov)

    def check_gradings(self) -> bool:
        return bool(np.all(self.maslov[self.dst] == self.maslov[self.src] - 1)
                    and np.all(self.alexander[self.dst] == self.alexander[self.src]))

    def d_squared_zero(self) -> bool:
        return _compose_is_zero(self.src, self.dst, np.zeros(len(self.src), np.int64), self.size)


def _reduce_mod2(src, dst, N):
    key = src * N + dst
    uniq, cnt = np.unique(key, return_counts=True)
    keep = uniq[cnt % 2 == 1]
    return keep // N, keep % N


def _compose_is_zero(src, dst, wt, N, chunk: int = 1 << 21) -> bool:
    """Check that the weighted edge set composed with itself vanishes mod 2."""
    order = np.argsort(src, kind="stable")
    s_sorted, d_sorted, w_sorted = src[order], dst[order], wt[order]
    start = np.searchsorted(s_sorted, np.arange(N))
    end = np.searchsorted(s_sorted, np.arange(N), side="right")
    deg = end - start
    # process sources in blocks so each block's compositions stay in memory
    bounds = np.cumsum(deg[d_sorted])
    lo = 0
    E = len(s_sorted)
    while lo < E:
        base = bounds[lo - 1] if lo else 0
        hi = int(np.searchsorted(bounds, base + chunk, side="right"))
        hi = max(hi, lo + 1)
        # keep whole sources together
        if hi < E:
            hi = int(np.searchsorted(s_sorted, s_sorted[hi - 1], side="right"))
        mids = d_sorted[lo:hi]
        reps = deg[mids]
        first_src = np.repeat(s_sorted[lo:hi], reps)
        first_wt = np.repeat(w_sorted[lo:hi], reps)
        offs = np.repeat(start[mids] - np.cumsum(np.concatenate(([0], reps[:-1]))), reps)
        pos = np.arange(reps.sum()) + offs
        target = d_sorted[pos]
        weight = first_wt + w_sorted[pos]
        key = (first_src * N + target) * (1 << 24) + weight
        _, cnt = np.unique(key, return_counts=True)
        if np.any(cnt % 2):
            return False
        lo = hi
    return True


# grid complexes ------------------------------------------------------------------

def _grid_plane(g: GridDiagram, offset: int = 0, comp_map: Optional[Sequence[int]] = None):
    comps = trace_components(g)
    rows_of = comps.component_of_row()
    if comp_map is not None:
        rows_of = [comp_map[c] for c in rows_of]
    X = tuple((g.x_col[r], r) for r in range(g.size))
    Y = tuple((g.y_col[r], r) for r in range(g.size))
    return _Plane(offset, X, Y, tuple(rows_of), tuple(rows_of)), comps


def build_grid_tilde_complex(g: GridDiagram, check: bool = True) -> GradedComplex:
    n = g.size
    if n > GRID_SIZE_BOUND:
        raise SizeBound(f"grid size {n} exceeds the bound {GRID_SIZE_BOUND}")
    plane, comps = _grid_plane(g)
    states = all_states(n)
    m, a = _plane_gradings(states, plane, len(comps), comps.marking_count)
    src, dst, _ = _plane_edges(states, plane, n, _lookup_for(states, n), "tilde")
    src, dst = _reduce_mod2(src, dst, len(states))
    c = GradedComplex(m, a, src, dst, "grid-tilde", tuple(comps.marking_count))
    if check and not c.check_gradings():
        raise AssertionError("differential does not respect the gradings")
    return c


# hypercube states ----------------------------------------------------------------

def pi_wx(s: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Hyperstate -> grid state of G_wx (column w in row x)."""
    out = [0] * len(s)
    for p in s:
        out[p[1]] = p[0]
    return tuple(out)


def pi_yz(s: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    out = [0] * len(s)
    for p in s:
        out[p[3]] = p[2]
    return tuple(out)


def psi(s: Sequence[int], t: Sequence[int]) -> Tuple[Tuple[int, int, int, int], ...]:
    """Combine a G_wx state and a G_yz state (both ordered by row)."""
    if len(s) != len(t):
        raise ValueError("states have different sizes")
    return tuple((s[i], i, t[i], i) for i in range(len(s)))


def _hyper_planes(h: HypercubeDiagram):
    link = trace_hyperlink(h)
    comp = {lbl: link.component_of(lbl) for lbl in "WXYZ"}
    wx = _Plane(0, tuple((p[0], p[1]) for p in h.W), tuple((p[0], p[1]) for p in h.X),
                tuple(comp["W"]), tuple(comp["X"]))
    yz = _Plane(h.size, tuple((p[2], p[3]) for p in h.Y), tuple((p[2], p[3]) for p in h.Z),
                tuple(comp["Y"]), tuple(comp["Z"]))
    return wx, yz, link


@dataclass(frozen=True)
class Bigrading:
    maslov: int
    alexander: Tuple[int, ...]    # doubled


def hyper_gradings(h: HypercubeDiagram, s: Sequence[Sequence[int]]) -> Bigrading:
    wx, yz, link = _hyper_planes(h)
    arr = np.array([list(pi_wx(s)) + list(pi_yz(s))], dtype=np.int64)
    m1, a1 = _plane_gradings(arr[:, :h.size], wx, len(link), link.marking_count)
    m2, a2 = _plane_gradings(arr[:, h.size:], yz, len(link), link.marking_count)
    return Bigrading(int(m1[0] + m2[0]), tuple(int(v) for v in a1[0] + a2[0]))


def all_hyperstates(n: int) -> np.ndarray:
    """Every hyperstate as an (N, 2n) array: w columns by row, then y."""
    P = all_states(n)
    F = len(P)
    return np.hstack([np.repeat(P, F, axis=0), np.tile(P, (F, 1))])


def _hyper_complex_parts(h: HypercubeDiagram, mode: str, bound: Optional[int]):
    n = h.size
    cap = hyper_size_bound() if bound is None else bound
    if n > cap:
        raise SizeBound(f"hypercube size {n} exceeds the direct bound {cap}")
    wx, yz, link = _hyper_planes(h)
    states = all_hyperstates(n)
    lookup = _lookup_for(states, n)
    parts = [_plane_edges(states, p, n, lookup, mode) for p in (wx, yz)]
    return states, wx, yz, link, parts


def build_hyper_tilde_complex(h: HypercubeDiagram, bound: Optional[int] = None,
                              check: bool = True) -> GradedComplex:
    states, wx, yz, link, parts = _hyper_complex_parts(h, "tilde", bound)
    n = h.size
    m1, a1 = _plane_gradings(states[:, :n], wx, len(link), link.marking_count)
    m2, a2 = _plane_gradings(states[:, n:], yz, len(link), link.marking_count)
    src = np.concatenate([p[0] for p in parts])
    dst = np.concatenate([p[1] for p in parts])
    src, dst = _reduce_mod2(src, dst, len(states))
    c = GradedComplex(m1 + m2, a1 + a2, src, dst, "hyper-tilde", tuple(link.marking_count))
    if check and not c.check_gradings():
        raise AssertionError("differential does not respect the gradings")
    return c


# minus differential --------------------------------------------------------------

@dataclass(frozen=True)
class MinusTerms:
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray      # packed monomial, 2 bits per variable
    size: int


def minus_terms(diagram, bound: Optional[int] = None) -> MinusTerms:
    if isinstance(diagram, GridDiagram):
        n = diagram.size
        if n > (bound or GRID_SIZE_BOUND):
            raise SizeBound(f"grid size {n} exceeds the bound")
        plane, _ = _grid_plane(diagram)
        states = all_states(n)
        src, dst, wt = _plane_edges(states, plane, n, _lookup_for(states, n), "minus")
        return MinusTerms(src, dst, wt, len(states))
    states, _, _, _, parts = _hyper_complex_parts(diagram, "minus", bound)
    # Y variables come after the n W variables
    shift = 2 * diagram.size
    src = np.concatenate([parts[0][0], parts[1][0]])
    dst = np.concatenate([parts[0][1], parts[1][1]])
    wt = np.concatenate([parts[0][2], parts[1][2] << shift])
    return MinusTerms(src, dst, wt, len(states))


def verify_minus_d_squared(diagram, bound: Optional[int] = None) -> bool:
    t = minus_terms(diagram, bound)
    return _compose_is_zero(t.src, t.dst, t.weight, t.size)


def terms_square_to_zero(t: MinusTerms) -> bool:
    return _compose_is_zero(t.src, t.dst, t.weight, t.size)


# homology ------------------------------------------------------------------------

def homology_table(c: GradedComplex) -> Table:
    """GF(2) homology rank in every (maslov, alexander) bidegree."""
    keys: Dict[Tuple[int, Tuple[int, ...]], List[int]] = {}
    for i in range(c.size):
        keys.setdefault((int(c.maslov[i]), tuple(int(v) for v in c.alexander[i])), []).append(i)
    local = np.empty(c.size, dtype=np.int64)
    for members in keys.values():
        local[members] = np.arange(len(members))
    out_edges: Dict[int, List[int]] = {}
    for s, t in zip(c.src.tolist(), c.dst.tolist()):
        out_edges.setdefault(s, []).append(int(local[t]))
    ranks = {}
    for key, members in keys.items():
        rows = gf2.pack_rows(out_edges.get(i, ()) for i in members)
        ranks[key] = gf2.rank(rows)       # rank of d leaving this bidegree
    table: Table = {}
    for (m, a), members in keys.items():
        h = len(members) - ranks[(m, a)] - ranks.get((m + 1, a), 0)
        if h:
            table[(m, a)] = h
    return dict(sorted(table.items()))


def chain_table(c: GradedComplex) -> Table:
    out: Table = {}
    for m, a in zip(c.maslov.tolist(), c.alexander.tolist()):
        k = (int(m), tuple(int(v) for v in a))
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def total_rank(table: Table) -> int:
    return sum(table.values())


def poincare_polynomial(table: Table) -> LaurentPoly:
    """Variables (q, t_1, .., t_l); every exponent doubled."""
    nv = 1 + len(next(iter(table))[1]) if table else 1
    return LaurentPoly(nv, {(2 * m,) + a: r for (m, a), r in table.items()})


def _table_from_poly(p: LaurentPoly) -> Table:
    out: Table = {}
    for e, c in p.terms.items():
        out[(e[0] // 2, tuple(e[1:]))] = c
    return out


def hat_extract(table: Table, counts: Sequence[int], hyper: bool = False) -> Table:
    """Divide out V_i^(n_i - 1) (grid) or V_i^(2 n_i - 2) (hypercube), where
    V_i has generators in bidegrees (0, 0) and (-1, -e_i)."""
    remaining = dict(table)
    for i, ni in enumerate(counts):
        k = (2 * ni - 2) if hyper else (ni - 1)
        for _ in range(k):
            remaining = _divide_once(remaining, i)
    return dict(sorted(remaining.items()))


def _divide_once(table: Table, i: int) -> Table:
    P = dict(table)
    H: Table = {}
    shift_a = lambda a, d: tuple(v + d if j == i else v for j, v in enumerate(a))
    # peel the top Maslov degree repeatedly: P = H * (1 + q^-1 t_i^-1)
    while P:
        m_top = max(k[0] for k in P)
        for (m, a) in [k for k in P if k[0] == m_top]:
            c = P.pop((m, a))
            if c == 0:
                continue
            if c < 0:
                raise InexactDivision(f"negative remainder at {(m, a)}")
            H[(m, a)] = H.get((m, a), 0) + c
            low = (m - 1, shift_a(a, -2))
            P[low] = P.get(low, 0) - c
            if P[low] == 0:
                del P[low]
    return H


def euler_characteristic(table: Table) -> LaurentPoly:
    """sum (-1)^M t^A rank, exponents doubled."""
    nv = len(next(iter(table))[1]) if table else 1
    out: Dict[Tuple[int, ...], int] = {}
    for (m, a), r in table.items():
        out[a] = out.get(a, 0) + (-1) ** (m % 2) * r
    return LaurentPoly(nv, out)


def convolve(t1: Table, t2: Table) -> Table:
    out: Table = {}
    for (m1, a1), r1 in t1.items():
        for (m2, a2), r2 in t2.items():
            k = (m1 + m2, tuple(x + y for x, y in zip(a1, a2)))
            out[k] = out.get(k, 0) + r1 * r2
    return dict(sorted(out.items()))


# grid tables aligned with a hyperlink ----------------------------------------

def _relabel(table: Table, perm: Sequence[int], ncomp: int) -> Table:
    out: Table = {}
    for (m, a), r in table.items():
        b = [0] * ncomp
        for j, v in enumerate(a):
            b[perm[j]] = v
        out[(m, tuple(b))] = r
    return out


def _grid_table(args) -> Table:
    g, hat = args
    table = homology_table(build_grid_tilde_complex(g))
    return hat_extract(table, trace_components(g).marking_count) if hat else table


def aligned_grid_tables(h: HypercubeDiagram, hat: bool = False, jobs: int = 1) -> Tuple[Table, Table]:
    """Tilde (or hat) tables of G_wx and G_yz with Alexander entries indexed by
    hyperlink component.  ``jobs > 1`` computes the two in separate processes."""
    link = trace_hyperlink(h)
    grids, perms = [], []
    for plane, lbl, row_axis in (("wx", "W", 1), ("yz", "Y", 3)):
        g = hyper_project_grid(h, plane)
        comps = trace_components(g)
        comp_of = link.component_of(lbl)
        pts = getattr(h, lbl)
        row_comp = {p[row_axis]: comp_of[i] for i, p in enumerate(pts)}
        grids.append(g)
        perms.append([row_comp[comps.components[j][0]] for j in range(len(comps))])
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=2) as pool:
            tables = list(pool.map(_grid_table, [(g, hat) for g in grids]))
    else:
        tables = [_grid_table((g, hat)) for g in grids]
    t1, t2 = (_relabel(t, perm, len(link)) for t, perm in zip(tables, perms))
    return t1, t2


def hyper_tilde_table(h: HypercubeDiagram, route: str = "auto", jobs: int = 1) -> Table:
    """Tilde table, directly (n within the size bound) or via the tensor
    decomposition."""
    if route == "direct" or (route == "auto" and h.size <= hyper_size_bound()):
        return homology_table(build_hyper_tilde_complex(h, bound=None if route == "auto" else h.size))
    t1, t2 = aligned_grid_tables(h, jobs=jobs)
    return convolve(t1, t2)


def hyper_hat_table(h: HypercubeDiagram, route: str = "auto", jobs: int = 1) -> Table:
    if route == "tensor" or (route == "auto" and h.size > hyper_size_bound()):
        t1, t2 = aligned_grid_tables(h, hat=True, jobs=jobs)
        return convolve(t1, t2)
    link = trace_hyperlink(h)
    return hat_extract(hyper_tilde_table(h, route), link.marking_count, hyper=True)


def grid_hat_table(g: GridDiagram) -> Table:
    comps = trace_components(g)
    return hat_extract(homology_table(build_grid_tilde_complex(g)), comps.marking_count)


def table_to_json(table: Table) -> list:
    return [{"maslov": m, "alexander": list(a), "rank": r} for (m, a), r in table.items()]


def table_from_json(items) -> Table:
    return {(d["maslov"], tuple(d["alexander"])): d["rank"] for d in items}

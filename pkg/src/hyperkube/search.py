"""Searching for hypercube diagrams with prescribed projections, and repairing
hand-written marking tables.

Every valid diagram of size n is ``markings_from_sequences(f, g, ys, zs)`` for
four permutations read off its chains: the chain that starts at the W marking
in x-row ``r`` is

    W_r = (f[r], r, ys[r], zs[r])      X_r = (g[r], r, ys[r], zs[r])
    Y_r = (g[r], r', ys[r], zs[r])     Z_r = (g[r], r', ys[r'], zs[r])

with ``r' = f^-1(g[r])``.  Both the search and the repair work in this
parameter space.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cube import check_cube_crossings
from .errors import BudgetExhausted, NoRepairWithinBudget, ValidationError
from .floer import (
    euler_characteristic,
    grid_hat_table,
    hyper_hat_table,
    hyper_tilde_table,
    table_to_json,
    total_rank,
)
from .grid import GridDiagram, linking_number, trace_components
from .hmoves import hyper_swap
from .hypercube import (
    LABELS,
    HypercubeDiagram,
    MarkingSet,
    _cube_wxz,
    _cube_xyz,
    check_markings,
    hyper_project_grid,
    markings_from_sequences,
    trace_hyperlink,
    validate_hypercube,
)
from .pltorus import EMBEDDED, EMBEDDED_LAGRANGIAN, IMMERSED, classify_torus, torus_report

Params = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

CLASS_FILTERS = {
    "any": {EMBEDDED_LAGRANGIAN, EMBEDDED, IMMERSED},
    "embedded": {EMBEDDED_LAGRANGIAN, EMBEDDED},
    "lagrangian": {EMBEDDED_LAGRANGIAN},
    "immersed": {IMMERSED},
}


# knot-type predicates on grid projections ------------------------------------

def is_unknot(g: GridDiagram) -> bool:
    # a knot whose hat homology has rank one is the unknot
    return len(trace_components(g)) == 1 and total_rank(grid_hat_table(g)) == 1


def is_hopf(g: GridDiagram) -> bool:
    if len(trace_components(g)) != 2 or abs(linking_number(g, 0, 1)) != 1:
        return False
    return total_rank(grid_hat_table(g)) == 4


def is_split2(g: GridDiagram) -> bool:
    """Two unlinked components whose hat homology is that of the unlink."""
    if len(trace_components(g)) != 2 or linking_number(g, 0, 1) != 0:
        return False
    return total_rank(grid_hat_table(g)) == 2


PREDICATES = {"unknot": is_unknot, "hopf": is_hopf, "split2": is_split2}


# search ------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchSpec:
    """What to look for.

    An exact ``target_wx`` pins the (w, x) columns of the W and X markings.
    An exact ``target_yz`` is reached by enumerating the alignments of its
    rows with the chains of ``target_wx``.  ``predicate`` is applied to every
    projection that is not pinned by an exact target.
    """
    size: int
    target_wx: Optional[GridDiagram] = None
    target_yz: Optional[GridDiagram] = None
    predicate: Optional[str] = None
    class_filter: str = "any"
    budget: int = 10_000
    seed: int = 0
    max_results: int = 1
    prune: bool = True

    def __post_init__(self):
        for t in (self.target_wx, self.target_yz):
            if t is not None and t.size > self.size:
                raise ValueError(f"target of size {t.size} exceeds n={self.size}")
            if t is not None and t.size != self.size:
                raise ValueError("targets must be stabilized to the search size first")
        if self.target_yz is not None and self.target_wx is None:
            raise ValueError("an exact yz target needs an exact wx target")
        if self.predicate is not None and self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"unknown class filter {self.class_filter!r}")
        if self.size < 2 or self.budget < 0 or self.max_results < 1:
            raise ValueError("size >= 2, budget >= 0 and max_results >= 1 are required")


@dataclass
class SearchStats:
    tried: int = 0
    marking_valid: int = 0
    crossing_valid: int = 0
    matched: int = 0
    classes: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"tried": self.tried, "marking_valid": self.marking_valid,
                "crossing_valid": self.crossing_valid, "matched": self.matched,
                "classes": dict(sorted(self.classes.items()))}


@dataclass(frozen=True)
class Hit:
    index: int
    diagram: HypercubeDiagram
    classification: str
    components: Tuple[int, int]

    def to_json(self) -> dict:
        return {"index": self.index, "class": self.classification,
                "components": {"wx": self.components[0], "yz": self.components[1]},
                "diagram": self.diagram.to_json()}


@dataclass
class SearchResult:
    hits: List[Hit]
    stats: SearchStats


def _inverse(p: Sequence[int]) -> List[int]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return inv


def _cycles(perm: Sequence[int]) -> List[List[int]]:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def yz_alignments(wx: GridDiagram, yz: GridDiagram) -> Iterator[Tuple[List[int], List[int]]]:
    """All (ys, zs) for which the lift of ``wx`` projects to ``yz`` in the yz
    plane.

    ``zs`` must conjugate the chain successor ``r -> f^-1(g[r])`` of ``wx``
    into the row successor ``z -> x_row(y_col[z])`` of ``yz``, so the lifts
    are indexed by matchings of equal-length cycles and their rotations.
    """
    n = wx.size
    s = [_inverse(wx.x_col)[wx.y_col[r]] for r in range(n)]
    x_row = _inverse(yz.x_col)
    s2 = [x_row[yz.y_col[z]] for z in range(n)]
    c1, c2 = _cycles(s), _cycles(s2)
    if sorted(map(len, c1)) != sorted(map(len, c2)):
        return
    for order in itertools.permutations(range(len(c2))):
        if any(len(c1[i]) != len(c2[j]) for i, j in enumerate(order)):
            continue
        for shifts in itertools.product(*(range(len(c)) for c in c1)):
            zs = [0] * n
            for i, j in enumerate(order):
                a, b, k = c1[i], c2[j], shifts[i]
                for t, r in enumerate(a):
                    zs[r] = b[(t + k) % len(b)]
            yield [yz.x_col[zs[r]] for r in range(n)], zs


def wx_depth_order(wx: GridDiagram) -> List[Tuple[int, int]]:
    """Pairs ``(r, r')`` forcing ``zs[r] < zs[r']`` in any crossing-valid lift.

    A crossing of ``wx`` puts the W->X segment of row ``r`` (at z-level
    ``zs[r]``) over the X->Y segment leaving row ``r'`` (at ``zs[r']``), and
    the x-parallel one must be deeper.
    """
    n = wx.size
    w_row = _inverse(wx.x_col)
    out = []
    for r in range(n):
        lo, hi = sorted((wx.x_col[r], wx.y_col[r]))
        for r2 in range(n):
            c = wx.y_col[r2]
            a, b = sorted((r2, w_row[c]))
            if lo < c < hi and a < r < b:
                out.append((r, r2))
    return out


def crossing_valid_lifts(wx: GridDiagram) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Every (ys, zs) whose lift of ``wx`` is crossing-valid, in lexicographic
    order of (zs, ys).

    The wx and zw conditions involve only ``zs`` and the yz and xy conditions
    only ``ys`` once ``zs`` is fixed, so the two levels are enumerated
    separately.  Cost is O(n!) per admissible ``zs``; meant for n <= 7.
    """
    n = wx.size
    f, g = tuple(wx.x_col), tuple(wx.y_col)
    order = wx_depth_order(wx)
    ident = tuple(range(n))
    for zs in itertools.permutations(range(n)):
        if any(zs[a] >= zs[b] for a, b in order):
            continue
        m = markings_from_sequences(f, g, ident, zs)
        if not check_cube_crossings(_cube_wxz(m), (2, 1)).ok:
            continue
        for ys in itertools.permutations(range(n)):
            m = markings_from_sequences(f, g, ys, zs)
            if check_cube_crossings(_cube_xyz(m), (0, 2)).ok:
                yield ys, zs


def _linear_extension(n: int, before: Sequence[Tuple[int, int]], rng: random.Random):
    """Random ranks respecting ``before``; None when the relation has a cycle."""
    preds = [set() for _ in range(n)]
    for a, b in before:
        preds[b].add(a)
    placed, ranks = set(), [0] * n
    for k in range(n):
        free = [i for i in range(n) if i not in placed and preds[i] <= placed]
        if not free:
            return None
        i = rng.choice(free)
        ranks[i] = k
        placed.add(i)
    return ranks


def _params(spec: SearchSpec, index: int, aligned) -> Optional[Params]:
    n = spec.size
    if aligned is not None:
        if index >= len(aligned):
            return None
        ys, zs = aligned[index]
        return tuple(spec.target_wx.x_col), tuple(spec.target_wx.y_col), tuple(ys), tuple(zs)
    rng = random.Random(spec.seed * 1_000_003 + index)
    if spec.target_wx is not None:
        f, g = list(spec.target_wx.x_col), list(spec.target_wx.y_col)
    else:
        f = list(range(n))
        rng.shuffle(f)
        while True:
            g = list(range(n))
            rng.shuffle(g)
            if all(a != b for a, b in zip(f, g)):
                break
    ys, zs = list(range(n)), list(range(n))
    rng.shuffle(ys)
    rng.shuffle(zs)
    if spec.target_wx is not None and spec.prune:
        # only z-levels compatible with the crossings of the pinned grid
        zs = _linear_extension(n, wx_depth_order(spec.target_wx), rng) or zs
    return tuple(f), tuple(g), tuple(ys), tuple(zs)


def _evaluate(spec: SearchSpec, params: Params):
    """(stage reached, class, diagram) for one candidate; stage is 0 marking
    invalid, 1 marking valid, 2 crossing valid, 3 passes every filter."""
    m = markings_from_sequences(*params)
    try:
        check_markings(m.size, m.W, m.X, m.Y, m.Z)
    except ValidationError:
        return 0, None, None
    try:
        h = validate_hypercube(m.size, m.W, m.X, m.Y, m.Z)
    except ValidationError:
        return 1, None, None
    cls = classify_torus(h)
    if cls not in CLASS_FILTERS[spec.class_filter]:
        return 2, cls, None
    if spec.predicate is not None:
        pred = PREDICATES[spec.predicate]
        planes = [p for p, t in (("wx", spec.target_wx), ("yz", spec.target_yz)) if t is None]
        if not all(pred(hyper_project_grid(h, p)) for p in planes):
            return 2, cls, None
    return 3, cls, h


def _evaluate_chunk(args):
    spec, start, stop, aligned = args
    out = []
    for i in range(start, stop):
        params = _params(spec, i, aligned)
        if params is None:
            break
        stage, cls, h = _evaluate(spec, params)
        out.append((i, stage, cls, h))
    return out


def _swap_key(h: HypercubeDiagram):
    key = lambda d: tuple(getattr(d, l) for l in LABELS)
    return min(key(h), key(hyper_swap(h)))


def search_lifts(spec: SearchSpec, jobs: int = 1, chunk: int = 256) -> SearchResult:
    """Stream candidates until ``max_results`` distinct hits or the budget runs
    out.  Candidate ``i`` is a function of ``(seed, i)`` only, so results do not
    depend on ``jobs``.  Raises BudgetExhausted (carrying the statistics) when
    nothing was found."""
    aligned = None
    if spec.target_yz is not None:
        aligned = list(itertools.islice(yz_alignments(spec.target_wx, spec.target_yz), spec.budget))
    total = spec.budget if aligned is None else min(spec.budget, len(aligned))
    stats = SearchStats()
    hits: List[Hit] = []
    seen = set()
    bounds = [(a, min(a + chunk, total)) for a in range(0, total, chunk)]

    def consume(rows) -> bool:
        for i, stage, cls, h in rows:
            stats.tried += 1
            stats.marking_valid += stage >= 1
            stats.crossing_valid += stage >= 2
            if cls is not None:
                stats.classes[cls] = stats.classes.get(cls, 0) + 1
            if h is None:
                continue
            stats.matched += 1
            key = _swap_key(h)
            if key in seen:
                continue
            seen.add(key)
            comps = (len(trace_components(hyper_project_grid(h, "wx"))),
                     len(trace_components(hyper_project_grid(h, "yz"))))
            hits.append(Hit(i, h, cls, comps))
            if len(hits) >= spec.max_results:
                return True
        return False

    if jobs <= 1:
        for a, b in bounds:
            if consume(_evaluate_chunk((spec, a, b, aligned))):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for k in range(0, len(bounds), jobs):
                batch = [(spec, a, b, aligned) for a, b in bounds[k:k + jobs]]
                done = False
                # chunks come back in candidate order, so the merge is deterministic
                for rows in pool.map(_evaluate_chunk, batch):
                    if consume(rows):
                        done = True
                        break
                if done:
                    break
    if not hits:
        raise BudgetExhausted(f"no hit within {total} candidates", stats.to_json())
    return SearchResult(hits, stats)


# repair --------------------------------------------------------------------------

def params_of(h: MarkingSet) -> Params:
    """The four permutations generating a valid marking set."""
    n = h.size
    f, ys, zs, g = [0] * n, [0] * n, [0] * n, [0] * n
    for w, x, y, z in h.W:
        f[x], ys[x], zs[x] = w, y, z
    for w, x, y, z in h.X:
        g[x] = w
    return tuple(f), tuple(g), tuple(ys), tuple(zs)


def _chains(params: Params) -> List[Tuple[Tuple[int, ...], ...]]:
    m = markings_from_sequences(*params)
    f_inv = _inverse(params[0])
    f, g, ys, zs = params
    out = []
    for r in range(len(f)):
        nxt = f_inv[g[r]]
        out.append(((f[r], r, ys[r], zs[r]), (g[r], r, ys[r], zs[r]),
                    (g[r], nxt, ys[r], zs[r]), (g[r], nxt, ys[nxt], zs[r])))
    return out


def repair_cost(table: Dict[str, Sequence], params: Params) -> int:
    """Number of chains with at least one marking absent from ``table``."""
    sets = [set(map(tuple, table.get(l, ()))) for l in LABELS]
    return sum(any(p not in s for p, s in zip(chain, sets)) for chain in _chains(params))


def coordinate_edits(table: Dict[str, Sequence], params: Params) -> int:
    """Changed coordinates, each unmatched marking paired with the closest
    unmatched table entry of its family."""
    m = markings_from_sequences(*params)
    total = 0
    for lbl in LABELS:
        have = set(map(tuple, table.get(lbl, ())))
        got = set(m.families()[lbl])
        spare = sorted(have - got)
        for p in sorted(got - have):
            total += min((sum(a != b for a, b in zip(p, q)) for q in spare), default=4)
    return total


def _votes(table: Dict[str, Sequence], n: int):
    """Per-position value counts for f, g, ys, zs from every marking."""
    f, g, ys, zs = ([Counter() for _ in range(n)] for _ in range(4))
    for w, x, y, z in table.get("W", ()):
        f[x][w] += 1
        ys[x][y] += 1
        zs[x][z] += 1
    for w, x, y, z in table.get("X", ()):
        g[x][w] += 1
        ys[x][y] += 1
        zs[x][z] += 1
    for w, x, y, z in table.get("Y", ()):
        f[x][w] += 1
    for w, x, y, z in table.get("Z", ()):
        f[x][w] += 1
        ys[x][y] += 1
    zs_guess = _assign(zs, n, None)
    z_row = _inverse(zs_guess)
    # Y and Z vote for g through the row whose z level they share
    for w, x, y, z in list(table.get("Y", ())) + list(table.get("Z", ())):
        g[z_row[z]][w] += 1
    return f, g, ys, zs


def _assign(votes: List[Counter], n: int, rng: Optional[random.Random]) -> List[int]:
    """A permutation taking the most voted value at each position, greedily by
    vote strength; leftover positions take the leftover values."""
    order = sorted(((c, -i, v) for i, cnt in enumerate(votes) for v, c in cnt.items()),
                   reverse=True)
    out: List[Optional[int]] = [None] * n
    used = set()
    for c, neg_i, v in order:
        i = -neg_i
        if out[i] is None and v not in used and 0 <= v < n:
            out[i] = v
            used.add(v)
    rest = [v for v in range(n) if v not in used]
    if rng is not None:
        rng.shuffle(rest)
    for i in range(n):
        if out[i] is None:
            out[i] = rest.pop(0)
    return out


def _neighbours(params: Params, depth: int) -> Iterator[Params]:
    n = len(params[0])
    swaps = [(k, i, j) for k in range(4) for i in range(n) for j in range(i + 1, n)]
    yield params
    for d in range(1, depth + 1):
        for combo in itertools.combinations(swaps, d):
            p = [list(q) for q in params]
            for k, i, j in combo:
                p[k][i], p[k][j] = p[k][j], p[k][i]
            yield tuple(tuple(q) for q in p)


def repair_fixture(table: Dict[str, Sequence], size: int, budget: int, *,
                   depth: int = 2, limit: int = 8, trials: int = 2000,
                   seed: int = 0) -> List[HypercubeDiagram]:
    """Valid diagrams within ``budget`` edited chains of a marking table.

    Entries are voted into the four generating permutations, then every
    parameter set reachable by at most ``depth`` transpositions is scored.
    Positions no marking votes for are filled at random (``trials`` seeded
    draws).  Results are sorted by cost; at most ``limit`` are returned.
    """
    n = size
    votes = _votes(table, n)
    undetermined = any(not c for vs in votes for c in vs)
    rng = random.Random(seed)
    starts = []
    for _ in range(trials if undetermined else 1):
        f, g, ys, zs = (_assign(v, n, rng if undetermined else None) for v in votes)
        starts.append((tuple(f), tuple(g), tuple(ys), tuple(zs)))
    found: Dict[Params, int] = {}
    checked = set()
    for start in starts:
        for p in _neighbours(start, depth if not undetermined else 0):
            if p in checked:
                continue
            checked.add(p)
            if any(a == b for a, b in zip(p[0], p[1])) or len(set(p[1])) != n:
                continue
            cost = repair_cost(table, p)
            if cost > budget:
                continue
            m = markings_from_sequences(*p)
            try:
                validate_hypercube(n, m.W, m.X, m.Y, m.Z)
            except ValidationError:
                continue
            found[p] = cost
        if undetermined and len(found) >= limit:
            break
    if not found:
        raise NoRepairWithinBudget(f"no valid completion within {budget} edited chains")
    ranked = sorted(found.items(),
                    key=lambda kv: (kv[1], coordinate_edits(table, kv[0]), kv[0]))[:limit]
    out = []
    for p, _ in ranked:
        m = markings_from_sequences(*p)
        out.append(validate_hypercube(n, m.W, m.X, m.Y, m.Z))
    return out


# reports -------------------------------------------------------------------------

def fixture_report(h: HypercubeDiagram, homology: bool = True) -> dict:
    """Projections, components, classification and, optionally, homology."""
    link = trace_hyperlink(h)
    tr = torus_report(h)
    rep = {
        "size": h.size,
        "components": len(link),
        "marking_count": list(link.marking_count),
        "projections": {},
        "class": tr["class"],
        "chi": tr["chi"],
        "circles": {k: sum(c["class"] == k for c in tr["circles"])
                    for k in ("horizontal", "vertical")},
    }
    for plane in ("wx", "yz", "xy", "zw"):
        g = hyper_project_grid(h, plane)
        comps = trace_components(g)
        lk = [linking_number(g, i, j) for i in range(len(comps)) for j in range(i + 1, len(comps))]
        rep["projections"][plane] = {"grid": g.to_json(), "components": len(comps),
                                     "linking": lk}
    if homology:
        hat = hyper_hat_table(h)
        rep["tilde_rank"] = total_rank(hyper_tilde_table(h))
        rep["hat"] = table_to_json(hat)
        rep["hat_rank"] = total_rank(hat)
        rep["euler"] = str(euler_characteristic(hat))
    return rep

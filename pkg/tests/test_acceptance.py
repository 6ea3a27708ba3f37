"""Acceptance criteria 1-11.  A summary line per criterion is printed at the
end of the run (see conftest.py)."""

import itertools
import os
import random
import time

import pytest

from conftest import load, random_valid
from hyperkube.floer import (
    aligned_grid_tables,
    all_hyperstates,
    alexander,
    build_grid_tilde_complex,
    build_hyper_tilde_complex,
    chain_table,
    convolve,
    euler_characteristic,
    grid_rectangles,
    hat_extract,
    homology_table,
    hyper_gradings,
    hyper_hat_table,
    hyper_tilde_table,
    maslov,
    psi,
    total_rank,
    verify_minus_d_squared,
)
from hyperkube.grid import trace_components
from hyperkube.hmoves import Move, apply_move, legal_moves
from hyperkube.hypercube import hyper_project_grid, trace_hyperlink
from hyperkube.laurent import LaurentPoly, v_factor
from hyperkube.pltorus import build_rectangles, cw_euler_characteristic, lagrangian_patch_residual, torus_report
from hyperkube.search import fixture_report

HYPER_FIXTURES = ["standard_torus", "standard_torus_stabilized", "standard_torus_commuted",
                  "two_tori", "once_linked", "trefoil", "hopf_linked"]
FULL = os.environ.get("HYPERKUBE_FULL") == "1"


def crit(n, title):
    return pytest.mark.criterion(n, title)


# 1 ------------------------------------------------------------------------------

@crit(1, "standard torus: EmbeddedLagrangian, tilde rank 4, hat rank 1 at (0,0), chi=+-1")
def test_standard_torus(std):
    t0 = time.perf_counter()
    assert torus_report(std)["class"] == "EmbeddedLagrangian"
    assert total_rank(hyper_tilde_table(std)) == 4
    hat = hyper_hat_table(std)
    assert hat == {(0, (0,)): 1}
    chi = euler_characteristic(hat)
    assert chi.equals_up_to_sign(LaurentPoly.constant(1, 1))
    assert time.perf_counter() - t0 < 1.0


# 2 ------------------------------------------------------------------------------

CW_FIXTURES = ["standard_torus", "standard_torus_stabilized", "standard_torus_commuted",
               "trefoil", "hopf_linked"]


@crit(2, "CW counts (4n^2, 8n^2, 4n^2) and chi=0 for fixtures with n in {2,3,5,8}")
@pytest.mark.parametrize("name", CW_FIXTURES)
def test_cw_counts(name):
    h = load(name + ".json")
    n = h.size
    chi, (V, E, F) = cw_euler_characteristic(build_rectangles(h))
    assert (V, E, F) == (4 * n * n, 8 * n * n, 4 * n * n) and chi == 0


@crit(2, "CW counts (4n^2, 8n^2, 4n^2) and chi=0 for fixtures with n in {2,3,5,8}")
def test_cw_sizes_covered():
    assert {load(f + ".json").size for f in CW_FIXTURES} == {2, 3, 5, 8}


# 3 ------------------------------------------------------------------------------

def brute_force_grid_tilde(g):
    """Tilde homology of a grid by enumerating states and torus rectangles
    one pair at a time, with gradings from the pair-count formulas."""
    n = g.size
    states = list(itertools.permutations(range(n)))
    index = {s: i for i, s in enumerate(states)}
    grade = [(maslov(g, s), tuple(int(2 * a) for a in alexander(g, s))) for s in states]
    rows = [0] * len(states)
    for s in states:
        for a, b in itertools.combinations(range(n), 2):
            t = list(s)
            t[a], t[b] = t[b], t[a]
            t = tuple(t)
            count = sum(1 for r in grid_rectangles(g, s, t) if r.empty and r.x_count == 0 and r.y_count == 0)
            if count % 2:
                rows[index[s]] ^= 1 << index[t]
    groups = {}
    for i, k in enumerate(grade):
        groups.setdefault(k, []).append(i)

    def rank(vecs):
        basis = {}
        r = 0
        for v in vecs:
            while v:
                top = v.bit_length() - 1
                if top not in basis:
                    basis[top] = v
                    r += 1
                    break
                v ^= basis[top]
        return r

    out_rank = {k: rank(rows[i] for i in members) for k, members in groups.items()}
    table = {}
    for (m, a), members in groups.items():
        h = len(members) - out_rank[(m, a)] - out_rank.get((m + 1, a), 0)
        if h:
            table[(m, a)] = h
    return table


@crit(3, "trefoil hypercube hat equals the trefoil knot Floer table (rank 3)")
def test_trefoil_hypercube(trefoil_h):
    t0 = time.perf_counter()
    hat = hyper_hat_table(trefoil_h, "direct")
    elapsed = time.perf_counter() - t0
    gwx = hyper_project_grid(trefoil_h, "wx")
    gyz = hyper_project_grid(trefoil_h, "yz")
    oracle = hat_extract(brute_force_grid_tilde(gwx), trace_components(gwx).marking_count)
    unknot = hat_extract(brute_force_grid_tilde(gyz), trace_components(gyz).marking_count)
    assert unknot == {(0, (0,)): 1}
    assert hat == oracle
    assert total_rank(hat) == 3 and set(hat.values()) == {1}
    (m0, a0), (m1, a1), (m2, a2) = sorted(hat)
    assert [a0[0], a1[0], a2[0]] == [a0[0], a0[0] + 2, a0[0] + 4]
    assert (m1 - m0, m2 - m1) == (1, 1)
    assert elapsed < 30


# 4 ------------------------------------------------------------------------------

@crit(4, "tensor theorem: direct tilde table = convolution of grid tables, 50+ random n<=4")
def test_tensor_theorem():
    rng = random.Random(2024)
    checked = 0
    for k in range(60):
        h = random_valid(2 + k % 3, rng)
        assert h is not None
        t1, t2 = aligned_grid_tables(h)
        assert homology_table(build_hyper_tilde_complex(h)) == convolve(t1, t2)
        checked += 1
    assert checked >= 50


# 5 ------------------------------------------------------------------------------

def _canonical(t1, t2, ncomp):
    best = None
    for perm in itertools.permutations(range(ncomp)):
        key = tuple(tuple(sorted((m, tuple(a[perm[j]] for j in range(ncomp)), r)
                                 for (m, a), r in t.items())) for t in (t1, t2))
        best = key if best is None or key < best else best
    return best


def _moves_for(h, name):
    moves = [m for m in legal_moves(h) if m.kind in ("stabilize", "commute", "swap")]
    if h.size >= 8 and not FULL:
        # size-9 grid homology is slow; keep one W and one Y stabilization
        keep = {Move("stabilize", index=0, label="W"), Move("stabilize", index=0, label="Y")}
        moves = [m for m in moves if m.kind != "stabilize" or m in keep]
    return moves


@crit(5, "hat table pair unchanged by stabilization, commutation and swap")
@pytest.mark.parametrize("name", HYPER_FIXTURES)
def test_move_invariance(name):
    h = load(name + ".json")
    k = len(trace_hyperlink(h))
    base = _canonical(*aligned_grid_tables(h, hat=True), k)
    moves = _moves_for(h, name)
    assert any(m.kind == "swap" for m in moves)
    for m in moves:
        out = apply_move(h, m)
        t1, t2 = aligned_grid_tables(out, hat=True)
        if m.kind == "swap":
            t1, t2 = t2, t1
        assert _canonical(t1, t2, k) == base, m


# 6 ------------------------------------------------------------------------------

@crit(6, "minus differential squares to zero on every fixture with n<=5")
@pytest.mark.parametrize("name", HYPER_FIXTURES[:-1] + ["trefoil_grid", "hopf_grid", "unknot_grid"])
def test_minus_d_squared(name):
    d = load(name + ".json")
    assert d.size <= 5
    assert verify_minus_d_squared(d)


# 7 ------------------------------------------------------------------------------

@crit(7, "once-linked tori: Euler characteristic of hat homology is zero")
def test_once_linked(once_linked):
    chi = euler_characteristic(hyper_hat_table(once_linked))
    assert chi.is_zero()
    assert len(trace_hyperlink(once_linked)) == 2


# 8 ------------------------------------------------------------------------------

@crit(8, "Hopf-linked tori: n=8, Hopf projections, Embedded, chi=+-(t1-2+t1^-1)(t2-2+t2^-1)")
def test_hopf_linked(hopf_linked, once_linked):
    t0 = time.perf_counter()
    rep = fixture_report(hopf_linked)
    assert hopf_linked.size == 8 and rep["class"] == "Embedded"
    for plane in ("wx", "yz"):
        p = rep["projections"][plane]
        assert p["components"] == 2 and [abs(v) for v in p["linking"]] == [1]
    chi = euler_characteristic(hyper_hat_table(hopf_linked, "tensor"))
    assert chi.equals_up_to_sign(v_factor(0, 2) * v_factor(1, 2))
    assert time.perf_counter() - t0 < 600
    assert hyper_hat_table(hopf_linked) != hyper_hat_table(once_linked)
    assert not euler_characteristic(hyper_hat_table(once_linked)).equals_up_to_sign(chi)


# 9 ------------------------------------------------------------------------------

@crit(9, "trefoil + 5_2 amalgam: Immersed with horizontal and vertical circles")
def test_amalgam():
    h = load("amalgam.json")
    rep = torus_report(h)
    kinds = {c["class"] for c in rep["circles"]}
    assert rep["class"] == "Immersed" and kinds == {"horizontal", "vertical"}
    dets = sorted(abs(_determinant(hyper_project_grid(h, p))) for p in ("wx", "yz"))
    assert dets == [3, 7]


def _determinant(g):
    """|Delta(-1)| from the hat table of a knot grid."""
    chi = euler_characteristic(hat_extract(homology_table(build_grid_tilde_complex(g)),
                                           trace_components(g).marking_count))
    return sum(c * (-1) ** (e[0] // 2) for e, c in chi.terms.items())


# 10 -----------------------------------------------------------------------------

@crit(10, "Lagrangian patch residuals below 1e-12")
@pytest.mark.parametrize("kind", ["edge", "vertex"])
def test_patch_residuals(kind):
    for eps in (0.25, 0.05):
        r = lagrangian_patch_residual(kind, eps, samples=1000, seed=7)
        assert r.omega_max < 1e-12 and r.boundary_max < 1e-12


# 11 -----------------------------------------------------------------------------

@crit(11, "property suites: psi counts, grading additivity, Euler chain = homology")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_psi_counts(n):
    states = all_hyperstates(n)
    perms = list(itertools.permutations(range(n)))
    assert len(states) == len(perms) ** 2
    assert len({tuple(r) for r in states.tolist()}) == len(perms) ** 2
    assert {tuple(psi(s, t)) for s in perms for t in perms} == {
        tuple((r[i], i, r[n + i], i) for i in range(n)) for r in states.tolist()}


@crit(11, "property suites: psi counts, grading additivity, Euler chain = homology")
@pytest.mark.parametrize("name", ["standard_torus", "standard_torus_stabilized", "two_tori"])
def test_grading_additivity(name):
    h = load(name + ".json")
    link = trace_hyperlink(h)
    gw, gy = hyper_project_grid(h, "wx"), hyper_project_grid(h, "yz")
    perms = list(itertools.permutations(range(h.size)))
    for s in perms:
        for t in perms:
            b = hyper_gradings(h, psi(s, t))
            assert b.maslov == maslov(gw, s) + maslov(gy, t)
            if len(link) == 1:
                a = 2 * (alexander(gw, s)[0] + alexander(gy, t)[0])
                assert b.alexander == (a,)


@crit(11, "property suites: psi counts, grading additivity, Euler chain = homology")
@pytest.mark.parametrize("name", ["standard_torus", "standard_torus_commuted", "once_linked", "two_tori"])
def test_euler_chain_equals_homology(name):
    c = build_hyper_tilde_complex(load(name + ".json"))
    assert euler_characteristic(chain_table(c)) == euler_characteristic(homology_table(c))


@crit(11, "property suites: psi counts, grading additivity, Euler chain = homology")
def test_validation_suites_run_standalone():
    import subprocess
    import sys
    from pathlib import Path

    here = Path(__file__).parent
    files = [str(here / f) for f in ("test_grid.py", "test_hypercube.py")]
    r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                       capture_output=True, text=True, cwd=here.parent)
    assert r.returncode == 0, r.stdout[-2000:]

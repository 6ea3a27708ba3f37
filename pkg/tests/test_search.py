import pytest

from conftest import load, load_raw
from hyperkube.errors import BudgetExhausted, NoRepairWithinBudget, ValidationError
from hyperkube.grid import linking_number, trace_components, validate_grid
from hyperkube.hmoves import hyper_swap
from hyperkube.hypercube import hyper_project_grid, markings_from_sequences, validate_hypercube
from hyperkube.search import (
    SearchSpec,
    coordinate_edits,
    fixture_report,
    params_of,
    repair_cost,
    repair_fixture,
    search_lifts,
    wx_depth_order,
    yz_alignments,
)

TREFOIL = validate_grid(5, [0, 1, 2, 3, 4], [3, 4, 0, 1, 2])
HOPF = validate_grid(4, [0, 1, 2, 3], [2, 3, 0, 1])


@pytest.fixture(scope="module")
def hopf_table():
    raw = load_raw("hopf_table.json")
    return raw["table"], raw["size"]


@pytest.fixture(scope="module")
def hopf_repairs(hopf_table):
    table, n = hopf_table
    return {b: repair_fixture(table, n, b) for b in (3, 4)}


@pytest.mark.parametrize("budget", [0, 1, 2])
def test_hopf_table_needs_three_chains(hopf_table, budget):
    table, n = hopf_table
    with pytest.raises(NoRepairWithinBudget):
        repair_fixture(table, n, budget)


def test_hopf_repairs(hopf_table, hopf_repairs):
    table, n = hopf_table
    assert len(hopf_repairs[3]) == 6 and len(hopf_repairs[4]) == 8
    costs = [repair_cost(table, params_of(h)) for h in hopf_repairs[4]]
    assert costs == sorted(costs) and costs[0] == 3
    best = hopf_repairs[3][0]
    assert best == load("hopf_linked.json")
    assert coordinate_edits(table, params_of(best)) == 3
    for plane in ("wx", "yz"):
        g = hyper_project_grid(best, plane)
        assert len(trace_components(g)) == 2 and abs(linking_number(g, 0, 1)) == 1


def test_consistent_table_is_returned_unchanged(std):
    table = {k: v for k, v in std.to_json().items() if k != "size"}
    out = repair_fixture(table, 2, 0)
    assert out[0] == std


def test_empty_table_costs_every_chain(std):
    with pytest.raises(NoRepairWithinBudget):
        repair_fixture({}, 3, 2)
    out = repair_fixture({}, 3, 3, trials=300)
    assert out and all(repair_cost({}, params_of(h)) == 3 for h in out)


def test_params_round_trip(hopf_linked):
    m = markings_from_sequences(*params_of(hopf_linked))
    assert m == hopf_linked.marking_set()


def test_invalid_search_requests_are_rejected():
    with pytest.raises(ValueError):
        SearchSpec(6, target_wx=TREFOIL)
    with pytest.raises(ValueError):
        SearchSpec(5, target_yz=TREFOIL)
    with pytest.raises(ValueError):
        SearchSpec(3, predicate="granny")
    with pytest.raises(ValueError):
        SearchSpec(3, class_filter="smooth")


def test_standard_torus_search(std):
    res = search_lifts(SearchSpec(2, predicate="unknot", class_filter="lagrangian", budget=200, max_results=8))
    keys = {min(h.diagram.W, hyper_swap(h.diagram).W) for h in res.hits}
    assert len(keys) == len(res.hits)
    assert all(h.classification == "EmbeddedLagrangian" for h in res.hits)
    assert res.stats.tried <= 200


def test_trefoil_search_matches_fixture(trefoil_h):
    spec = SearchSpec(5, target_wx=TREFOIL, predicate="unknot", class_filter="embedded", budget=5000, seed=1)
    res = search_lifts(spec)
    assert res.hits[0].diagram == trefoil_h
    rep = fixture_report(trefoil_h)
    assert rep["class"] == "Embedded" and rep["hat_rank"] == 3
    assert rep["projections"]["yz"]["components"] == 1


def test_search_is_deterministic_across_jobs():
    spec = SearchSpec(4, target_wx=HOPF, predicate="split2", class_filter="embedded", budget=3000, seed=0)
    a, b = search_lifts(spec), search_lifts(spec, jobs=2, chunk=200)
    assert [h.to_json() for h in a.hits] == [h.to_json() for h in b.hits]
    assert a.hits[0].diagram == load("once_linked.json")


def test_stats_grow_with_budget():
    last = None
    for budget in (50, 100, 200):
        spec = SearchSpec(3, predicate="unknot", budget=budget, max_results=10 ** 6)
        st = search_lifts(spec).stats
        assert st.tried == budget
        assert st.tried >= st.marking_valid >= st.crossing_valid >= st.matched
        if last:
            assert st.crossing_valid >= last.crossing_valid and st.matched >= last.matched
        last = st


def test_budget_exhaustion_carries_stats():
    spec = SearchSpec(5, target_wx=TREFOIL, predicate="hopf", budget=30)
    with pytest.raises(BudgetExhausted) as info:
        search_lifts(spec)
    assert info.value.stats["tried"] == 30


def test_alignments_produce_the_target_projection():
    for ys, zs in list(yz_alignments(HOPF, HOPF))[:10]:
        m = markings_from_sequences(HOPF.x_col, HOPF.y_col, ys, zs)
        try:
            h = validate_hypercube(4, m.W, m.X, m.Y, m.Z)
        except ValidationError:
            continue
        g = hyper_project_grid(h, "yz")
        assert (g.x_col, g.y_col) == (HOPF.x_col, HOPF.y_col)


def test_depth_order_is_respected_by_valid_lifts(trefoil_h):
    _, _, _, zs = params_of(trefoil_h)
    assert all(zs[a] < zs[b] for a, b in wx_depth_order(TREFOIL))


def test_hopf_linked_report(hopf_linked):
    rep = fixture_report(hopf_linked)
    assert rep["tilde_rank"] == 65536 and rep["hat_rank"] == 16
    assert rep["class"] == "Embedded"

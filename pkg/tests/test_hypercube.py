import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load, random_valid
from hyperkube.errors import CrossingViolation, CubeCountViolation, MalformedSchematic, ValidationError
from hyperkube.grid import trace_components
from hyperkube.hypercube import (
    HypercubeDiagram,
    check_markings,
    generate_markings,
    hyper_project_cube,
    hyper_project_grid,
    markings_from_sequences,
    parse_schematic,
    render_schematic,
    trace_hyperlink,
    validate_hypercube,
)

GOLDEN = Path(__file__).parent / "golden"
SNAPSHOTS = ["standard_torus", "standard_torus_stabilized", "standard_torus_commuted", "two_tori"]


def test_standard_torus_markings(std):
    assert std.W == ((0, 1, 1, 1), (1, 0, 0, 0))
    assert std.X == ((0, 0, 0, 0), (1, 1, 1, 1))
    link = trace_hyperlink(std)
    assert len(link) == 1 and link.marking_count == (2,)
    for plane in ("wx", "yz", "xy", "zw"):
        g = hyper_project_grid(std, plane)
        assert g.size == 2 and len(trace_components(g)) == 1


@pytest.mark.parametrize("name", SNAPSHOTS)
def test_schematic_snapshot(name):
    h = load(name + ".json")
    assert render_schematic(h) == (GOLDEN / (name + ".txt")).read_text()


@pytest.mark.parametrize("name", SNAPSHOTS)
def test_schematic_round_trip(name):
    h = load(name + ".json")
    m = parse_schematic(render_schematic(h))
    assert m == h.marking_set()


def test_schematic_errors():
    with pytest.raises(MalformedSchematic):
        parse_schematic("hypercube n=2\n\n. .\n")
    with pytest.raises(MalformedSchematic):
        parse_schematic("not a header\n")


def test_count_violation():
    with pytest.raises(CubeCountViolation):
        check_markings(2, [(0, 0, 0, 0)], [(0, 0, 0, 0)], [(0, 0, 0, 0)], [(0, 0, 0, 0)])


def test_crossing_violation_names_plane():
    rng = random.Random(3)
    for _ in range(200):
        m = generate_markings(4, rng=rng)
        try:
            validate_hypercube(4, m.W, m.X, m.Y, m.Z)
        except CrossingViolation as exc:
            assert exc.plane in ("wx", "yz", "xy", "zw")
            return
        except ValidationError:
            continue
    pytest.fail("no crossing violation among 200 random marking sets")


def test_cube_projections(std):
    assert hyper_project_cube(std, "w").axes == "xyz"
    assert hyper_project_cube(std, "y").axes == "wxz"
    with pytest.raises(ValueError):
        hyper_project_cube(std, "x")


def test_json_round_trip(hopf_linked):
    assert HypercubeDiagram.from_json(hopf_linked.to_json()) == hopf_linked


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_generated_markings_always_pass_marking_checks(n, seed):
    m = generate_markings(n, seed=seed)
    check_markings(n, m.W, m.X, m.Y, m.Z)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_valid_diagrams_have_consistent_projections(n, seed):
    h = random_valid(n, random.Random(seed))
    if h is None:
        return
    k = len(trace_hyperlink(h))
    for plane in ("wx", "yz", "xy", "zw"):
        assert len(trace_components(hyper_project_grid(h, plane))) == k
    assert parse_schematic(render_schematic(h)) == h.marking_set()


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(4)), st.permutations(range(4)))
def test_sequences_place_one_marking_per_thin(ys, zs):
    m = markings_from_sequences([0, 1, 2, 3], [1, 2, 3, 0], ys, zs)
    check_markings(4, m.W, m.X, m.Y, m.Z)

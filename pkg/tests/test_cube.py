import pytest
from hypothesis import given, settings, strategies as st

from conftest import load
from hyperkube.cube import (
    CubeDiagram,
    check_cube_crossings,
    cube_lift,
    cube_lifts,
    cube_project_grid,
    reconstruct_cube,
    validate_cube_markings,
)
from hyperkube.errors import FlatCountViolation, ProjectionNotGrid, RightAngleViolation, ValidationError
from hyperkube.grid import trace_components, validate_grid

TREFOIL = validate_grid(5, [0, 1, 2, 3, 4], [3, 4, 0, 1, 2])


def test_unknot_lifts():
    g = validate_grid(2, [0, 1], [1, 0])
    lifts = list(cube_lifts(g))
    assert len(lifts) == 2
    for c in lifts:
        assert cube_project_grid(c, "xy") == cube_project_grid(lifts[0], "xy")


def test_trefoil_has_a_single_lift():
    lifts = list(cube_lifts(TREFOIL))
    assert len(lifts) == 1
    assert lifts[0] == load("cube_trefoil.json")


def test_bundled_cube_projects_to_its_grid():
    c = load("cube_trefoil.json")
    g = cube_project_grid(c, "xy")
    assert (g.x_col, g.y_col) == (TREFOIL.x_col, TREFOIL.y_col)
    for plane in ("yz", "zx"):
        assert len(trace_components(cube_project_grid(c, plane))) == 1


def test_zflip_fails_in_xy_only():
    c = load("cube_trefoil.json")
    lv = {p[1]: p[2] for p in c.X}
    bad = None
    for a in range(5):
        for b in range(a + 1, 5):
            levels = [lv[r] for r in range(5)]
            levels[a], levels[b] = levels[b], levels[a]
            try:
                cand = cube_lift(TREFOIL, levels)
            except ValidationError:
                continue
            if check_cube_crossings(cand).planes() and set(check_cube_crossings(cand).planes()) == {"xy"}:
                bad = cand
                break
        if bad:
            break
    assert bad is not None
    with pytest.raises(ProjectionNotGrid):
        cube_project_grid(bad, "xy")
    cube_project_grid(bad, "yz")


def test_marking_errors():
    c = load("cube_trefoil.json")
    with pytest.raises(FlatCountViolation):
        validate_cube_markings(5, c.X[:-1], c.Y, c.Z)
    X = list(c.X)
    X[0], X[1] = (X[1][0], X[0][1], X[0][2]), (X[0][0], X[1][1], X[1][2])
    with pytest.raises(ValidationError):
        validate_cube_markings(5, X, c.Y, c.Z)


def test_right_angle_required():
    with pytest.raises(RightAngleViolation):
        validate_cube_markings(2, [(0, 0, 0), (1, 1, 1)], [(1, 1, 0), (0, 0, 1)], [(1, 1, 0), (0, 0, 1)])


def test_json_round_trip():
    c = load("cube_trefoil.json")
    assert CubeDiagram.from_json(c.to_json()) == c


@st.composite
def lifted_cubes(draw):
    n = draw(st.integers(2, 5))
    x = draw(st.permutations(range(n)))
    y = draw(st.permutations(range(n)).filter(lambda p: all(a != b for a, b in zip(x, p))))
    levels = draw(st.permutations(range(n)))
    g = validate_grid(n, x, y)
    try:
        return cube_lift(g, levels)
    except ValidationError:
        return None


@settings(max_examples=80, deadline=None)
@given(lifted_cubes())
def test_reconstruct_round_trip(c):
    if c is None or not check_cube_crossings(c).ok:
        return
    r = reconstruct_cube(cube_project_grid(c, "xy"), cube_project_grid(c, "yz"))
    assert {k: set(v) for k, v in r.markings().items()} == {k: set(v) for k, v in c.markings().items()}


@settings(max_examples=80, deadline=None)
@given(lifted_cubes())
def test_projections_share_component_count(c):
    if c is None or not check_cube_crossings(c).ok:
        return
    counts = {len(trace_components(cube_project_grid(c, p))) for p in ("xy", "yz", "zx")}
    assert len(counts) == 1

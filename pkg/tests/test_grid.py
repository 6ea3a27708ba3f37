import pytest
from hypothesis import given, settings, strategies as st

from hyperkube.errors import BadComponentIndex, DuplicateInColumn, IllegalCommutation, InvalidRow, SharedCell
from hyperkube.grid import (
    GridDiagram,
    grid_commute,
    grid_destabilize,
    grid_stabilize,
    linking_number,
    mirror,
    render_grid_ascii,
    resolve_crossings,
    trace_components,
    validate_grid,
)

UNKNOT = validate_grid(2, [0, 1], [1, 0])
TREFOIL = validate_grid(5, [0, 1, 2, 3, 4], [2, 3, 4, 0, 1])
HOPF = validate_grid(4, [0, 1, 2, 3], [2, 3, 0, 1])
SPLIT = validate_grid(4, [0, 1, 2, 3], [1, 0, 3, 2])


@st.composite
def grids(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    x = draw(st.permutations(range(n)))
    y = draw(st.permutations(range(n)).filter(lambda p: all(a != b for a, b in zip(x, p))))
    return validate_grid(n, x, y)


def test_validate_examples():
    assert UNKNOT.size == 2
    with pytest.raises(SharedCell):
        validate_grid(2, [0, 1], [0, 1])
    with pytest.raises(DuplicateInColumn):
        validate_grid(2, [0, 0], [1, 0])


def test_json_round_trip():
    for g in (UNKNOT, TREFOIL, mirror(HOPF)):
        assert GridDiagram.from_json(g.to_json()) == g


def test_components():
    c = trace_components(UNKNOT)
    assert len(c) == 1 and c.marking_count == (2,)
    assert trace_components(SPLIT).marking_count == (2, 2)
    assert trace_components(TREFOIL).marking_count == (5,)


def test_crossings():
    assert resolve_crossings(UNKNOT) == []
    cr = resolve_crossings(TREFOIL)
    assert len(cr) >= 3
    assert len({c.sign for c in cr}) == 1


def test_mirror_flips_over_strands():
    m = mirror(TREFOIL)
    assert mirror(m) == TREFOIL
    a, b = resolve_crossings(TREFOIL), resolve_crossings(m)
    assert [c.position for c in a] == [c.position for c in b]
    assert all(p.over_axis != q.over_axis and p.sign == -q.sign for p, q in zip(a, b))


def test_linking_numbers():
    assert linking_number(SPLIT, 0, 1) == 0
    assert abs(linking_number(HOPF, 0, 1)) == 1
    with pytest.raises(BadComponentIndex):
        linking_number(UNKNOT, 0, 1)


def test_stabilize_unknot():
    for corner in range(4):
        g = grid_stabilize(UNKNOT, 0, corner)
        assert g.size == 3 and len(trace_components(g)) == 1
    with pytest.raises(InvalidRow):
        grid_stabilize(UNKNOT, 5)


def test_commutation_examples():
    # rows 1 and 2 of the split grid lie in different blocks
    g = grid_commute(SPLIT, 1, "y")
    assert len(trace_components(g)) == 2
    interleaved = validate_grid(4, [0, 1, 3, 2], [2, 3, 1, 0])
    with pytest.raises(IllegalCommutation):
        grid_commute(interleaved, 0, "y")


def test_ascii_render_is_deterministic():
    text = render_grid_ascii(TREFOIL)
    assert text == render_grid_ascii(TREFOIL)
    assert text.count("X") == 5 and text.count("Y") == 5
    marked = [line for line in text.splitlines() if "X" in line]
    assert len(marked) == 5 and all(line.count("Y") == 1 for line in marked)


@settings(max_examples=60, deadline=None)
@given(grids())
def test_rows_and_columns_hold_one_marking_each(g):
    assert sorted(g.x_col) == list(range(g.size)) == sorted(g.y_col)


@settings(max_examples=60, deadline=None)
@given(grids())
def test_component_count_is_cycle_count(g):
    perm = [g.x_row(g.y_col[r]) for r in range(g.size)]
    seen, cycles = set(), 0
    for s in range(g.size):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    assert len(trace_components(g)) == cycles


@settings(max_examples=60, deadline=None)
@given(grids(), st.data())
def test_destabilize_inverts_stabilize(g, data):
    row = data.draw(st.integers(0, g.size - 1))
    corner = data.draw(st.integers(0, 3))
    s = grid_stabilize(g, row, corner)
    assert len(trace_components(s)) == len(trace_components(g))
    back = [c for c in range(s.size) if _try_destab(s, c) == g]
    assert back


def _try_destab(g, c):
    try:
        return grid_destabilize(g, c)
    except (InvalidRow, SharedCell, DuplicateInColumn):
        return None


@settings(max_examples=40, deadline=None)
@given(grids())
def test_mirror_symmetry_of_crossings(g):
    a, b = resolve_crossings(g), resolve_crossings(mirror(g))
    assert [c.position for c in a] == [c.position for c in b]
    assert all(p.over_axis != q.over_axis for p, q in zip(a, b))

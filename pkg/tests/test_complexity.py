import pytest
from hypothesis import given, strategies as st

from equilib.complexity import (R_bruteforce, R_closed, Status, class_bounds, complexity_of, grid,
                                is_polyhedral_pair, minimal_pair)
from equilib.geometry import cube, regular_tetrahedron

from oracles import brute_R

small = st.integers(1, 40)


def test_polyhedral_pairs():
    assert is_polyhedral_pair(4, 4)
    assert is_polyhedral_pair(6, 8) and is_polyhedral_pair(8, 6)
    assert not is_polyhedral_pair(4, 5)
    assert not is_polyhedral_pair(3, 3)
    assert not is_polyhedral_pair(10, 4)


@given(small, small)
def test_closed_form_matches_scan(S, U):
    assert R_closed(S, U) == R_bruteforce(S, U) == brute_R(S, U)


@given(small, small)
def test_closed_form_symmetric_and_nonnegative(S, U):
    assert R_closed(S, U) == R_closed(U, S) >= 0


@given(small, small)
def test_minimal_pair_attains(S, U):
    f, v = minimal_pair(S, U)
    assert is_polyhedral_pair(f, v) and f >= S and v >= U
    assert f + v - S - U == R_closed(S, U)


def test_R_zero_exactly_on_pairs():
    for S in range(4, 25):
        for U in range(4, 25):
            assert (R_closed(S, U) == 0) == is_polyhedral_pair(S, U)


@pytest.mark.parametrize("S,U,R", [(1, 1, 6), (2, 2, 4), (1, 4, 3), (1, 5, 4), (1, 6, 4), (5, 1, 4),
                                   (4, 1, 3), (7, 10, 0), (5, 12, 3), (12, 5, 3)])
def test_R_values(S, U, R):
    assert R_closed(S, U) == R


def test_complexity_of_minimal_solids():
    assert complexity_of(cube()) == 0
    assert complexity_of(regular_tetrahedron()) == 0


def test_bounds_exact_cells():
    b = class_bounds(5, 12)
    assert (b.lower, b.upper, b.status) == (6, 6, Status.EXACT)


def test_bounds_monostable():
    for U, up in ((4, 96), (5, 98), (6, 98), (7, 100)):
        b = class_bounds(1, U)
        assert b.status == Status.BOUNDED and b.upper == up
        assert b.lower == 2 * R_closed(1, U)


def test_bounds_monounstable():
    assert class_bounds(5, 1).upper == 66
    assert class_bounds(7, 1).upper == 68
    even = class_bounds(4, 1)
    assert even.upper == 66
    assert any("68" in n for n in even.notes)
    assert class_bounds(3, 1).upper == 64
    assert class_bounds(2, 1).upper == 66


def test_bounds_open_cells():
    for cls in ((1, 1), (1, 2), (1, 3)):
        b = class_bounds(*cls)
        assert b.status == Status.LOWER_ONLY and b.upper is None
    with pytest.raises(ValueError):
        class_bounds(0, 3)


def test_grid_layout():
    cells = grid(3, 4)
    assert len(cells) == 12
    assert [(c.S, c.U) for c in cells[:5]] == [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1)]
    assert all(c.lower <= c.upper for c in cells if c.upper is not None)

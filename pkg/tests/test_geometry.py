import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import U, rect, sq
from dynlabel.errors import CoordinateRangeError, FormatError
from dynlabel.geometry import (
    UNIT, Box, Square, from_units, grid_index, grid_point_of, intersects,
    intersects_rect, scaled_box, to_units,
)


@pytest.mark.parametrize("b, expected", [((0.9, 0), True), ((1.0, 0), False)])
def test_intersects_examples(b, expected):
    assert intersects(sq(1, 0, 0), sq(2, *b)) is expected


def test_intersects_far_in_y():
    assert not intersects(sq(1, 0.5, 0.5), sq(2, 1.2, 1.6))


def test_scaled_box_examples():
    assert scaled_box(sq(1, 0, 0), 2) == Box(U(-1), U(1), U(-1), U(1))
    assert scaled_box(sq(1, 3, 2), 4) == Box(U(1), U(5), U(0), U(4))
    box = scaled_box(sq(1, 0, 0), 2)
    assert box.contains(U(0.9), U(0.9))
    assert not box.contains(U(1.0), U(0.5))
    with pytest.raises(ValueError):
        scaled_box(sq(1, 0, 0), 3)


@pytest.mark.parametrize("center, point", [
    ((3.2, 2.7), (3, 3)),
    ((2.5, 4.1), (4, 2)),
    ((0.0, 0.0), (0, 0)),
])
def test_grid_point_examples(center, point):
    # grid_point_of returns (row, col)
    assert grid_point_of(sq(1, *center)) == point


def test_intersects_rect_examples():
    a = rect(1, 1, 0, 2)  # [0,2] on row 0
    assert intersects_rect(a, rect(2, 2.45, 0, 1.1))  # [1.9,3]
    assert not intersects_rect(a, rect(3, 2.5, 0, 1))  # [2,3]
    assert not intersects_rect(a, rect(4, 1, 1, 2))


def test_unit_conversion_round_trip():
    assert to_units("1.2345") == 1234  # half to even
    assert to_units("1.2355") == 1236
    assert from_units(-1500) == "-1.500"
    with pytest.raises(FormatError):
        to_units("abc")
    with pytest.raises(CoordinateRangeError):
        to_units(str(2 ** 41))


coord = st.integers(-50 * UNIT, 50 * UNIT)


@given(coord, coord, coord, coord)
def test_intersects_symmetric_and_reflexive(x1, y1, x2, y2):
    a, b = Square(1, x1, y1), Square(2, x2, y2)
    assert intersects(a, b) == intersects(b, a)
    assert intersects(a, a)
    assert intersects(a, b) == (abs(x1 - x2) < UNIT and abs(y1 - y2) < UNIT)


@given(coord)
def test_exactly_one_grid_line_in_half_open_span(c):
    # lines at multiples of UNIT inside [c - S/2, c + S/2)
    inside = [k for k in range(c // UNIT - 2, c // UNIT + 3)
              if 2 * c - UNIT <= 2 * k * UNIT < 2 * c + UNIT]
    assert inside == [grid_index(c)]


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(-2 * UNIT + 1, 2 * UNIT - 1),
                          st.integers(-2 * UNIT + 1, 2 * UNIT - 1)), max_size=40))
def test_packing_bounds(points):
    """Independent centers: at most 4 in s^2, at most 12 in the s^4 - s^2 annulus."""
    chosen = []
    for i, (x, y) in enumerate(points):
        s = Square(i, x, y)
        if not any(intersects(s, t) for t in chosen):
            chosen.append(s)
    inner = scaled_box(Square(-1, 0, 0), 2)
    in_s2 = [s for s in chosen if inner.contains(s.cx, s.cy)]
    assert len(in_s2) <= 4
    assert len(chosen) - len(in_s2) <= 12


def test_twelve_fit_in_annulus():
    ring = [(x, y) for x, y in itertools.product((-1.5, -0.5, 0.5, 1.5), repeat=2)
            if max(abs(x), abs(y)) > 1]
    squares = [sq(i, x, y) for i, (x, y) in enumerate(ring)]
    assert len(squares) == 12
    assert not any(intersects(a, b) for a, b in itertools.combinations(squares, 2))

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import U
from dynlabel.errors import DuplicateId, UnknownId
from dynlabel.geometry import Box, Square, intersects, scaled_box
from dynlabel.range_index import RangeIndex


def box(x0, x1, y0, y1):
    return Box(U(x0), U(x1), U(y0), U(y1))


def ids(points):
    return {i for i, _, _ in points}


def test_insert_report():
    r = RangeIndex()
    r.insert(1, U(1), U(1))
    r.insert(2, U(2), U(3))
    assert ids(r.report(box(0, 1.5, 0, 1.5))) == {1}


def test_insert_delete_leaves_nothing():
    r = RangeIndex()
    r.insert(1, U(1), U(1))
    r.delete(1)
    assert r.witness(box(-100, 100, -100, 100)) is None
    assert len(r) == 0


def test_errors():
    r = RangeIndex()
    r.insert(1, U(1), U(1))
    with pytest.raises(DuplicateId):
        r.insert(1, U(1), U(1))
    with pytest.raises(UnknownId):
        RangeIndex().delete(99)


def test_delete_then_report():
    r = RangeIndex([(1, U(1), U(1)), (2, U(5), U(5))])
    r.delete(1)
    assert ids(r.report(box(0, 10, 0, 10))) == {2}


def test_witness_is_open():
    r = RangeIndex([(1, U(1), U(1))])
    assert r.witness(box(0, 2, 0, 2)) == (1, U(1), U(1))
    assert r.witness(box(1, 2, 1, 2)) is None
    r.insert(2, U(1.5), U(1.5))
    assert r.witness(box(0, 2, 0, 2))[0] in {1, 2}


def test_report_corner_four_and_empty():
    pts = [(i, U(x), U(y)) for i, (x, y) in enumerate(itertools.product((-0.9, 0.9), repeat=2))]
    assert len(RangeIndex(pts).report(box(-1, 1, -1, 1))) == 4
    assert RangeIndex().report(box(-1, 1, -1, 1)) == []


def test_report_twelve_in_annulus():
    # independent centers in s^4 minus s^2 of the origin square
    ring = [(x, y) for x, y in itertools.product((-1.5, -0.5, 0.5, 1.5), repeat=2)
            if max(abs(x), abs(y)) > 1]
    pts = [(i, U(x), U(y)) for i, (x, y) in enumerate(ring)]
    squares = [Square(i, x, y) for i, x, y in pts]
    assert not any(intersects(a, b) for a, b in itertools.combinations(squares, 2))
    outer = scaled_box(Square(-1, 0, 0), 4)
    got = RangeIndex(pts).report(outer)
    scan = [p for p in pts if outer.contains(p[1], p[2])]
    assert sorted(got) == sorted(scan) and len(got) == 12


def _scan(live, b):
    return {i for i, (x, y) in live.items() if b.xmin < x < b.xmax and b.ymin < y < b.ymax}


def test_fuzz_against_linear_scan():
    rng = random.Random(7)
    r, live = RangeIndex(), {}
    for step in range(6000):
        if live and rng.random() < 0.45:
            i = rng.choice(list(live))
            assert r.delete(i) == live.pop(i)
        else:
            i = step
            # coarse coordinates force many duplicates and collinear points
            x, y = rng.randint(0, 40) * 250, rng.randint(0, 40) * 250
            r.insert(i, x, y)
            live[i] = (x, y)
        if step % 50 == 0:
            x0, y0 = rng.randint(-500, 10500), rng.randint(-500, 10500)
            b = Box(x0, x0 + rng.randint(1, 4000), y0, y0 + rng.randint(1, 4000))
            expect = _scan(live, b)
            assert ids(r.report(b)) == expect
            w = r.witness(b)
            assert (w is None) == (not expect)
            assert w is None or w[0] in expect
        if step % 1000 == 0:
            r.check()
    r.check()
    assert {i: (x, y) for i, x, y in r} == live


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 300), st.integers(0, 300)), max_size=200),
       st.lists(st.tuples(st.integers(-10, 310), st.integers(1, 150),
                          st.integers(-10, 310), st.integers(1, 150)), min_size=1, max_size=10))
def test_report_matches_filter(points, boxes):
    live = {i: p for i, p in enumerate(points)}
    r = RangeIndex((i, x, y) for i, (x, y) in live.items())
    for x0, w, y0, h in boxes:
        b = Box(x0, x0 + w, y0, y0 + h)
        assert ids(r.report(b)) == _scan(live, b)

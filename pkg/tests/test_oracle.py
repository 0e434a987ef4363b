import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_max_is, rect, sq
from dynlabel.errors import CapExceeded
from dynlabel.geometry import Rect, Square, UNIT
from dynlabel.interval_index import Interval
from dynlabel.oracle import (
    components, exact_interval_mis, exact_max_is, max_is_bounds, verify_is,
)


def test_exact_examples(corner_pack):
    center, ring = corner_pack
    assert exact_max_is([center] + ring).size == 4
    assert exact_max_is([sq(i, 2 * i, 0) for i in range(9)]).size == 9
    three = [sq(1, 1.2, 1.1), sq(2, 3.1, 1.2), sq(3, 2.2, 2.1)]
    res = exact_max_is(three)
    assert res.size == 2 and verify_is(three, res.witness).independent


def test_cap():
    shapes = [sq(i, 2 * i, 0) for i in range(11)]
    with pytest.raises(CapExceeded):
        exact_max_is(shapes, cap=10)
    assert exact_max_is(shapes, cap=None).size == 11


def test_verify_examples():
    a, b, c = sq(1, 0, 0), sq(2, 0.5, 0), sq(3, 2, 0)
    r = verify_is([a, b, c], {1, 3})
    assert r.independent and r.maximal
    r = verify_is([a, b, c], {1})
    assert r.independent and not r.maximal
    r = verify_is([], set())
    assert r.independent and r.maximal
    assert not verify_is([a, b], {1, 2}).independent


def test_interval_examples():
    ivs = [Interval(1, 0, 10), Interval(2, 5, 15), Interval(3, 20, 30)]
    res = exact_interval_mis(ivs)
    assert res.size == 2 and res.witness == {1, 3}
    assert exact_interval_mis([Interval(1, 0, 100), Interval(2, 10, 20)]).size == 1
    assert exact_interval_mis([Interval(i, 10 * i, 10 * i + 5) for i in range(5)]).size == 5


def _random_shapes(rng, n, rects):
    out = []
    for i in range(n):
        x, y = rng.randint(0, 4 * UNIT), rng.randint(0, 4 * UNIT)
        out.append(Rect(i, x, y, rng.randint(300, 2500)) if rects else Square(i, x, y))
    return out


@pytest.mark.parametrize("method", ["bnb", "milp", "auto"])
@pytest.mark.parametrize("rects", [False, True])
def test_exact_matches_enumeration(method, rects):
    rng = random.Random(int(rects) + 7)
    for _ in range(40):
        shapes = _random_shapes(rng, rng.randint(0, 14), rects)
        res = exact_max_is(shapes, method=method)
        assert res.size == brute_max_is(shapes)
        assert len(res.witness) == res.size
        assert verify_is(shapes, res.witness).independent


def test_interval_oracle_matches_degenerate_rects():
    rng = random.Random(2)
    for _ in range(30):
        rs = [Rect(i, rng.randint(0, 8000), 0, rng.randint(200, 3000)) for i in range(rng.randint(0, 16))]
        ivs = [Interval(r.id, 2 * r.cx - r.w, 2 * r.cx + r.w) for r in rs]
        assert exact_interval_mis(ivs).size == exact_max_is(rs).size


def test_methods_agree_on_dense_clusters():
    rng = random.Random(4)
    shapes = [Square(i, int(rng.gauss(0, 1500)), int(rng.gauss(0, 1500))) for i in range(70)]
    assert max(map(len, components(shapes))) > 40
    a = exact_max_is(shapes, method="bnb").size
    assert a == exact_max_is(shapes, method="milp").size
    lo, hi = max_is_bounds(shapes, exact_below=10)
    assert lo <= a <= hi


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3000), st.integers(0, 3000)), max_size=12))
def test_bnb_equals_enumeration_property(points):
    shapes = [Square(i, x, y) for i, (x, y) in enumerate(points)]
    assert exact_max_is(shapes, method="bnb").size == brute_max_is(shapes)

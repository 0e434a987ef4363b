import random

import pytest

from conftest import brute_independent, brute_max_is, sq
from dynlabel.algo_grid import GridMIS
from dynlabel.errors import DuplicateId, OutOfFrame, UnknownId
from dynlabel.geometry import Square, UNIT, grid_point_of
from dynlabel.oracle import static_grid


def three():
    return [sq(1, 1.2, 1.1), sq(2, 3.1, 1.2), sq(3, 2.2, 2.1)]


def test_three_square_example():
    shapes = three()
    assert [grid_point_of(s) for s in shapes] == [(1, 1), (1, 3), (2, 2)]
    g = GridMIS(shapes, kappa=8)
    assert (g.p[1], g.q[1], g.c[1]) == (2, 0, 2)
    assert g.c[2] == 1
    assert g.agg == [1, 2]  # even rows, odd rows
    assert g.size == 2 and g.solution() == {1, 2}
    assert brute_max_is(shapes) == 2
    g.check()


def test_insert_into_even_row_of_example():
    g = GridMIS(three())
    # grid point (2, 4): columns 2 and 4 are both even on row 2
    g.insert(sq(4, 4.1, 2.2))
    assert (g.p[2], g.q[2], g.c[2]) == (0, 2, 2)
    # tie between the row parities goes to the even rows
    assert g.agg == [2, 2] and g.parity == 0
    assert g.size == 2 and g.solution() == {3, 4}
    g.check()


def test_trivial_builds():
    g = GridMIS()
    assert g.solution() == set() and g.agg == [0, 0]
    assert GridMIS([sq(1, 0, 0)]).solution() == {1}


def test_insert_at_active_point_keeps_size():
    g = GridMIS([sq(1, 1.0, 1.0)])
    assert g.insert(sq(2, 1.2, 0.9)).size == 1
    assert g.touched == 0


def test_odd_column_breaks_tie():
    g = GridMIS([sq(1, 0, 0)])  # even column 0: q=1
    g.insert(sq(2, 3, 0))  # odd column 3: p=1 = q, odd wins
    assert g.line_solution(0) == {2}
    g.insert(sq(3, 5, 0))
    assert (g.p[0], g.c[0]) == (2, 2) and g.size == 2


def test_delete_cases():
    g = GridMIS([sq(1, 1.0, 1.0), sq(2, 1.1, 1.1), sq(3, 3, 1)])
    assert g.representative(1, 1) == 1 and g.solution() == {1, 3}
    assert g.delete(1).size == 2  # representative replaced by the other square
    assert g.solution() == {2, 3}
    g.insert(sq(4, 0.9, 0.9))
    assert g.delete(4).size == 2  # non-representative
    g.delete(2)
    assert g.p[1] == 1 and g.size == 1
    with pytest.raises(UnknownId):
        g.delete(2)
    with pytest.raises(DuplicateId):
        g.insert(sq(3, 0, 0))
    g.check()


def test_out_of_frame():
    with pytest.raises(OutOfFrame):
        GridMIS([sq(1, 9, 0)], kappa=5)
    g = GridMIS(kappa=5)
    with pytest.raises(OutOfFrame):
        g.insert(sq(1, -1, 0))


def test_dense_buckets_match_hash_buckets():
    rng = random.Random(5)
    a, b = GridMIS(kappa=12), GridMIS(kappa=12, dense=True)
    live = []
    for i in range(2000):
        if live and rng.random() < 0.5:
            j = live.pop(rng.randrange(len(live)))
            assert a.delete(j) == b.delete(j)
        else:
            s = Square(i, rng.randint(0, 11 * UNIT - 501), rng.randint(0, 11 * UNIT - 501))
            assert a.insert(s) == b.insert(s)
            live.append(i)
        assert a.solution() == b.solution()
    b.check()


@pytest.mark.parametrize("seed", range(5))
def test_fuzz_ledgers_and_static_equivalence(seed):
    rng = random.Random(seed)
    g, live = GridMIS(), {}
    for i in range(3000):
        if live and rng.random() < 0.5:
            j = rng.choice(list(live))
            del live[j]
            g.delete(j)
        else:
            live[i] = Square(i, rng.randint(0, 20 * UNIT), rng.randint(0, 20 * UNIT))
            g.insert(live[i])
        # constant work per update: one parity counter, c(row), one aggregate
        assert g.touched in (0, 3)
        if i % 100 == 0:
            g.check()
            sol = g.solution()
            assert sol == static_grid(live.values())
            assert brute_independent(live.values(), sol)

import random

import pytest

from conftest import U, brute_independent, rect
from dynlabel.algo_line import LineMIS
from dynlabel.errors import DuplicateId, UnknownId
from dynlabel.geometry import Rect, UNIT
from dynlabel.interval_index import greedy_chain
from dynlabel.oracle import static_line


def span(i, lo, hi, y=0):
    """Rect covering [lo, hi] on the row through y."""
    return rect(i, (lo + hi) / 2, y, hi - lo)


def chain_ids(m, u=0):
    return [v.id for v in m.lines[u].chain()]


def test_build_one_line():
    m = LineMIS([span(1, 0, 2), span(2, 2.5, 5), span(3, 5.5, 7)])
    assert chain_ids(m) == [1, 2, 3] and m.omega() == 3 and m.size == 3


def test_build_two_lines_picks_better_parity():
    rs = [span(1, 0, 2, 1), span(2, 2.5, 5, 1), span(3, 5.5, 7, 1), span(4, 0, 7, 2)]
    m = LineMIS(rs)
    assert m.agg == [1, 3] and m.size == 3 and m.solution() == {1, 2, 3}
    assert brute_independent(rs, m.solution())


def test_empty_and_single():
    m = LineMIS()
    assert (m.solution(), m.omega()) == (set(), 0)
    m = LineMIS([span(1, 0, 1)])
    assert (m.solution(), m.omega()) == ({1}, 1)


def test_insert_cascade_example():
    m = LineMIS([span(1, 0, 2), span(2, 2.5, 5), span(3, 5.5, 7)])
    m.insert(span(4, 2.1, 3.0))
    assert chain_ids(m) == [1, 4, 3] and m.omega() == 3
    assert [v.id for v in m.last_change.removed] == [2]
    m.check()


def test_insert_far_right_and_straddling():
    m = LineMIS([span(1, 0, 2)])
    m.insert(span(2, 10, 11))
    assert chain_ids(m) == [1, 2] and m.omega() == 2
    m = LineMIS([span(1, 0, 2), span(2, 2.5, 5)])
    m.insert(span(3, 0.5, 4))
    assert chain_ids(m) == [1, 2]


def test_delete_examples():
    m = LineMIS([span(1, 0, 2), span(2, 2.5, 5), span(3, 5.5, 7), span(4, 2.1, 3.0)])
    m.delete(4)
    assert chain_ids(m) == [1, 2, 3]
    m = LineMIS([span(1, 0, 2), span(2, 2.5, 5), span(3, 5.5, 7), span(4, 2.1, 3.0)])
    m.delete(2)
    assert chain_ids(m) == [1, 4, 3]
    m = LineMIS([span(1, 0, 2)])
    m.delete(1)
    assert m.omega() == 0 and m.solution() == set()
    with pytest.raises(UnknownId):
        m.delete(1)
    m.insert(span(1, 0, 2))
    with pytest.raises(DuplicateId):
        m.insert(span(1, 0, 2))


def test_row_boundary_assignment():
    # the span [cy - 1/2, cy + 1/2) holds exactly one line: the lower one on a tie
    m = LineMIS([rect(1, 0, 0.5, 1), rect(2, 0, 0.51, 1)])
    assert m.where == {1: 0, 2: 1}


@pytest.mark.parametrize("seed", range(6))
def test_fuzz_lines_equal_greedy(seed):
    rng = random.Random(seed)
    m, live = LineMIS(), {}
    for i in range(1500):
        if live and rng.random() < 0.5:
            j = rng.choice(list(live))
            del live[j]
            m.delete(j)
        else:
            live[i] = Rect(i, rng.randint(0, 30 * UNIT), rng.randint(0, 6 * UNIT),
                           rng.randint(100, 5 * UNIT))
            m.insert(live[i])
        # at most omega + 1 successor searches per update
        assert m.last_change.queries <= m.omega() + 1
        if i % 100 == 0:
            m.check()
            for inner in m.lines.values():
                assert inner.selected == {v.id for v in greedy_chain(inner.items.values())}
            sol = m.solution()
            assert sol == static_line(live.values())
            assert brute_independent(live.values(), sol)

import itertools

import pytest

from dynlabel.geometry import Rect, Square, overlaps, to_units


def U(v) -> int:
    """Decimal label-unit coordinate to integer units (scale 3)."""
    return to_units(str(v))


def sq(i, x, y):
    return Square(i, U(x), U(y))


def rect(i, x, y, w):
    return Rect(i, U(x), U(y), U(w))


def brute_independent(shapes, ids):
    chosen = [s for s in shapes if s.id in ids]
    return all(not overlaps(a, b) for a, b in itertools.combinations(chosen, 2))


def brute_maximal(shapes, ids):
    chosen = [s for s in shapes if s.id in ids]
    return all(any(overlaps(s, t) for t in chosen) for s in shapes if s.id not in ids)


def brute_max_is(shapes):
    """Size of a maximum independent set by enumerating all subsets."""
    shapes = list(shapes)
    best = 0
    n = len(shapes)
    conflict = [[overlaps(a, b) for b in shapes] for a in shapes]
    for mask in range(1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if len(members) <= best:
            continue
        if all(not conflict[a][b] for a, b in itertools.combinations(members, 2)):
            best = len(members)
    return best


@pytest.fixture
def corner_pack():
    """A square at the origin surrounded by four pairwise independent neighbours."""
    center = sq(0, 0, 0)
    ring = [sq(i, x, y) for i, (x, y) in enumerate(
        [(-0.9, -0.9), (0.9, -0.9), (-0.9, 0.9), (0.9, 0.9)], 1)]
    return center, ring


# acceptance summary ----------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def report_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])

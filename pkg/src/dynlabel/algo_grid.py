"""Grid-based 4-approximate Max-IS with constant update time.

Every square covers exactly one grid point.  Squares sharing a point form a
clique, so only the point's activity matters: per row we count active odd
columns (``p``) and active even columns (``q``), keep ``c = max(p, q)``, and
sum ``c`` over even and odd rows.  The solution takes the better row parity
and, within each of its rows, one representative per active point of the
better column parity.
"""

from __future__ import annotations

from collections import OrderedDict, defaultdict

from .errors import DuplicateId, InvariantViolation, OutOfFrame, UnknownId
from .geometry import Square, grid_point_of
from .reports import SizeReport


class _DenseBuckets:
    """kappa x kappa array of buckets, for frames dense enough to afford it."""

    def __init__(self, kappa):
        self._cells = [[None] * kappa for _ in range(kappa)]

    def get(self, key):
        return self._cells[key[0]][key[1]]

    def __setitem__(self, key, bucket):
        self._cells[key[0]][key[1]] = bucket

    def pop(self, key):
        self._cells[key[0]][key[1]] = None


class GridMIS:
    """4-approximate Max-IS of unit squares.

    Pass ``kappa`` to enforce the frame ``[0, kappa)^2`` of grid points;
    ``dense=True`` (requires ``kappa``) stores buckets in a kappa x kappa
    array instead of a hash map.
    """

    def __init__(self, squares=(), kappa=None, dense=False):
        if dense and kappa is None:
            raise ValueError("dense buckets need kappa")
        self.kappa = kappa
        self.squares: dict[int, Square] = {}
        self.where: dict[int, tuple[int, int]] = {}
        self.buckets = _DenseBuckets(kappa) if dense else {}
        self.active: dict[int, set[int]] = defaultdict(set)  # row -> active columns
        self.p: dict[int, int] = defaultdict(int)
        self.q: dict[int, int] = defaultdict(int)
        self.c: dict[int, int] = defaultdict(int)
        self.agg = [0, 0]  # even rows, odd rows
        self.touched = 0
        for s in squares:
            self.insert(s)

    def _locate(self, s):
        u, v = grid_point_of(s)
        if self.kappa is not None and not (0 <= u < self.kappa and 0 <= v < self.kappa):
            raise OutOfFrame(f"square {s.id} at grid point {(u, v)}")
        return u, v

    @property
    def parity(self) -> int:
        return 0 if self.agg[0] >= self.agg[1] else 1

    @property
    def size(self) -> int:
        return max(self.agg)

    def _bump(self, u, v, d):
        if v % 2:
            self.p[u] += d
        else:
            self.q[u] += d
        new = max(self.p[u], self.q[u])
        self.agg[u % 2] += new - self.c[u]
        self.c[u] = new
        self.touched = 3  # one parity counter, c(row), one aggregate

    def insert(self, s: Square) -> SizeReport:
        if s.id in self.squares:
            raise DuplicateId(s.id)
        u, v = self._locate(s)
        self.squares[s.id] = s
        self.where[s.id] = (u, v)
        self.touched = 0
        bucket = self.buckets.get((u, v))
        if bucket is None:
            bucket = self.buckets[(u, v)] = OrderedDict()
        bucket[s.id] = None
        if len(bucket) == 1:
            self.active[u].add(v)
            self._bump(u, v, 1)
        return SizeReport(self.size, u, self.parity)

    def delete(self, sid: int) -> SizeReport:
        if sid not in self.squares:
            raise UnknownId(sid)
        del self.squares[sid]
        u, v = self.where.pop(sid)
        self.touched = 0
        bucket = self.buckets.get((u, v))
        del bucket[sid]
        if not bucket:
            self.buckets.pop((u, v))
            self.active[u].discard(v)
            self._bump(u, v, -1)
        return SizeReport(self.size, u, self.parity)

    def representative(self, u, v):
        """Oldest square at grid point ``(u, v)``, or None."""
        bucket = self.buckets.get((u, v))
        return next(iter(bucket)) if bucket else None

    def line_solution(self, u) -> set[int]:
        cols = self.active.get(u, ())
        want = 1 if self.p[u] >= self.q[u] else 0
        return {self.representative(u, v) for v in cols if v % 2 == want}

    def solution_lines(self) -> dict[int, set[int]]:
        par = self.parity
        return {u: self.line_solution(u) for u in list(self.active) if u % 2 == par}

    def solution(self) -> set[int]:
        out = set()
        for ids in self.solution_lines().values():
            out |= ids
        return out

    def check(self) -> None:
        """Recompute every counter from the buckets."""
        p, q = defaultdict(int), defaultdict(int)
        for sid, (u, v) in self.where.items():
            if self.buckets.get((u, v)) is None or sid not in self.buckets.get((u, v)):
                raise InvariantViolation(f"square {sid} missing from bucket {(u, v)}")
        rows = set(self.active)
        for u in rows:
            for v in self.active[u]:
                if not self.buckets.get((u, v)):
                    raise InvariantViolation(f"inactive point {(u, v)} marked active")
                if v % 2:
                    p[u] += 1
                else:
                    q[u] += 1
        agg = [0, 0]
        for u in rows | set(self.p) | set(self.q):
            if p[u] != self.p[u] or q[u] != self.q[u] or max(p[u], q[u]) != self.c[u]:
                raise InvariantViolation(f"row {u} counters stale")
            agg[u % 2] += max(p[u], q[u])
        if agg != self.agg:
            raise InvariantViolation(f"aggregates {self.agg} != recomputed {agg}")
        active_points = {pt for pt in self.where.values()}
        if sum(len(cs) for cs in self.active.values()) != len(active_points):
            raise InvariantViolation("activity set out of sync with stored squares")

"""Shifted-group 2(1 + 1/k)-approximate Max-IS of unit squares.

On every row, group ``a`` (``0 <= a <= k``) drops the squares whose grid
column is congruent to ``a`` modulo ``k + 1``.  The surviving columns fall into
runs of at most ``k`` consecutive columns (subgroups); each subgroup keeps an
exact interval Max-IS, which has at most ``k`` members.  A row's value is its
best group, and the solution takes the better row parity as in the grid
algorithm.

Unit intervals sorted by left endpoint are also sorted by right endpoint, so
the earliest-deadline greedy of :class:`IntervalMIS` is the left-to-right
greedy of the construction.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import DuplicateId, InvariantViolation, OutOfFrame, UnknownId
from .geometry import Square, grid_point_of, interval_of
from .interval_index import Interval, IntervalMIS
from .reports import SizeReport


class ShiftingMIS:
    def __init__(self, squares=(), k=2, kappa=None):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.kappa = kappa
        self.squares: dict[int, Square] = {}
        self.where: dict[int, tuple[int, int]] = {}
        # (row, group) -> {block: IntervalMIS}
        self.groups: dict[tuple[int, int], dict[int, IntervalMIS]] = defaultdict(dict)
        self.gsize: dict[int, list[int]] = {}  # row -> |M^a| for every group a
        self.c: dict[int, int] = defaultdict(int)
        self.agg = [0, 0]
        self.last_cascade = 0
        self.last_groups = 0

        staged = defaultdict(list)
        for s in squares:
            if s.id in self.squares:
                raise DuplicateId(s.id)
            u, v = self._locate(s)
            self.squares[s.id] = s
            self.where[s.id] = (u, v)
            lo, hi = interval_of(s)
            iv = Interval(s.id, lo, hi)
            for a, block in self._subgroups(v):
                staged[(u, a, block)].append(iv)
        for (u, a, block), ivs in staged.items():
            self.groups[(u, a)][block] = IntervalMIS(ivs)
        for u in {u for u, _ in self.where.values()}:
            self.gsize[u] = [sum(m.size for m in self.groups[(u, a)].values()) for a in range(k + 1)]
            self.c[u] = max(self.gsize[u])
            self.agg[u % 2] += self.c[u]

    def _locate(self, s):
        u, v = grid_point_of(s)
        if self.kappa is not None and not (0 <= u < self.kappa and 0 <= v < self.kappa):
            raise OutOfFrame(f"square {s.id} at grid point {(u, v)}")
        return u, v

    def _subgroups(self, v):
        """(group, block) pairs of the k groups that keep column ``v``."""
        m = self.k + 1
        return [(a, (v - a) // m) for a in range(m) if (v - a) % m]

    @property
    def parity(self) -> int:
        return 0 if self.agg[0] >= self.agg[1] else 1

    @property
    def size(self) -> int:
        return max(self.agg)

    def best_group(self, u) -> int:
        sizes = self.gsize.get(u)
        if not sizes:
            return 0
        return sizes.index(max(sizes))

    def _apply(self, u, v, fn):
        sizes = self.gsize.setdefault(u, [0] * (self.k + 1))
        cascade = 0
        touched = 0
        for a, block in self._subgroups(v):
            subs = self.groups[(u, a)]
            sub = subs.get(block)
            if sub is None:
                sub = subs[block] = IntervalMIS()
            change = fn(sub)
            touched += 1
            if sub.size > self.k or len(change.added) > self.k:
                raise InvariantViolation(f"subgroup {(u, a, block)} chain exceeds k={self.k}")
            cascade = max(cascade, change.queries)
            sizes[a] += change.delta
            if not len(sub):
                del subs[block]
        if touched > self.k:
            raise InvariantViolation(f"update touched {touched} groups")
        self.last_cascade = cascade
        self.last_groups = touched
        new = max(sizes)
        self.agg[u % 2] += new - self.c[u]
        self.c[u] = new

    def insert(self, s: Square) -> SizeReport:
        if s.id in self.squares:
            raise DuplicateId(s.id)
        u, v = self._locate(s)
        self.squares[s.id] = s
        self.where[s.id] = (u, v)
        lo, hi = interval_of(s)
        iv = Interval(s.id, lo, hi)
        self._apply(u, v, lambda sub: sub.insert(iv))
        return SizeReport(self.size, u, self.parity)

    def delete(self, sid: int) -> SizeReport:
        if sid not in self.squares:
            raise UnknownId(sid)
        del self.squares[sid]
        u, v = self.where.pop(sid)
        self._apply(u, v, lambda sub: sub.delete(sid))
        return SizeReport(self.size, u, self.parity)

    def line_solution(self, u) -> set[int]:
        a = self.best_group(u)
        out = set()
        for sub in self.groups.get((u, a), {}).values():
            out |= sub.selected
        return out

    def solution_lines(self) -> dict[int, set[int]]:
        par = self.parity
        return {u: self.line_solution(u) for u in list(self.gsize) if u % 2 == par}

    def solution(self) -> set[int]:
        out = set()
        for ids in self.solution_lines().values():
            out |= ids
        return out

    def check(self) -> None:
        """Every subgroup chain equals its from-scratch greedy; ledgers recomputed."""
        expect = defaultdict(set)
        for sid, (u, v) in self.where.items():
            for a, block in self._subgroups(v):
                expect[(u, a, block)].add(sid)
        seen = set()
        agg = [0, 0]
        for (u, a), subs in self.groups.items():
            for block, sub in subs.items():
                if set(sub.items) != expect.get((u, a, block), set()):
                    raise InvariantViolation(f"subgroup {(u, a, block)} holds wrong intervals")
                sub.check()
                seen.add((u, a, block))
        if seen != {key for key, ids in expect.items() if ids}:
            raise InvariantViolation("subgroup map misses a populated subgroup")
        for u, sizes in self.gsize.items():
            real = [sum(m.size for m in self.groups.get((u, a), {}).values()) for a in range(self.k + 1)]
            if real != sizes or self.c[u] != max(real):
                raise InvariantViolation(f"row {u} group sizes {sizes} != {real}")
            agg[u % 2] += max(real)
        if agg != self.agg:
            raise InvariantViolation(f"aggregates {self.agg} != recomputed {agg}")

"""Stabbing-line 2-approximate Max-IS of unit-height rectangles.

Each rectangle belongs to the one horizontal grid line inside its half-open
vertical span.  Every line keeps an exact Max-IS of its intervals
(:class:`IntervalMIS`), and the solution is the better of the even-line and
odd-line unions.  ``IntervalMIS`` is usable on its own for any dynamic
interval graph.
"""

from __future__ import annotations

from .errors import DuplicateId, InvariantViolation, UnknownId
from .geometry import interval_of, line_of
from .interval_index import Interval, IntervalMIS, greedy_chain
from .reports import SizeReport

__all__ = ["LineMIS", "IntervalMIS", "Interval"]


class LineMIS:
    def __init__(self, rects=()):
        self.rects = {}
        self.where: dict[int, int] = {}
        staged: dict[int, list[Interval]] = {}
        for r in rects:
            if r.id in self.rects:
                raise DuplicateId(r.id)
            self.rects[r.id] = r
            u = self.where[r.id] = line_of(r)
            staged.setdefault(u, []).append(Interval(r.id, *interval_of(r)))
        self.lines: dict[int, IntervalMIS] = {u: IntervalMIS(ivs) for u, ivs in staged.items()}
        self.agg = [0, 0]
        for u, m in self.lines.items():
            self.agg[u % 2] += m.size
        self.last_change = None

    # solvers are addressed uniformly by the harness
    @property
    def squares(self):
        return self.rects

    @property
    def parity(self) -> int:
        return 0 if self.agg[0] >= self.agg[1] else 1

    @property
    def size(self) -> int:
        return max(self.agg)

    def omega(self) -> int:
        return max((m.size for m in self.lines.values()), default=0)

    def insert(self, r) -> SizeReport:
        if r.id in self.rects:
            raise DuplicateId(r.id)
        u = line_of(r)
        self.rects[r.id] = r
        self.where[r.id] = u
        m = self.lines.get(u)
        if m is None:
            m = self.lines[u] = IntervalMIS()
        change = m.insert(Interval(r.id, *interval_of(r)))
        self._account(u, m, change)
        return SizeReport(self.size, u, self.parity)

    def delete(self, rid: int) -> SizeReport:
        if rid not in self.rects:
            raise UnknownId(rid)
        del self.rects[rid]
        u = self.where.pop(rid)
        m = self.lines[u]
        change = m.delete(rid)
        self._account(u, m, change)
        if not len(m):
            del self.lines[u]
        return SizeReport(self.size, u, self.parity)

    def _account(self, u, m, change):
        if change.queries > m.size + 1:
            raise InvariantViolation(f"line {u}: {change.queries} searches for omega={m.size}")
        self.agg[u % 2] += change.delta
        self.last_change = change

    def line_solution(self, u) -> set[int]:
        m = self.lines.get(u)
        return set(m.selected) if m is not None else set()

    def solution_lines(self) -> dict[int, set[int]]:
        par = self.parity
        return {u: set(m.selected) for u, m in self.lines.items() if u % 2 == par}

    def solution(self) -> set[int]:
        out = set()
        for ids in self.solution_lines().values():
            out |= ids
        return out

    def check(self) -> None:
        agg = [0, 0]
        by_line: dict[int, set[int]] = {}
        for i, u in self.where.items():
            by_line.setdefault(u, set()).add(i)
        if set(by_line) != set(self.lines):
            raise InvariantViolation("line map out of sync with stored rectangles")
        for u, m in self.lines.items():
            if set(m.items) != by_line[u]:
                raise InvariantViolation(f"line {u} holds the wrong intervals")
            m.check()
            expect = greedy_chain(m.items.values())
            agg[u % 2] += len(expect)
        if agg != self.agg:
            raise InvariantViolation(f"aggregates {self.agg} != recomputed {agg}")

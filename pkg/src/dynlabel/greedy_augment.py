"""Greedy augmentation of a line-based approximate solution.

The wrapped solver (grid, shifting or line) discards every square on the
losing row parity and many on the winning one.  ``Augmented`` keeps that
solution intact and adds discarded squares greedily, in ascending id order,
whenever they are independent of everything already chosen.

Two repair policies exist.  ``local`` re-examines only squares near what an
update changed (the event square, base members that entered or left, evicted
extras); ``full`` reruns the greedy pass over the whole instance after every
update.  Only ``full`` guarantees a maximal output.
"""

from __future__ import annotations

from .errors import InvariantViolation
from .geometry import Box, overlaps
from .range_index import RangeIndex
from .reports import SizeReport

POLICIES = ("local", "full")


class Augmented:
    def __init__(self, base, policy="local"):
        if policy not in POLICIES:
            raise ValueError(f"unknown augment policy {policy!r}")
        self.base = base
        self.policy = policy
        self.shapes = base.squares
        self.all = RangeIndex((s.id, s.cx, s.cy) for s in self.shapes.values())
        self.wmax = max((s.w for s in self.shapes.values()), default=0)
        self.hmax = max((s.h for s in self.shapes.values()), default=0)
        self._sync_base()
        self.full_remaximalize()

    @property
    def squares(self):
        return self.shapes

    @property
    def size(self) -> int:
        return len(self.out_ids)

    def solution(self) -> set[int]:
        return set(self.out_ids)

    def base_solution(self) -> set[int]:
        return set(self.base_ids)

    def _sync_base(self):
        self._parity = self.base.parity
        self._lines = self.base.solution_lines()
        self.base_ids = set().union(*self._lines.values()) if self._lines else set()

    def _near(self, s, reach_x, reach_y):
        return Box(s.cx - reach_x, s.cx + reach_x, s.cy - reach_y, s.cy + reach_y)

    def _conflicts(self, s):
        # centers of overlapping shapes lie within half the summed extents
        rx = (s.w + self.wmax) // 2 + 1
        ry = (s.h + self.hmax) // 2 + 1
        return [i for i, _, _ in self.out.report(self._near(s, rx, ry))
                if overlaps(s, self.shapes[i])]

    def _base_delta(self, report):
        if report.parity != self._parity:
            old = self.base_ids
            self._sync_base()
            return self.base_ids - old, old - self.base_ids
        u = report.line
        if u is None or u % 2 != self._parity:
            return set(), set()
        old = self._lines.get(u, set())
        new = self.base.line_solution(u)
        self._lines[u] = new
        added, removed = new - old, old - new
        self.base_ids -= removed
        self.base_ids |= added
        return added, removed

    def _grow(self, s):
        self.wmax = max(self.wmax, s.w)
        self.hmax = max(self.hmax, s.h)

    def insert(self, s) -> SizeReport:
        report = self.base.insert(s)
        self._grow(s)
        self.all.insert(s.id, s.cx, s.cy)
        self._settle(report, s, gone=None)
        return SizeReport(self.size, report.line, report.parity)

    def delete(self, sid: int) -> SizeReport:
        s = self.shapes[sid] if sid in self.shapes else None
        report = self.base.delete(sid)
        self.all.delete(sid)
        self._settle(report, s, gone=sid)
        return SizeReport(self.size, report.line, report.parity)

    def _settle(self, report, event, gone):
        added, removed = self._base_delta(report)
        touched = [event]
        if gone is not None and gone in self.extras:
            self.extras.discard(gone)
            self.out.delete(gone)
            self.out_ids.discard(gone)
        for r in removed:
            if r in self.out_ids:
                self.out.delete(r)
                self.out_ids.discard(r)
            if r in self.shapes:
                touched.append(self.shapes[r])
        for a in sorted(added):
            s = self.shapes[a]
            for e in self._conflicts(s):
                if e not in self.extras:
                    raise InvariantViolation(f"base member {a} overlaps base member {e}")
                self.extras.discard(e)
                self.out.delete(e)
                self.out_ids.discard(e)
                touched.append(self.shapes[e])
            self.out.insert(a, s.cx, s.cy)
            self.out_ids.add(a)
            touched.append(s)
        if self.policy == "full":
            self.full_remaximalize()
            return
        rx = self.wmax + self.wmax
        ry = self.hmax + self.hmax
        candidates = set()
        for t in touched:
            candidates.update(i for i, _, _ in self.all.report(self._near(t, rx, ry)))
        for i in sorted(candidates - self.out_ids):
            self._offer(self.shapes[i])

    def _offer(self, s):
        if not self._conflicts(s):
            self.extras.add(s.id)
            self.out.insert(s.id, s.cx, s.cy)
            self.out_ids.add(s.id)

    def full_remaximalize(self) -> SizeReport:
        """Recompute the extras by one global greedy pass in ascending id order."""
        self.out_ids = set(self.base_ids)
        self.out = RangeIndex((i, self.shapes[i].cx, self.shapes[i].cy) for i in self.out_ids)
        self.extras = set()
        for i in sorted(self.shapes):
            if i not in self.out_ids:
                self._offer(self.shapes[i])
        return SizeReport(self.size, None, self._parity)

    def check(self) -> None:
        self.base.check()
        if self.base_ids != self.base.solution():
            raise InvariantViolation("tracked base solution differs from the base solver")
        if self.out_ids != self.base_ids | self.extras or self.base_ids & self.extras:
            raise InvariantViolation("output is not base solution plus extras")
        if {i for i, _, _ in self.out} != self.out_ids:
            raise InvariantViolation("output index out of sync")

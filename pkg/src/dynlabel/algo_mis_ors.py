"""Dynamic maximal independent set of unit squares via two range indexes.

``all`` indexes every square center, ``sol`` the centers of the current
solution.  An insertion is a single blocker query on ``sol``.  Deleting a
solution square collects the nearby solution squares, carves the region of
admissible replacement centers and fills it with witness queries on ``all``.

Region arithmetic is done on closed integer boxes: with integer centers the
open box ``(a, b)`` holds exactly the lattice points ``[a + 1, b - 1]``, which
lets the polygon keep the boundaries of subtracted boxes (touching squares do
not conflict) while every query sent to the index stays an open box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DuplicateId, InvariantViolation, UnknownId
from .geometry import Box, Square, scaled_box
from .range_index import RangeIndex
from .reports import Diff

MAX_BLOCKERS = 4
MAX_QX = 12
MAX_CORNERS = 28
MAX_ADDITIONS = 4


def subtract_box(boxes, cut):
    """Remove closed box ``cut`` from a list of disjoint closed boxes."""
    cx0, cx1, cy0, cy1 = cut
    out = []
    for b in boxes:
        x0, x1, y0, y1 = b
        if x1 < cx0 or cx1 < x0 or y1 < cy0 or cy1 < y0:
            out.append(b)
            continue
        if x0 < cx0:
            out.append((x0, cx0 - 1, y0, y1))
        if cx1 < x1:
            out.append((cx1 + 1, x1, y0, y1))
        mx0, mx1 = max(x0, cx0), min(x1, cx1)
        if y0 < cy0:
            out.append((mx0, mx1, y0, cy0 - 1))
        if cy1 < y1:
            out.append((mx0, mx1, cy1 + 1, y1))
    return out


def _breakpoints(boxes):
    return sorted({b[0] for b in boxes} | {b[1] + 1 for b in boxes})


def _cover(boxes, x):
    """Merged half-open row spans ``[a, b)`` covered by column ``x``."""
    spans = sorted((b[2], b[3] + 1) for b in boxes if b[0] <= x <= b[1])
    merged = []
    for a, b in spans:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return merged


def _covers(spans, row):
    return any(a <= row < b for a, b in spans)


def slab_partition(boxes):
    """Vertical slab decomposition of a union of disjoint closed boxes."""
    xs = _breakpoints(boxes)
    slabs = []
    for xa, xb in zip(xs, xs[1:]):
        for a, b in _cover(boxes, xa):
            slabs.append((xa, xb - 1, a, b - 1))
    return slabs


def corner_count(boxes) -> int:
    """Number of polygon corners of the union of closed integer boxes."""
    total = 0
    for x in _breakpoints(boxes):
        left = _cover(boxes, x - 1)
        right = _cover(boxes, x)
        rows = {v for span in left + right for v in span}
        for y in rows:
            ll, lu = _covers(left, y - 1), _covers(left, y)
            rl, ru = _covers(right, y - 1), _covers(right, y)
            filled = ll + lu + rl + ru
            if filled % 2:
                total += 1
            elif filled == 2 and ll == ru:
                total += 2
    return total


def _open(box) -> Box:
    x0, x1, y0, y1 = box
    return Box(x0 - 1, x1 + 1, y0 - 1, y1 + 1)


def _closed(box: Box):
    return box.xmin + 1, box.xmax - 1, box.ymin + 1, box.ymax - 1


@dataclass
class DeletionRepairPlan:
    """Geometry of one deletion repair, kept for inspection and assertions."""

    qx: list
    polygon: list
    slabs: list
    corners: int
    additions: list = field(default_factory=list)


class MisOrs:
    """Maximal independent set of unit squares under insertions and deletions.

    The initial solution is the greedy MIS in ascending id order.
    """

    def __init__(self, squares=()):
        self.squares: dict[int, Square] = {}
        for s in squares:
            if s.id in self.squares:
                raise DuplicateId(s.id)
            self.squares[s.id] = s
        self.all = RangeIndex((s.id, s.cx, s.cy) for s in self.squares.values())
        self.sol = RangeIndex()
        self.members: set[int] = set()
        self.last_plan = None
        self.stats = {"max_blockers": 0, "max_qx": 0, "max_corners": 0,
                      "max_additions": 0, "repairs": 0}
        for i in sorted(self.squares):
            s = self.squares[i]
            if self.sol.witness(scaled_box(s, 2)) is None:
                self._add(s)

    @property
    def size(self) -> int:
        return len(self.members)

    def solution(self) -> set[int]:
        return set(self.members)

    def _add(self, s):
        self.sol.insert(s.id, s.cx, s.cy)
        self.members.add(s.id)

    def insert(self, s: Square) -> Diff:
        if s.id in self.squares:
            raise DuplicateId(s.id)
        self.squares[s.id] = s
        self.all.insert(s.id, s.cx, s.cy)
        blockers = self.sol.report(scaled_box(s, 2))
        if len(blockers) > MAX_BLOCKERS:
            raise InvariantViolation(f"{len(blockers)} solution centers inside s^2 of {s.id}")
        self.stats["max_blockers"] = max(self.stats["max_blockers"], len(blockers))
        if blockers:
            return Diff()
        self._add(s)
        return Diff(added=frozenset([s.id]))

    def delete(self, sid: int) -> Diff:
        try:
            s = self.squares.pop(sid)
        except KeyError:
            raise UnknownId(sid) from None
        self.all.delete(sid)
        if sid not in self.members:
            return Diff()
        self.sol.delete(sid)
        self.members.discard(sid)
        added = self._repair(s)
        return Diff(added=frozenset(added), removed=frozenset([sid]))

    def _repair(self, s):
        qx = self.sol.report(scaled_box(s, 4))
        polygon = [_closed(scaled_box(s, 2))]
        for _, x, y in qx:
            polygon = subtract_box(polygon, _closed(Box(x - s.side, x + s.side, y - s.side, y + s.side)))
        corners = corner_count(polygon)
        plan = DeletionRepairPlan(qx=[q[0] for q in qx], polygon=list(polygon),
                                  slabs=slab_partition(polygon), corners=corners)
        self.last_plan = plan
        st = self.stats
        st["repairs"] += 1
        st["max_qx"] = max(st["max_qx"], len(qx))
        st["max_corners"] = max(st["max_corners"], corners)
        if len(qx) > MAX_QX or corners > MAX_CORNERS:
            raise InvariantViolation(f"repair of {s.id}: |Q|={len(qx)}, corners={corners}")

        slabs = plan.slabs
        while slabs:
            for slab in slabs:
                hit = self.all.witness(_open(slab))
                if hit is not None:
                    break
            else:
                break
            i, x, y = hit
            self._add(self.squares[i])
            plan.additions.append(i)
            polygon = subtract_box(polygon, _closed(Box(x - s.side, x + s.side, y - s.side, y + s.side)))
            slabs = slab_partition(polygon)
        st["max_additions"] = max(st["max_additions"], len(plan.additions))
        if len(plan.additions) > MAX_ADDITIONS:
            raise InvariantViolation(f"repair of {s.id} added {len(plan.additions)} squares")
        return plan.additions

    def check(self) -> None:
        self.all.check()
        self.sol.check()
        if {i for i, _, _ in self.sol} != self.members:
            raise InvariantViolation("solution index differs from member set")
        if set(self.squares) != {i for i, _, _ in self.all}:
            raise InvariantViolation("square index differs from square map")

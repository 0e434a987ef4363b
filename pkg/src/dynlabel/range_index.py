"""Fully dynamic 2D point index with open-box witness and report queries.

The structure is a weight-balanced range tree.  The primary tree is ordered by
``(x, id)``; every internal node keeps its subtree's points sorted by
``(y, x, id)`` as the secondary structure.  Leaves hold small sorted buckets.
Updates walk one root-to-leaf path, touching O(log n) secondaries, and any
node whose children drift out of balance is rebuilt from scratch (partial
rebuilding), which keeps updates amortized O(log^2 n).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from math import inf
from typing import Iterable, Iterator, Optional

from .errors import DuplicateId, InvariantViolation, UnknownId
from .geometry import Box

LEAF_CAP = 16
ALPHA = 0.72

_LO = (inf, inf)
_HI = (-inf, -inf)


class _Leaf:
    __slots__ = ("pts",)

    def __init__(self, pts):
        self.pts = pts  # [(x, id, y)] sorted

    @property
    def size(self):
        return len(self.pts)


class _Node:
    __slots__ = ("left", "right", "split", "ys", "size")

    def __init__(self, left, right, split, ys):
        self.left = left
        self.right = right
        self.split = split  # (x, id) upper bound on the left subtree's keys
        self.ys = ys  # [(y, x, id)] sorted
        self.size = len(ys)


def _build(pts):
    """Build a subtree from ``pts`` sorted by (x, id); returns (subtree, ys)."""
    if len(pts) <= LEAF_CAP:
        return _Leaf(list(pts)), sorted((y, x, i) for x, i, y in pts)
    mid = len(pts) // 2
    left, lys = _build(pts[:mid])
    right, rys = _build(pts[mid:])
    ys = lys + rys
    ys.sort()  # two sorted runs: linear merge in timsort
    x, i, _ = pts[mid - 1]
    return _Node(left, right, (x, i), ys), ys


def _collect(node, out):
    if type(node) is _Leaf:
        out.extend(node.pts)
    else:
        _collect(node.left, out)
        _collect(node.right, out)


class RangeIndex:
    """Dynamic point set keyed by integer ids.

    Queries take an open :class:`Box` and return ``(id, x, y)`` triples.

    >>> idx = RangeIndex()
    >>> idx.insert(1, 1000, 1000)
    >>> idx.insert(2, 2000, 3000)
    >>> idx.report(Box(0, 1500, 0, 1500))
    [(1, 1000, 1000)]
    """

    def __init__(self, points: Iterable[tuple[int, int, int]] = ()):
        self._where: dict[int, tuple[int, int]] = {}
        for i, x, y in points:
            if i in self._where:
                raise DuplicateId(i)
            self._where[i] = (x, y)
        self._root = None
        self._built = 0
        self._rebuild_all()

    def __len__(self):
        return len(self._where)

    def __contains__(self, i):
        return i in self._where

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        for i, (x, y) in self._where.items():
            yield i, x, y

    def get(self, i):
        return self._where.get(i)

    def _rebuild_all(self):
        pts = sorted((x, i, y) for i, (x, y) in self._where.items())
        self._root = _build(pts)[0] if pts else None
        self._built = len(pts)

    def _replace(self, path, old, new):
        if not path:
            self._root = new
            return
        parent, went_left = path[-1]
        if went_left:
            parent.left = new
        else:
            parent.right = new

    def _rebalance(self, path, leaf):
        n = len(self._where)
        if n == 0:
            self._root = None
            self._built = 0
            return
        if 4 * n < self._built:
            self._rebuild_all()
            return
        for depth, (node, _) in enumerate(path):
            if node.size <= LEAF_CAP:
                pts = []
                _collect(node, pts)
                self._replace(path[:depth], node, _Leaf(pts))
                return
            if node.size > 2 * LEAF_CAP and max(node.left.size, node.right.size) > ALPHA * node.size:
                pts = []
                _collect(node, pts)
                self._replace(path[:depth], node, _build(pts)[0])
                return
        if leaf is not None and leaf.size > 2 * LEAF_CAP:
            self._replace(path, leaf, _build(leaf.pts)[0])

    def insert(self, i: int, x: int, y: int) -> None:
        if i in self._where:
            raise DuplicateId(i)
        self._where[i] = (x, y)
        if self._root is None:
            self._root = _Leaf([(x, i, y)])
            self._built = 1
            return
        key = (x, i)
        yt = (y, x, i)
        path = []
        node = self._root
        while type(node) is _Node:
            insort(node.ys, yt)
            node.size += 1
            went_left = key <= node.split
            path.append((node, went_left))
            node = node.left if went_left else node.right
        insort(node.pts, (x, i, y))
        self._built = max(self._built, len(self._where))
        self._rebalance(path, node)

    def delete(self, i: int) -> tuple[int, int]:
        try:
            x, y = self._where.pop(i)
        except KeyError:
            raise UnknownId(i) from None
        key = (x, i)
        yt = (y, x, i)
        path = []
        node = self._root
        while type(node) is _Node:
            ys = node.ys
            del ys[bisect_left(ys, yt)]
            node.size -= 1
            went_left = key <= node.split
            path.append((node, went_left))
            node = node.left if went_left else node.right
        pts = node.pts
        del pts[bisect_left(pts, (x, i, y))]
        self._rebalance(path, None)
        return x, y

    def _search(self, box: Box, first: bool):
        out = []
        if self._root is None:
            return out
        xmin, xmax, ymin, ymax = box.xmin, box.xmax, box.ymin, box.ymax
        ylo = (ymin,) + _LO
        yhi = (ymax,) + _HI
        stack = [(self._root, False, False)]
        while stack:
            node, lo_ok, hi_ok = stack.pop()
            if type(node) is _Leaf:
                for x, i, y in node.pts:
                    if xmin < x < xmax and ymin < y < ymax:
                        out.append((i, x, y))
                        if first:
                            return out
                continue
            if lo_ok and hi_ok:
                ys = node.ys
                a = bisect_right(ys, ylo)
                b = bisect_left(ys, yhi)
                if a < b:
                    if first:
                        y, x, i = ys[a]
                        return [(i, x, y)]
                    out.extend((i, x, y) for y, x, i in ys[a:b])
                continue
            sx = node.split[0]
            # left keys have x <= sx, right keys have x >= sx
            if sx < xmax:
                stack.append((node.right, lo_ok or sx > xmin, hi_ok))
            if sx > xmin:
                stack.append((node.left, lo_ok, hi_ok or sx < xmax))
        return out

    def witness(self, box: Box) -> Optional[tuple[int, int, int]]:
        """Any one point strictly inside ``box``, or None."""
        found = self._search(box, True)
        return found[0] if found else None

    def report(self, box: Box) -> list[tuple[int, int, int]]:
        """All points strictly inside ``box``."""
        return self._search(box, False)

    def check(self) -> None:
        """Verify the tree against the id map; raises InvariantViolation."""
        if self._root is None:
            if self._where:
                raise InvariantViolation("empty tree but non-empty id map")
            return
        pts = []
        _collect(self._root, pts)
        if pts != sorted((x, i, y) for i, (x, y) in self._where.items()):
            raise InvariantViolation("range tree contents differ from id map")

        def walk(node, lo, hi):
            if type(node) is _Leaf:
                for x, i, _ in node.pts:
                    if not (lo < (x, i) <= hi):
                        raise InvariantViolation("leaf key out of order")
                return sorted((y, x, i) for x, i, y in node.pts)
            ys = walk(node.left, lo, min(hi, node.split)) + walk(node.right, max(lo, node.split), hi)
            ys.sort()
            if ys != node.ys or node.size != len(ys):
                raise InvariantViolation("secondary list out of sync")
            return ys

        walk(self._root, _HI, _LO)

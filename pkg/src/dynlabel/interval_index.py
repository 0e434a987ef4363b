"""Balanced interval trees and a dynamic exact Max-IS over open intervals.

``LeftTree`` orders intervals by ``(lo, id)`` and decorates every node with
the interval of minimum ``(hi, id)`` in its subtree.  ``SolutionTree`` holds
the selected intervals ordered by ``(hi, id)``.  ``IntervalMIS`` combines the
two and keeps the selected chain equal to the earliest-deadline-first greedy
solution under insertions and deletions.

All trees are treaps; priorities come from a fixed-seed generator, so tree
shapes (and therefore timings) are reproducible, while results never depend
on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import inf
from typing import Iterator, Optional

from .errors import DuplicateId, InvariantViolation, UnknownId

_prio = random.Random(0x5EED)


@dataclass(frozen=True, slots=True)
class Interval:
    id: int
    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval {self.id}: lo must be < hi")

    @property
    def right_key(self):
        return (self.hi, self.id)

    @property
    def left_key(self):
        return (self.lo, self.id)


class _TNode:
    __slots__ = ("key", "val", "prio", "left", "right", "best")

    def __init__(self, key, val, prio):
        self.key = key
        self.val = val
        self.prio = prio
        self.left = None
        self.right = None
        self.best = val


class Treap:
    """Ordered map with unique keys.

    Subclasses may override :meth:`_pull` to maintain a subtree decoration in
    ``node.best``; it is called bottom-up on every node whose subtree changed.
    """

    def __init__(self, items=()):
        self._root = None
        self._n = 0
        items = sorted(items, key=lambda kv: kv[0])
        for a, b in zip(items, items[1:]):
            if not a[0] < b[0]:
                raise DuplicateId(b[0])
        self._root = self._from_sorted(items)
        self._n = len(items)

    def _pull(self, node):
        pass

    def _from_sorted(self, items):
        # Cartesian tree over sorted keys with fresh random priorities: O(n)
        stack = []
        for key, val in items:
            node = _TNode(key, val, _prio.random())
            last = None
            while stack and stack[-1].prio < node.prio:
                last = stack.pop()
                self._pull(last)
            node.left = last
            if stack:
                stack[-1].right = node
            stack.append(node)
        while len(stack) > 1:
            self._pull(stack.pop())
        if stack:
            self._pull(stack[0])
            return stack[0]
        return None

    def __len__(self):
        return self._n

    def __iter__(self) -> Iterator:
        stack = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.val
            node = node.right

    def _split(self, node, key):
        """Split into (< key, >= key)."""
        if node is None:
            return None, None
        if node.key < key:
            a, b = self._split(node.right, key)
            node.right = a
            self._pull(node)
            return node, b
        a, b = self._split(node.left, key)
        node.left = b
        self._pull(node)
        return a, node

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a.prio > b.prio:
            a.right = self._merge(a.right, b)
            self._pull(a)
            return a
        b.left = self._merge(a, b.left)
        self._pull(b)
        return b

    def insert(self, key, val):
        if self.get(key) is not None:
            raise DuplicateId(key)
        node = _TNode(key, val, _prio.random())
        self._pull(node)
        self._root = self._insert(self._root, node)
        self._n += 1

    def _insert(self, root, node):
        if root is None:
            return node
        if node.prio > root.prio:
            node.left, node.right = self._split(root, node.key)
            self._pull(node)
            return node
        if node.key < root.key:
            root.left = self._insert(root.left, node)
        else:
            root.right = self._insert(root.right, node)
        self._pull(root)
        return root

    def remove(self, key):
        found = []
        self._root = self._remove(self._root, key, found)
        if not found:
            raise UnknownId(key)
        self._n -= 1
        return found[0]

    def _remove(self, root, key, found):
        if root is None:
            return None
        if key == root.key:
            found.append(root.val)
            return self._merge(root.left, root.right)
        if key < root.key:
            root.left = self._remove(root.left, key, found)
        else:
            root.right = self._remove(root.right, key, found)
        self._pull(root)
        return root

    def get(self, key):
        node = self._root
        while node is not None:
            if key == node.key:
                return node.val
            node = node.left if key < node.key else node.right
        return None

    def predecessor(self, key):
        """Value with the greatest key strictly below ``key``."""
        node, best = self._root, None
        while node is not None:
            if node.key < key:
                best = node
                node = node.right
            else:
                node = node.left
        return None if best is None else best.val

    def successor(self, key):
        """Value with the least key strictly above ``key``."""
        node, best = self._root, None
        while node is not None:
            if node.key > key:
                best = node
                node = node.left
            else:
                node = node.right
        return None if best is None else best.val

    def first(self):
        node = self._root
        if node is None:
            return None
        while node.left is not None:
            node = node.left
        return node.val


def _min_right(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a.right_key < b.right_key else b


class LeftTree(Treap):
    """Intervals keyed by ``(lo, id)``; ``best`` is the subtree's min-``(hi, id)`` interval."""

    def __init__(self, intervals=()):
        super().__init__((iv.left_key, iv) for iv in intervals)

    def _pull(self, node):
        best = node.val
        if node.left is not None:
            best = _min_right(best, node.left.best)
        if node.right is not None:
            best = _min_right(best, node.right.best)
        node.best = best

    def lt_insert(self, iv: Interval):
        self.insert(iv.left_key, iv)

    def lt_delete(self, iv_id: int, lo: int):
        return self.remove((lo, iv_id))

    def root_min_right(self) -> Optional[Interval]:
        return None if self._root is None else self._root.best

    def min_right_after(self, p) -> Optional[Interval]:
        """Among intervals with ``lo >= p``, the one minimizing ``(hi, id)``.

        Open intervals that touch are independent, so an interval starting
        exactly at ``p`` qualifies.
        """
        node, cand = self._root, None
        while node is not None:
            if node.key[0] >= p:
                cand = _min_right(cand, node.val)
                if node.right is not None:
                    cand = _min_right(cand, node.right.best)
                node = node.left
            else:
                node = node.right
        return cand

    def check_decorations(self):
        def walk(node):
            if node is None:
                return None
            expect = _min_right(_min_right(node.val, walk(node.left)), walk(node.right))
            if node.best is not expect:
                raise InvariantViolation(f"min-right decoration stale at {node.key}")
            return expect

        walk(self._root)


class SolutionTree(Treap):
    """Selected intervals keyed by ``(hi, id)``."""

    def __init__(self, intervals=()):
        super().__init__((iv.right_key, iv) for iv in intervals)

    def add(self, iv: Interval):
        self.insert(iv.right_key, iv)

    def discard(self, iv: Interval):
        self.remove(iv.right_key)


@dataclass(frozen=True)
class GapProbe:
    pred: Optional[Interval]
    succ: Optional[Interval]
    same_gap: bool


def st_gap_of(tree: SolutionTree, lo: int, hi: int) -> GapProbe:
    """Locate ``(lo, hi)`` among the selected right endpoints.

    ``pred`` is the selected interval with the greatest right endpoint at or
    before ``lo``, ``succ`` the one with the least right endpoint after
    ``hi``; ``same_gap`` holds when no selected right endpoint lies in
    ``(lo, hi]``.
    """
    pred = tree.predecessor((lo, inf))
    succ = tree.successor((hi, inf))
    inside = tree.successor((lo, inf))
    same = inside is None or inside.hi > hi
    return GapProbe(pred, succ, same)


@dataclass
class ChainChange:
    added: list = field(default_factory=list)
    removed: list = field(default_factory=list)
    queries: int = 0

    @property
    def delta(self):
        return len(self.added) - len(self.removed)


def greedy_chain(intervals) -> list[Interval]:
    """From-scratch earliest-deadline-first Max-IS of open intervals."""
    out = []
    last = -inf
    for iv in sorted(intervals, key=lambda v: v.right_key):
        if iv.lo >= last:
            out.append(iv)
            last = iv.hi
    return out


class IntervalMIS:
    """Exact Max-IS of a dynamic set of open intervals.

    The selected chain always equals :func:`greedy_chain` of the stored
    intervals.  An update re-derives the chain only from the point where the
    greedy run would first diverge and stops as soon as the re-derived chain
    meets a previously selected interval.

    >>> m = IntervalMIS([Interval(1, 0, 2), Interval(2, 3, 5)])
    >>> [iv.id for iv in m.chain()]
    [1, 2]
    >>> m.insert(Interval(3, 2, 3)).added[0].id
    3
    """

    def __init__(self, intervals=()):
        intervals = list(intervals)
        self.items: dict[int, Interval] = {}
        for iv in intervals:
            if iv.id in self.items:
                raise DuplicateId(iv.id)
            self.items[iv.id] = iv
        self.left = LeftTree(intervals)
        chain = greedy_chain(intervals)
        self.chosen = SolutionTree(chain)
        self.selected = {iv.id for iv in chain}

    def __len__(self):
        return len(self.items)

    @property
    def size(self) -> int:
        return len(self.chosen)

    def chain(self) -> list[Interval]:
        return list(self.chosen)

    def _rederive(self, start: Optional[Interval], change: ChainChange):
        p = -inf if start is None else start.hi
        old = self.chosen.first() if start is None else self.chosen.successor(start.right_key)
        while True:
            nxt = self.left.min_right_after(p)
            change.queries += 1
            while old is not None and (nxt is None or old.right_key < nxt.right_key):
                self.chosen.discard(old)
                self.selected.discard(old.id)
                change.removed.append(old)
                old = self.chosen.successor(old.right_key)
            if nxt is None or nxt is old:
                return
            self.chosen.add(nxt)
            self.selected.add(nxt.id)
            change.added.append(nxt)
            p = nxt.hi

    def insert(self, iv: Interval) -> ChainChange:
        if iv.id in self.items:
            raise DuplicateId(iv.id)
        self.items[iv.id] = iv
        self.left.lt_insert(iv)
        change = ChainChange()
        pred = self.chosen.predecessor(iv.right_key)
        # the greedy run reaches iv right after pred; it takes iv iff iv starts
        # at or after pred ends
        if pred is not None and pred.hi > iv.lo:
            return change
        self._rederive(pred, change)
        return change

    def delete(self, iv_id: int) -> ChainChange:
        try:
            iv = self.items.pop(iv_id)
        except KeyError:
            raise UnknownId(iv_id) from None
        self.left.lt_delete(iv.id, iv.lo)
        change = ChainChange()
        if iv.id not in self.selected:
            return change
        pred = self.chosen.predecessor(iv.right_key)
        self.chosen.discard(iv)
        self.selected.discard(iv.id)
        change.removed.append(iv)
        self._rederive(pred, change)
        return change

    def check(self) -> None:
        """Compare against a from-scratch greedy run and recheck decorations."""
        expect = [iv.id for iv in greedy_chain(self.items.values())]
        got = [iv.id for iv in self.chosen]
        if expect != got:
            raise InvariantViolation(f"chain {got} != greedy {expect}")
        if set(got) != self.selected:
            raise InvariantViolation("selected id set out of sync with solution tree")
        self.left.check_decorations()

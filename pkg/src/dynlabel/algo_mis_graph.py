"""Baseline dynamic MIS on an explicitly stored intersection graph.

Each vertex carries a counter of its solution neighbours; a vertex is in the
solution exactly when it was admitted with counter zero.  New vertices find
their neighbourhood by scanning every stored square, with no geometric index.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import DuplicateId, InvariantViolation, UnknownId
from .geometry import Square, grid_point_of, overlaps
from .reports import Diff


def _adjacency(squares):
    # initial graph only: hash squares by grid point so build is not quadratic
    cells = defaultdict(list)
    for s in squares:
        cells[grid_point_of(s)].append(s)
    adj = {s.id: set() for s in squares}
    for (u, v), bucket in cells.items():
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                for t in cells.get((u + du, v + dv), ()):
                    for s in bucket:
                        if s.id != t.id and overlaps(s, t):
                            adj[s.id].add(t.id)
    return adj


class MisGraph:
    def __init__(self, squares=()):
        self.squares: dict[int, Square] = {}
        for s in squares:
            if s.id in self.squares:
                raise DuplicateId(s.id)
            self.squares[s.id] = s
        self.adj = _adjacency(list(self.squares.values()))
        self.counter = {i: 0 for i in self.squares}
        self.members: set[int] = set()
        for i in sorted(self.squares):
            if self.counter[i] == 0:
                self._admit(i)

    @property
    def size(self) -> int:
        return len(self.members)

    def solution(self) -> set[int]:
        return set(self.members)

    def _admit(self, i):
        self.members.add(i)
        for j in self.adj[i]:
            self.counter[j] += 1

    def insert(self, s: Square) -> Diff:
        if s.id in self.squares:
            raise DuplicateId(s.id)
        nbrs = {t.id for t in self.squares.values() if overlaps(s, t)}
        self.squares[s.id] = s
        self.adj[s.id] = nbrs
        for j in nbrs:
            self.adj[j].add(s.id)
        self.counter[s.id] = sum(1 for j in nbrs if j in self.members)
        if self.counter[s.id]:
            return Diff()
        self._admit(s.id)
        return Diff(added=frozenset([s.id]))

    def delete(self, sid: int) -> Diff:
        if sid not in self.squares:
            raise UnknownId(sid)
        del self.squares[sid]
        nbrs = self.adj.pop(sid)
        del self.counter[sid]
        for j in nbrs:
            self.adj[j].discard(sid)
        if sid not in self.members:
            return Diff()
        self.members.discard(sid)
        freed = []
        for j in nbrs:
            self.counter[j] -= 1
            if self.counter[j] == 0:
                freed.append(j)
        added = []
        for j in sorted(freed):
            if self.counter[j] == 0:
                self._admit(j)
                added.append(j)
        return Diff(added=frozenset(added), removed=frozenset([sid]))

    def check(self) -> None:
        for i, nbrs in self.adj.items():
            for j in nbrs:
                if i not in self.adj[j]:
                    raise InvariantViolation(f"adjacency not symmetric at {i}-{j}")
            c = sum(1 for j in nbrs if j in self.members)
            if c != self.counter[i]:
                raise InvariantViolation(f"counter({i})={self.counter[i]}, recomputed {c}")

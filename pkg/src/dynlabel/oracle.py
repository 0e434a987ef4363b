"""Ground truth for the dynamic solvers.

* :func:`verify_is` checks independence and maximality by brute force.
* :func:`exact_max_is` computes a maximum independent set, per connected
  component, by branch-and-bound (default) or by a clique-constrained 0/1
  program solved with HiGHS (``method="milp"``, used for instances beyond the
  branch-and-bound cap).
* :func:`exact_interval_mis` is the greedy optimum for interval instances.
* ``static_*`` functions recompute each algorithm's solution from scratch; the
  harness times them as the recompute baseline and the verifier compares the
  dynamic solutions against them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded
from .geometry import grid_index, grid_point_of, interval_of, line_of, overlaps
from .interval_index import greedy_chain

DEFAULT_CAP = 300
BNB_LIMIT = 48


@dataclass(frozen=True)
class VerifyResult:
    independent: bool
    maximal: bool


@dataclass(frozen=True)
class ExactResult:
    size: int
    witness: frozenset
    nodes_explored: int


def _as_list(shapes):
    return list(shapes.values()) if isinstance(shapes, dict) else list(shapes)


def _arrays(shapes):
    a = np.array([(s.cx, s.cy, s.w, s.h) for s in shapes], dtype=np.int64).reshape(-1, 4)
    return a[:, 0], a[:, 1], a[:, 2], a[:, 3]


def _cross_overlap(A, B):
    ax, ay, aw, ah = A
    bx, by, bw, bh = B
    dx = 2 * np.abs(ax[:, None] - bx[None, :])
    dy = 2 * np.abs(ay[:, None] - by[None, :])
    return (dx < aw[:, None] + bw[None, :]) & (dy < ah[:, None] + bh[None, :])


def verify_is(shapes, ids) -> VerifyResult:
    """Brute-force independence and maximality check of ``ids`` within ``shapes``."""
    shapes = _as_list(shapes)
    ids = set(ids)
    members = [s for s in shapes if s.id in ids]
    others = [s for s in shapes if s.id not in ids]
    if len(members) != len(ids):
        raise ValueError("solution refers to unknown shapes")
    if not members:
        return VerifyResult(True, not others)
    M = _arrays(members)
    hit = _cross_overlap(M, M)
    np.fill_diagonal(hit, False)
    independent = not hit.any()
    maximal = True
    for start in range(0, len(others), 2048):
        chunk = _arrays(others[start:start + 2048])
        if not _cross_overlap(chunk, M).any(axis=1).all():
            maximal = False
            break
    return VerifyResult(independent, maximal)


def intersection_graph(shapes):
    """Adjacency sets of the open-overlap graph, via a uniform cell hash."""
    shapes = _as_list(shapes)
    adj = {s.id: set() for s in shapes}
    if not shapes:
        return adj
    wmax = max(s.w for s in shapes)
    cells = defaultdict(list)
    for s in shapes:
        cells[(line_of(s), s.cx // wmax)].append(s)
    for (u, c), bucket in cells.items():
        for du in (-1, 0, 1):
            for dc in (-1, 0, 1):
                for t in cells.get((u + du, c + dc), ()):
                    for s in bucket:
                        if s.id < t.id and overlaps(s, t):
                            adj[s.id].add(t.id)
                            adj[t.id].add(s.id)
    return adj


def components(shapes, adj=None):
    shapes = _as_list(shapes)
    adj = intersection_graph(shapes) if adj is None else adj
    by_id = {s.id: s for s in shapes}
    seen = set()
    out = []
    for s in sorted(by_id):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(by_id[v])
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(comp)
    return out


def _key(shapes):
    return tuple(sorted((s.id, s.cx, s.cy, s.w, s.h) for s in shapes))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=1 << 15)
def _bnb_component(key):
    """Branch-and-bound Max-IS of one component given as a sorted shape key."""
    rows = []
    for sid, cx, cy, w, h in key:
        u = grid_index(cy, h)
        rows.append((u, 2 * cx + w, sid, 2 * cx - w, cx, cy, w, h))
    rows.sort()  # stabbing-line order, then right endpoint
    m = len(rows)
    line = [r[0] for r in rows]
    lo = [r[3] for r in rows]
    hi = [r[1] for r in rows]
    nbr = [0] * m
    for i in range(m):
        _, _, _, _, xi, yi, wi, hi_ = rows[i]
        for j in range(i + 1, m):
            _, _, _, _, xj, yj, wj, hj = rows[j]
            if 2 * abs(xi - xj) < wi + wj and 2 * abs(yi - yj) < hi_ + hj:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i

    def bound(R):
        # sum over stabbing lines of the interval optimum: each line's
        # intervals are covered by that many cliques
        total = 0
        cur_line = None
        last = 0
        for i in _bits(R):
            if line[i] != cur_line:
                cur_line = line[i]
                total += 1
                last = hi[i]
            elif lo[i] >= last:
                total += 1
                last = hi[i]
        return total

    best = [0, 0]
    nodes = [0]

    def rec(R, size, chosen):
        nodes[0] += 1
        while True:
            taken = False
            for v in _bits(R):
                if (R >> v) & 1 and (nbr[v] & R).bit_count() <= 1:
                    chosen |= 1 << v
                    size += 1
                    R &= ~(nbr[v] | (1 << v))
                    taken = True
            if not taken:
                break
        if not R:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + bound(R) <= best[0]:
            return
        v = max(_bits(R), key=lambda i: ((nbr[i] & R).bit_count(), -i))
        rec(R & ~(nbr[v] | (1 << v)), size + 1, chosen | (1 << v))
        rec(R & ~(1 << v), size, chosen)

    rec((1 << m) - 1, 0, 0)
    witness = frozenset(rows[i][2] for i in _bits(best[1]))
    return best[0], witness, nodes[0]


def _milp_component(shapes, rel_gap=None):
    """Clique-constrained 0/1 program; returns (size, witness, upper bound)."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    shapes = list(shapes)
    m = len(shapes)
    if m == 1:
        return 1, frozenset([shapes[0].id]), 1
    left = [2 * s.cx - s.w for s in shapes]
    right = [2 * s.cx + s.w for s in shapes]
    bottom = [2 * s.cy - s.h for s in shapes]
    top = [2 * s.cy + s.h for s in shapes]
    adj = intersection_graph(shapes)
    index = {s.id: i for i, s in enumerate(shapes)}
    # every maximal clique of boxes contains a point just below-left of
    # (min right edge, min top edge) of two of its members
    found = set()
    for a, s in enumerate(shapes):
        X = right[a]
        column = [c for c in [a] + [index[j] for j in adj[s.id]] if left[c] < X <= right[c]]
        for b in column:
            Y = top[b]
            members = frozenset(c for c in column if bottom[c] < Y <= top[c])
            if len(members) > 1:
                found.add(members)
    # keep maximal cliques only; smaller ones are implied
    cliques = []
    by_vertex = defaultdict(list)
    for clique in sorted(found, key=len, reverse=True):
        pivot = min(clique)
        if any(clique <= big for big in by_vertex[pivot]):
            continue
        cliques.append(clique)
        for v in clique:
            by_vertex[v].append(clique)
    rows, cols = [], []
    for r, clique in enumerate(cliques):
        rows.extend([r] * len(clique))
        cols.extend(clique)
    A = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(cliques), m))
    options = {} if rel_gap is None else {"mip_rel_gap": rel_gap}
    res = milp(c=-np.ones(m), integrality=np.ones(m), bounds=Bounds(0, 1),
               constraints=LinearConstraint(A, -np.inf, 1), options=options)
    if not res.success:
        raise RuntimeError(f"HiGHS failed: {res.message}")
    x = np.round(res.x).astype(int)
    upper = int(np.floor(-res.mip_dual_bound + 1e-6)) if rel_gap is not None else int(x.sum())
    return int(x.sum()), frozenset(s.id for s, v in zip(shapes, x) if v), upper


def _unkey(key):
    from .geometry import Rect

    return [Rect(i, cx, cy, w, h) for i, cx, cy, w, h in key]


@lru_cache(maxsize=1 << 12)
def _milp_cached(key, rel_gap=None):
    return _milp_component(_unkey(key), rel_gap)


def exact_max_is(shapes, cap=DEFAULT_CAP, method="auto") -> ExactResult:
    """Maximum independent set of squares or unit-height rectangles.

    ``cap`` bounds the instance size (``None`` disables it).  Each connected
    component is solved by branch-and-bound (``"bnb"``), by HiGHS (``"milp"``),
    or, with ``"auto"``, by branch-and-bound up to ``BNB_LIMIT`` shapes and
    HiGHS above, where branching blows up on dense clusters.
    """
    shapes = _as_list(shapes)
    if cap is not None and len(shapes) > cap:
        raise CapExceeded(f"{len(shapes)} shapes exceed the oracle cap {cap}")
    size, witness, nodes = 0, set(), 0
    for comp in components(shapes):
        if len(comp) == 1:
            size += 1
            witness.add(comp[0].id)
            continue
        if method == "auto":
            route = "bnb" if len(comp) <= BNB_LIMIT else "milp"
        else:
            route = method
        if route == "bnb":
            k, w, e = _bnb_component(_key(comp))
        elif route == "milp":
            k, w, _ = _milp_cached(_key(comp))
            e = 0
        else:
            raise ValueError(f"unknown method {method!r}")
        size += k
        witness |= w
        nodes += e
    return ExactResult(size, frozenset(witness), nodes)


def max_is_bounds(shapes, rel_gap=0.01, exact_below=BNB_LIMIT) -> tuple[int, int]:
    """Lower and upper bounds on the Max-IS size.

    Components up to ``exact_below`` shapes are solved exactly by
    branch-and-bound; larger ones by HiGHS stopped at ``rel_gap``, whose dual
    bound is a certified upper bound.
    """
    lower = upper = 0
    for comp in components(_as_list(shapes)):
        if len(comp) <= exact_below:
            k = _bnb_component(_key(comp))[0]
            lower += k
            upper += k
        else:
            k, _, ub = _milp_cached(_key(comp), rel_gap)
            lower += k
            upper += ub
    return lower, upper


def exact_interval_mis(intervals) -> ExactResult:
    chain = greedy_chain(intervals)
    return ExactResult(len(chain), frozenset(iv.id for iv in chain), len(chain))


# from-scratch reference solvers -----------------------------------------


def static_mis(shapes) -> set[int]:
    """Greedy MIS in ascending id order using a cell hash."""
    shapes = sorted(_as_list(shapes), key=lambda s: s.id)
    chosen = set()
    cells = defaultdict(list)
    for s in shapes:
        u, v = grid_point_of(s)
        if any(overlaps(s, t) for du in (-1, 0, 1) for dv in (-1, 0, 1)
               for t in cells.get((u + du, v + dv), ())):
            continue
        cells[(u, v)].append(s)
        chosen.add(s.id)
    return chosen


def _pick_parity(per_line):
    agg = [0, 0]
    for u, ids in per_line.items():
        agg[u % 2] += len(ids)
    par = 0 if agg[0] >= agg[1] else 1
    out = set()
    for u, ids in per_line.items():
        if u % 2 == par:
            out |= ids
    return out


def static_grid(shapes) -> set[int]:
    front = {}
    for s in _as_list(shapes):
        front.setdefault(grid_point_of(s), s.id)
    rows = defaultdict(lambda: ([], []))
    for (u, v), sid in front.items():
        rows[u][v % 2].append(sid)
    per_line = {}
    for u, (even, odd) in rows.items():
        per_line[u] = set(odd if len(odd) >= len(even) else even)
    return _pick_parity(per_line)


def static_shifting(shapes, k) -> set[int]:
    from .interval_index import Interval

    m = k + 1
    subs = defaultdict(list)
    for s in _as_list(shapes):
        u, v = grid_point_of(s)
        iv = Interval(s.id, *interval_of(s))
        for a in range(m):
            if (v - a) % m:
                subs[(u, a)].append(((v - a) // m, iv))
    per_line = {}
    for (u, a), items in sorted(subs.items()):
        blocks = defaultdict(list)
        for b, iv in items:
            blocks[b].append(iv)
        ids = set()
        for ivs in blocks.values():
            ids |= {iv.id for iv in greedy_chain(ivs)}
        if u not in per_line or len(ids) > len(per_line[u]):
            per_line[u] = ids
    return _pick_parity(per_line)


def static_line(shapes) -> set[int]:
    from .interval_index import Interval

    lines = defaultdict(list)
    for r in _as_list(shapes):
        lines[line_of(r)].append(Interval(r.id, *interval_of(r)))
    return _pick_parity({u: {iv.id for iv in greedy_chain(ivs)} for u, ivs in lines.items()})


def static_augment(shapes, base_ids) -> set[int]:
    """``base_ids`` plus a greedy pass over the other shapes in ascending id order."""
    shapes = sorted(_as_list(shapes), key=lambda s: s.id)
    chosen = set(base_ids)
    cells = defaultdict(list)
    for s in shapes:
        if s.id in chosen:
            cells[grid_point_of(s)].append(s)
    # wide rectangles reach past the neighbouring cells
    reach = 1 + max((s.w for s in shapes), default=0) // max((s.h for s in shapes), default=1)
    for s in shapes:
        if s.id in chosen:
            continue
        u, v = grid_point_of(s)
        if any(overlaps(s, t) for du in (-1, 0, 1) for dv in range(-reach, reach + 1)
               for t in cells.get((u + du, v + dv), ())):
            continue
        cells[(u, v)].append(s)
        chosen.add(s.id)
    return chosen

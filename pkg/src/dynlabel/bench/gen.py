"""Synthetic instances and update traces.

Points live in a 1080 x 720 pixel frame and labels are 30 px squares, so
coordinates are divided by 30 to reach unit-square coordinates.  The
gaussian model mixes three clusters (70/20/10 percent of the points, standard
deviation 100 px) whose means are drawn uniformly in the frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InfeasibleTrace
from ..geometry import DEFAULT_PRECISION, Rect, Square, scale_factor, to_units
from .formats import Event, Instance, Trace

FRAME_W, FRAME_H = 1080.0, 720.0
LABEL_PX = 30.0
CLUSTER_STD = 100.0
CLUSTER_SHARES = (0.7, 0.2, 0.1)
RECT_WIDTHS = (1.0, 4.0)  # rect widths in label units
MODELS = ("uniform", "gaussian")
UPDATE_KINDS = ("insertion-only", "deletion-only", "mixed")


@dataclass(frozen=True)
class GenSpec:
    model: str = "uniform"
    n: int = 1000
    seed: int = 0
    precision: int = DEFAULT_PRECISION
    mode: str = "squares"


def cluster_counts(n):
    a = int(round(CLUSTER_SHARES[0] * n))
    b = int(round(CLUSTER_SHARES[1] * n))
    return [a, b, n - a - b]


class Sampler:
    """Draws label positions from a point model."""

    def __init__(self, model, seed, rng, mode="squares", precision=DEFAULT_PRECISION):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        self.model, self.mode, self.precision = model, mode, precision
        self.unit = scale_factor(precision)
        self.rng = rng
        # cluster means depend on the instance seed only, so traces share them
        self.means = np.random.default_rng(seed).uniform((0, 0), (FRAME_W, FRAME_H), size=(3, 2))

    def points(self, n, comps=None):
        rng = self.rng
        if self.model == "uniform":
            pts = rng.uniform((0, 0), (FRAME_W, FRAME_H), size=(n, 2))
        else:
            if comps is None:
                comps = rng.choice(3, size=n, p=CLUSTER_SHARES)
            pts = self.means[comps] + rng.normal(0.0, CLUSTER_STD, size=(n, 2))
        half = LABEL_PX / 2
        pts[:, 0] = np.clip(pts[:, 0], half, FRAME_W - half)
        pts[:, 1] = np.clip(pts[:, 1], half, FRAME_H - half)
        return pts / LABEL_PX

    def _fmt(self, v):
        return to_units(f"{v:.{self.precision}f}", self.precision)

    def shapes(self, ids, comps=None):
        pts = self.points(len(ids), comps)
        widths = self.rng.uniform(*RECT_WIDTHS, size=len(ids)) if self.mode == "rects" else None
        out = []
        for j, i in enumerate(ids):
            x, y = self._fmt(pts[j, 0]), self._fmt(pts[j, 1])
            if widths is None:
                out.append(Square(i, x, y, self.unit))
            else:
                out.append(Rect(i, x, y, self._fmt(widths[j]), self.unit))
        return out


def generate(spec: GenSpec) -> Instance:
    if spec.n < 0:
        raise ValueError("n must be >= 0")
    rng = np.random.default_rng(spec.seed)
    sampler = Sampler(spec.model, spec.seed, rng, spec.mode, spec.precision)
    meta = {"model": spec.model, "seed": spec.seed}
    comps = None
    if spec.model == "gaussian":
        counts = cluster_counts(spec.n)
        comps = np.repeat(np.arange(3), counts)
        rng.shuffle(comps)
        # the per-cluster tally, recounted from the component tags actually drawn
        meta["clusters"] = "/".join(str(int((comps == c).sum())) for c in range(3))
    shapes = sampler.shapes(range(spec.n), comps)
    return Instance(shapes, spec.precision, spec.mode, meta)


def make_trace(inst: Instance, updates: str, N: int, seed: int = 0) -> Trace:
    """Random update sequence: deletions pick a live id uniformly, insertions
    draw a fresh label from the instance's model with the next unused id."""
    if updates not in UPDATE_KINDS:
        raise ValueError(f"unknown update kind {updates!r}")
    live = [s.id for s in inst.shapes]
    if updates == "deletion-only" and N > len(live):
        raise InfeasibleTrace(f"cannot delete {N} of {len(live)} labels")
    rng = np.random.default_rng(seed)
    model = inst.meta.get("model", "uniform")
    if model not in MODELS:
        model = "uniform"
    base_seed = int(inst.meta.get("seed", 0))
    sampler = Sampler(model, base_seed, np.random.default_rng([seed, 1]), inst.mode, inst.precision)
    nxt = max(live, default=-1) + 1
    events = []
    for _ in range(N):
        if updates == "insertion-only":
            op = "I"
        elif updates == "deletion-only":
            op = "D"
        else:
            op = "I" if rng.random() < 0.5 or not live else "D"
        if op == "I":
            s = sampler.shapes([nxt])[0]
            events.append(Event("I", nxt, s))
            live.append(nxt)
            nxt += 1
        else:
            j = int(rng.integers(len(live)))
            victim = live[j]
            last = live.pop()
            if last != victim:
                live[j] = last
            events.append(Event("D", victim))
    meta = {"mode": inst.mode, "updates": updates, "seed": seed}
    return Trace(events, inst.precision, meta)

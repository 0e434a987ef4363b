"""Replay traces against the solvers: timing runs, verification, plot series."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..algo_grid import GridMIS
from ..algo_line import LineMIS
from ..algo_mis_graph import MisGraph
from ..algo_mis_ors import MisOrs
from ..algo_shifting import ShiftingMIS
from ..errors import CapExceeded, DynLabelError, InvariantViolation, UnknownAlgo
from ..geometry import Rect
from ..greedy_augment import Augmented
from .. import oracle
from .formats import Instance, Trace

ALGOS = ("mis-ors", "mis-graph", "grid", "grid-k", "line", "g-grid", "g-grid-k", "g-line")
RECT_ALGOS = ("line", "g-line")
MIS_ALGOS = ("mis-ors", "mis-graph")


@dataclass(frozen=True)
class SolverOptions:
    k: int = 2
    augment: str = "local"
    kappa: int | None = None


def approx_factor(algo, k=2) -> float:
    """Worst-case ratio OPT / solution for each algorithm."""
    base = algo[2:] if algo.startswith("g-") else algo
    return {"mis-ors": 4.0, "mis-graph": 4.0, "grid": 4.0,
            "grid-k": 2.0 * (1 + 1 / k), "line": 2.0}[base]


def make_solver(algo, shapes, opts: SolverOptions = SolverOptions()):
    if algo not in ALGOS:
        raise UnknownAlgo(algo)
    shapes = list(shapes)
    if algo not in RECT_ALGOS and any(isinstance(s, Rect) for s in shapes):
        raise UnknownAlgo(f"{algo} handles unit squares only")
    base = algo[2:] if algo.startswith("g-") else algo
    if base == "mis-ors":
        return MisOrs(shapes)
    if base == "mis-graph":
        return MisGraph(shapes)
    if base == "grid":
        solver = GridMIS(shapes, kappa=opts.kappa)
    elif base == "grid-k":
        solver = ShiftingMIS(shapes, k=opts.k, kappa=opts.kappa)
    else:
        solver = LineMIS(shapes)
    return Augmented(solver, opts.augment) if algo.startswith("g-") else solver


def static_solution(algo, shapes, opts: SolverOptions = SolverOptions()) -> set[int]:
    """From-scratch counterpart of ``algo`` (also the recompute baseline)."""
    base = algo[2:] if algo.startswith("g-") else algo
    if base in MIS_ALGOS:
        ids = oracle.static_mis(shapes)
    elif base == "grid":
        ids = oracle.static_grid(shapes)
    elif base == "grid-k":
        ids = oracle.static_shifting(shapes, opts.k)
    elif base == "line":
        ids = oracle.static_line(shapes)
    else:
        raise UnknownAlgo(algo)
    if algo.startswith("g-"):
        ids = oracle.static_augment(shapes, ids)
    return ids


def _apply(solver, ev):
    if ev.op == "I":
        solver.insert(ev.shape)
    else:
        solver.delete(ev.id)


@dataclass
class BenchRecord:
    step: int
    op: str
    algo: str
    solution_size: int
    update_time_ns: int
    opt_size: int | None = None
    ratio: float | None = None
    recompute_time_ns: int | None = None


@dataclass
class RunResult:
    algo: str
    records: list = field(default_factory=list)
    with_opt: bool = False
    with_recompute: bool = False

    def summary(self) -> dict:
        times = [r.update_time_ns for r in self.records]
        out = {"algo": self.algo, "steps": len(times)}
        if times:
            out["mean_update_ns"] = round(statistics.fmean(times), 1)
            out["stddev_update_ns"] = round(statistics.pstdev(times), 1)
            out["median_update_ns"] = int(statistics.median(times))
            out["mean_size"] = round(statistics.fmean(r.solution_size for r in self.records), 3)
            out["final_size"] = self.records[-1].solution_size
        ratios = [r.ratio for r in self.records if r.ratio is not None]
        if ratios:
            out["min_ratio"] = round(min(ratios), 6)
        rec = [r.recompute_time_ns for r in self.records if r.recompute_time_ns is not None]
        if rec and times:
            out["mean_recompute_ns"] = round(statistics.fmean(rec), 1)
            out["stddev_recompute_ns"] = round(statistics.pstdev(rec), 1)
            out["speedup"] = round(statistics.fmean(rec) / max(1.0, statistics.fmean(times)), 2)
        return out


def run(inst: Instance, trace: Trace, algo, opts: SolverOptions = SolverOptions(),
        with_opt=False, recompute_baseline=False, cap=oracle.DEFAULT_CAP,
        warmup=0) -> RunResult:
    """Replay ``trace``; only the solver update itself is timed.

    ``with_opt`` adds the exact optimum per step (``cap`` bounds its size);
    ``recompute_baseline`` times a from-scratch recomputation per step.  The
    first ``warmup`` events are applied untimed and produce no rows.
    """
    solver = make_solver(algo, inst.shapes, opts)
    res = RunResult(algo, with_opt=with_opt, with_recompute=recompute_baseline)
    clock = time.perf_counter_ns
    for ev in trace.events[:warmup]:
        _apply(solver, ev)
    for step, ev in enumerate(trace.events[warmup:], warmup + 1):
        t0 = clock()
        _apply(solver, ev)
        dt = clock() - t0
        rec = BenchRecord(step, ev.op, algo, solver.size, dt)
        if with_opt:
            opt = oracle.exact_max_is(solver.squares.values(), cap=cap).size
            rec.opt_size = opt
            rec.ratio = solver.size / opt if opt else 1.0
        if recompute_baseline:
            live = list(solver.squares.values())
            t0 = clock()
            static_solution(algo, live, opts)
            rec.recompute_time_ns = clock() - t0
        res.records.append(rec)
    return res


def bounded_ratios(inst: Instance, trace: Trace, algo, opts: SolverOptions = SolverOptions(),
                   every=10, rel_gap=0.01) -> list[float]:
    """Per-step lower bounds on ``size / OPT`` for instances too large to solve
    exactly at every step.

    A certified upper bound on OPT is computed every ``every`` steps.  One
    insertion raises OPT by at most one and one deletion lowers it by at most
    one, so a checkpoint at or before step t bounds OPT(t) by its value plus
    the insertions since, and a later checkpoint by its value plus the
    deletions until then.
    """
    solver = make_solver(algo, inst.shapes, opts)
    n = len(trace.events)
    marks = set(range(0, n + 1, max(1, every))) | {n}
    sizes, ub_at = [solver.size], {}
    if 0 in marks:
        ub_at[0] = oracle.max_is_bounds(solver.squares.values(), rel_gap)[1]
    for step, ev in enumerate(trace.events, 1):
        _apply(solver, ev)
        sizes.append(solver.size)
        if step in marks:
            ub_at[step] = oracle.max_is_bounds(solver.squares.values(), rel_gap)[1]
    ins = [0] * (n + 1)
    dels = [0] * (n + 1)
    for step, ev in enumerate(trace.events, 1):
        ins[step] = ins[step - 1] + (ev.op == "I")
        dels[step] = dels[step - 1] + (ev.op == "D")
    cps = sorted(ub_at)
    out = []
    for step in range(1, n + 1):
        ub = min(min(ub_at[c] + ins[step] - ins[c] for c in cps if c <= step),
                 min((ub_at[c] + dels[c] - dels[step] for c in cps if c >= step), default=1 << 60))
        out.append(sizes[step] / ub if ub else 1.0)
    return out


def records_csv(res: RunResult) -> str:
    recs = res.records
    with_opt, with_rec = res.with_opt, res.with_recompute
    cols = ["step", "op", "algo", "solution_size", "update_time_ns"]
    if with_opt:
        cols += ["opt_size", "ratio"]
    if with_rec:
        cols += ["recompute_time_ns"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in recs:
        row = [r.step, r.op, r.algo, r.solution_size, r.update_time_ns]
        if with_opt:
            row += [r.opt_size, f"{r.ratio:.6f}"]
        if with_rec:
            row += [r.recompute_time_ns]
        w.writerow(row)
    buf.write("# summary " + " ".join(f"{k}={v}" for k, v in res.summary().items()) + "\n")
    return buf.getvalue()


def read_records(path) -> list[dict]:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))


@dataclass
class VerifyReport:
    algo: str
    steps: int
    checks: int

    def __str__(self):
        return f"OK, {self.steps} steps"


def verify(inst: Instance, trace: Trace, algo, opts: SolverOptions = SolverOptions(),
           with_opt=False, cap=oracle.DEFAULT_CAP, solver=None) -> VerifyReport:
    """Replay ``trace`` checking every invariant after every update.

    Raises :class:`InvariantViolation` carrying the failing step.
    """
    if solver is None:
        solver = make_solver(algo, inst.shapes, opts)
    base = algo[2:] if algo.startswith("g-") else algo
    exact_static = base in ("grid", "grid-k", "line") and (
        not algo.startswith("g-") or opts.augment == "full")
    must_be_maximal = base in MIS_ALGOS or (algo.startswith("g-") and opts.augment == "full")
    factor = approx_factor(algo, opts.k)
    checks = 0

    def fail(step, msg):
        raise InvariantViolation(msg, step=step)

    for step, ev in enumerate([None] + list(trace.events)):
        if ev is not None:
            try:
                _apply(solver, ev)
            except InvariantViolation as exc:
                fail(step, str(exc))
        live = list(solver.squares.values())
        try:
            solver.check()
        except InvariantViolation as exc:
            fail(step, str(exc))
        sol = solver.solution()
        if len(sol) != solver.size:
            fail(step, f"reported size {solver.size} but solution has {len(sol)}")
        vr = oracle.verify_is(live, sol)
        if not vr.independent:
            fail(step, "solution is not independent")
        if must_be_maximal and not vr.maximal:
            fail(step, "solution is not maximal")
        if exact_static:
            ref = static_solution(algo, live, opts)
            if ref != sol:
                fail(step, f"solution differs from recomputation ({len(sol)} vs {len(ref)})")
        if algo.startswith("g-") and not solver.base_solution() <= sol:
            fail(step, "augmented output drops base members")
        if with_opt:
            try:
                opt = oracle.exact_max_is(live, cap=cap).size
            except CapExceeded:
                opt = None
            if opt is not None and factor * len(sol) < opt:
                fail(step, f"size {len(sol)} below OPT {opt} / {factor}")
        checks += 1
    return VerifyReport(algo, len(trace.events), checks)


def plot_data(record_files, out_dir) -> list[Path]:
    """Split record CSVs into one whitespace-separated series per algorithm."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    series: dict[str, list[dict]] = {}
    for path in record_files:
        for row in read_records(path):
            series.setdefault(row["algo"], []).append(row)
    written = []
    for algo, rows in sorted(series.items()):
        cols = ["step", "update_time_ns", "solution_size"]
        cols += [c for c in ("opt_size", "ratio", "recompute_time_ns") if c in rows[0]]
        p = out_dir / f"{algo}.dat"
        with p.open("w") as fh:
            fh.write("# " + " ".join(cols) + "\n")
            for row in rows:
                fh.write(" ".join(row[c] for c in cols) + "\n")
        written.append(p)
    return written


__all__ = ["ALGOS", "RECT_ALGOS", "MIS_ALGOS", "SolverOptions", "make_solver", "static_solution", "run", "verify",
           "plot_data", "records_csv", "read_records", "BenchRecord", "RunResult",
           "VerifyReport", "approx_factor", "bounded_ratios", "DynLabelError"]

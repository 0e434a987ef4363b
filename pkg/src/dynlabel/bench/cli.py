"""``dynlabel`` command line: gen, trace, run, verify, plot-data.

Exit codes: 0 ok, 1 usage or input error, 2 invariant violation, 3 format
error, 4 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import CapExceeded, DynLabelError, FormatError, InvariantViolation
from ..geometry import DEFAULT_PRECISION
from .. import oracle
from . import formats
from .gen import MODELS, UPDATE_KINDS, GenSpec, generate, make_trace
from .harness import ALGOS, SolverOptions, plot_data, records_csv, run, verify

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_FORMAT, EXIT_CAP = 0, 1, 2, 3, 4


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _solver_flags(p):
    # validated by the harness so a bad name exits 1 rather than argparse's 2
    p.add_argument("--algo", required=True, help="one of " + ", ".join(ALGOS))
    p.add_argument("--k", type=int, default=2, help="shifting parameter for grid-k")
    p.add_argument("--augment", choices=("local", "full"), default="local")
    p.add_argument("--kappa", type=int, default=None, help="optional grid frame size")
    p.add_argument("--with-opt", action="store_true", help="add the exact optimum per step")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="oracle size cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dynlabel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a synthetic instance")
    g.add_argument("--model", choices=MODELS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--scale", type=int, default=DEFAULT_PRECISION, help="decimal digits kept")
    g.add_argument("--mode", choices=formats.MODES, default="squares")
    g.add_argument("-o", "--out")

    t = sub.add_parser("trace", help="generate an update trace for an instance")
    t.add_argument("instance")
    t.add_argument("--updates", choices=UPDATE_KINDS, default="mixed")
    t.add_argument("--N", type=int, required=True)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("-o", "--out")

    r = sub.add_parser("run", help="replay a trace and emit per-step records")
    r.add_argument("instance")
    r.add_argument("trace")
    _solver_flags(r)
    r.add_argument("--recompute-baseline", action="store_true")
    r.add_argument("--warmup", type=int, default=0, help="untimed leading steps")
    r.add_argument("-o", "--out")

    v = sub.add_parser("verify", help="replay a trace checking invariants after every step")
    v.add_argument("instance")
    v.add_argument("trace")
    _solver_flags(v)

    pd = sub.add_parser("plot-data", help="split record files into per-algorithm series")
    pd.add_argument("records", nargs="+")
    pd.add_argument("--out-dir", default="plot-data")
    return ap


def _load(args):
    inst = formats.read_instance(args.instance)
    trace = formats.read_trace(args.trace, inst.mode)
    if trace.precision != inst.precision:
        raise FormatError(f"trace scale {trace.precision} != instance scale {inst.precision}")
    return inst, trace


def _opts(args):
    return SolverOptions(k=args.k, augment=args.augment, kappa=args.kappa)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "gen":
            inst = generate(GenSpec(args.model, args.n, args.seed, args.scale, args.mode))
            _emit(formats.format_instance(inst), args.out)
        elif args.cmd == "trace":
            inst = formats.read_instance(args.instance)
            _emit(formats.format_trace(make_trace(inst, args.updates, args.N, args.seed)), args.out)
        elif args.cmd == "run":
            inst, trace = _load(args)
            res = run(inst, trace, args.algo, _opts(args), with_opt=args.with_opt,
                      recompute_baseline=args.recompute_baseline, cap=args.cap,
                      warmup=args.warmup)
            _emit(records_csv(res), args.out)
        elif args.cmd == "verify":
            inst, trace = _load(args)
            report = verify(inst, trace, args.algo, _opts(args), with_opt=args.with_opt, cap=args.cap)
            print(report)
        else:
            for p in plot_data(args.records, args.out_dir):
                print(p)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except CapExceeded as exc:
        print(f"oracle cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DynLabelError, ValueError, LookupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

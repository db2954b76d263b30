"""Command-line interface: ``fracwhittle {estimate,simulate,bench,verify}``.

Exit codes: 0 success, 1 I/O or usage error, 2 estimation or harness
failure, 3 verification residual above tolerance. Data go to stdout,
diagnostics to stderr.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from ._errors import (
    EstimationFailedError,
    FracWhittleError,
    HarnessError,
    InvalidInputError,
)
from . import _kernels
from .elw import MEAN_MODES, EstimatorConfig
from .fracfilter import as_series, fracdiff, fracint
from .mc import ESTIMATOR_NAMES, McConfig, fmt, run_estimator, run_mc
from .simulate import SimSpec, gen_fractional, normal_stream
from .spectrum import dft_full, identity_residual

EXIT_OK, EXIT_USAGE, EXIT_ESTIMATION, EXIT_VERIFY = 0, 1, 2, 3

TABLE_D_VALUES = "-3.5,-2.3,-1.7,-1.3,-0.7,-0.3,0,0.3,0.7,1.3,1.7,2.3,3.5"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _bounds(text):
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"bounds must be LO,HI, got {text!r}")
    return tuple(vals)


def read_series(path, fmt_="plain", column=None):
    """Load a series file: one float per line, or a named CSV column."""
    with open(path, newline="") as fh:
        if fmt_ == "plain":
            vals = []
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    vals.append(float(line))
                except ValueError:
                    raise InvalidInputError(f"{path}:{lineno}: not a number: {line!r}")
        else:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            if column is None:
                if len(fields) != 1:
                    raise InvalidInputError(f"{path}: pass --column, header has {fields}")
                column = fields[0]
            if column not in fields:
                raise InvalidInputError(f"{path}: no column {column!r} in {fields}")
            try:
                vals = [float(row[column]) for row in reader]
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"{path}: bad value in column {column!r}: {exc}")
    x = np.asarray(vals, dtype=np.float64)
    if x.shape[0] < 2:
        raise InvalidInputError(f"{path}: need at least 2 observations, got {x.shape[0]}")
    return as_series(x)


def cmd_estimate(args):
    x = read_series(args.input, args.format, args.column)
    cfg = EstimatorConfig(m=args.m, delta1=args.bounds[0], delta2=args.bounds[1],
                          mean_mode=args.mean, ci_level=args.ci_level)
    cfg.bandwidth(x.shape[0])
    res = run_estimator(args.estimator, x, cfg)
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.json:
        print(json.dumps(res.as_dict(), indent=2))
    else:
        keys = ["estimator", "n", "m", "d_hat", "g_hat", "se", "ci_low", "ci_high", "ci_level",
                "objective_at_min", "boundary_hit"]
        d = res.as_dict()
        print(",".join(keys))
        print(",".join(fmt(d[k]) if isinstance(d[k], float) else str(d[k]).lower() for k in keys))
    return EXIT_OK


def cmd_simulate(args):
    x = gen_fractional(SimSpec(n=args.n, d=args.d, seed=args.seed))
    text = "".join(fmt(v) + "\n" for v in x)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def _print_table(report):
    print(f"{'estimator':<10} {'d':>6} {'bias':>10} {'s.d.':>9} {'MSE':>9} {'fail':>5}")
    for r in report.rows:
        print(f"{r.estimator:<10} {r.d:>6.2f} {r.bias:>10.4f} {r.sd:>9.4f} {r.mse:>9.4f} {r.failures:>5d}")


def cmd_bench(args):
    cfg = McConfig(n=args.n, m=args.m, reps=args.reps, d_values=tuple(args.d_list),
                   estimators=tuple(args.estimators), seed=args.seed, workers=args.workers,
                   delta1=args.bounds[0], delta2=args.bounds[1], density=args.density)
    report = run_mc(cfg)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "table.csv"), "w") as fh:
        fh.write(report.table_csv())
    with open(os.path.join(args.out_dir, "table.json"), "w") as fh:
        fh.write(report.to_json())
    if args.density:
        with open(os.path.join(args.out_dir, "density.csv"), "w") as fh:
            fh.write(report.density_csv())
    for note in report.notes:
        print(f"warning: {note}", file=sys.stderr)
    _print_table(report)
    return EXIT_OK


def roundtrip_condition(d, n):
    """Error amplification bound of fracdiff(fracint(., d), d) on length-n input."""
    a = np.sum(np.abs(_kernels.frac_coeffs(d, n - 1)))
    b = np.sum(np.abs(_kernels.frac_coeffs(-d, n - 1)))
    return float(a * b)


def verify_grid(n_list, d_list, seeds, seed=0, tol=1e-8):
    """Worst residual per check over the grid.

    Returns ``(worst, skipped)`` where ``worst`` maps check name to
    ``(residual, location)``. Round trips whose amplification bound times
    machine epsilon already exceeds ``tol`` cannot be resolved in double
    precision and are counted in ``skipped`` instead of checked.
    """
    worst = {"identity": (0.0, None), "roundtrip": (0.0, None), "parseval": (0.0, None),
             "symmetry": (0.0, None)}
    skipped = []

    def note(key, value, where):
        if value > worst[key][0] or worst[key][1] is None:
            worst[key] = (float(value), where)

    for n in n_list:
        for s in range(seeds):
            x = normal_stream(seed, 1000 * n + s, n)
            w = dft_full(x)
            pg = w.real ** 2 + w.imag ** 2
            energy = float(np.sum(x * x)) / (2.0 * np.pi)
            note("parseval", abs(float(np.sum(pg)) - energy) / energy, (n, s))
            if n > 2:
                note("symmetry", float(np.max(np.abs(pg[1:] - pg[1:][::-1]))) / float(np.max(pg[1:])), (n, s))
            for d in d_list:
                for j in range(1, min(32, n - 1) + 1):
                    note("identity", identity_residual(x, d, j), (n, d, j, s))
                if roundtrip_condition(d, n) * np.finfo(float).eps > tol:
                    skipped.append((n, d, s))
                    continue
                back = fracdiff(fracint(x, d), d)
                note("roundtrip", float(np.max(np.abs(back - x))) / float(np.max(np.abs(x))), (n, d, s))
    return worst, skipped


def cmd_verify(args):
    worst, skipped = verify_grid(args.n_list, args.d_list, args.seeds, args.seed, args.tol)
    failed = False
    for key, (value, where) in worst.items():
        ok = value <= args.tol
        failed |= not ok
        print(f"{key:<10} max_residual={value:.3e} worst_at={where} {'PASS' if ok else 'FAIL'}")
    if skipped:
        print(f"roundtrip  skipped {len(skipped)} ill-conditioned (n, d, seed) cases: {skipped}")
    print(f"backend={_kernels.BACKEND} tol={args.tol:g} {'FAIL' if failed else 'PASS'}")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser():
    p = _Parser(prog="fracwhittle", description="Exact local Whittle estimation of d.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("estimate", help="estimate d from a series file")
    e.add_argument("--input", required=True)
    e.add_argument("--format", choices=("plain", "csv"), default="plain")
    e.add_argument("--column", default=None, help="CSV column name")
    e.add_argument("--estimator", choices=("elw", "lw", "hc", "velasco"), default="elw")
    e.add_argument("--m", type=int, default=None, help="bandwidth (default floor(n^0.65))")
    e.add_argument("--bounds", type=_bounds, default=(-6.0, 6.0), help="LO,HI (write --bounds=-1,3)")
    e.add_argument("--mean", choices=MEAN_MODES, default="none")
    e.add_argument("--ci-level", type=float, default=0.95)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_estimate)

    s = sub.add_parser("simulate", help="write a simulated I(d) series")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", default=None)
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bench", help="Monte Carlo bias / s.d. / MSE tables")
    b.add_argument("--reps", type=int, default=1000)
    b.add_argument("--n", type=int, default=500)
    b.add_argument("--m", type=int, default=None)
    b.add_argument("--d-list", type=_floats, default=_floats(TABLE_D_VALUES))
    b.add_argument("--estimators", type=lambda t: [v for v in t.split(",") if v],
                   default=list(ESTIMATOR_NAMES))
    b.add_argument("--bounds", type=_bounds, default=(-6.0, 6.0))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out-dir", default=".")
    b.add_argument("--density", action="store_true")
    b.add_argument("--workers", type=int, default=int(os.environ.get("FRACWHITTLE_WORKERS", "1")))
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check exact identities and filter round trips")
    v.add_argument("--n-list", type=_ints, default=[16, 128, 512])
    v.add_argument("--d-list", type=_floats, default=[-4.5, -2.0, -0.5, 0.0, 0.5, 1.0, 1.3, 2.3, 4.5])
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--seeds", type=int, default=1, help="random series per n")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HarnessError as exc:
        print(f"error: harness failure: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    except EstimationFailedError as exc:
        print(f"error: estimation failed: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    except (FracWhittleError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

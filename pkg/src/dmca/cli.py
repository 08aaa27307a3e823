"""Command-line interface: ``dmca coeff | gen | simulate``.

Exit status is 0 on success, 2 for invalid input or configuration, 1 for
I/O failures. Windows with degenerate residuals (``coeff``) and failing grid
cells (``simulate``) do not change the exit status; they are reported in the
``status`` column of the output instead.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .arfima import DEFAULT_BURN_IN, ArfimaSpec, generate_pair
from .config import load_grid
from .core import DetrendConfig, dmca_profile, fluctuations, parse_lambdas
from .errors import DegenerateVariance, DmcaError
from .io import COEFF_HEADER, GEN_HEADER, GRID_HEADER, atomic_write, read_pair, to_csv
from .montecarlo import run_grid
from .plotscript import gnuplot_script

log = logging.getLogger("dmca")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def coeff_rows(x, y, lambdas: Sequence[int], theta: float) -> list[list]:
    rows = []
    for lam, res in zip(lambdas, dmca_profile(x, y, lambdas, theta)):
        if isinstance(res, DegenerateVariance):
            fp = fluctuations(x, y, lam, theta)
            rows.append([lam, None, fp.f2_x, fp.f2_y, fp.f2_xy, fp.n_residuals,
                         f"error: DegenerateVariance: {res}"])
        elif isinstance(res, Exception):
            raise res
        else:
            fp = res.fluctuations
            rows.append([lam, res.rho, fp.f2_x, fp.f2_y, fp.f2_xy, fp.n_residuals, "ok"])
    return rows


def cmd_coeff(args) -> int:
    lambdas = parse_lambdas(args.lam)
    if not lambdas:
        raise DmcaError("no window lengths given")
    for lam in lambdas:
        DetrendConfig(lam, args.theta)
    columns = args.columns.split(",") if args.columns else None
    source = sys.stdin if args.input == "-" else args.input
    x, y = read_pair(source, columns)
    for lam in lambdas:
        DetrendConfig(lam, args.theta).check_length(len(x))
    _emit(to_csv(COEFF_HEADER, coeff_rows(x, y, lambdas, args.theta)), args.output)
    return 0


def cmd_gen(args) -> int:
    spec = ArfimaSpec(args.d1, args.d2, args.rho, args.length, args.burn_in, args.seed)
    x, y = generate_pair(spec, args.method)
    rows = ([t + 1, xv, yv] for t, (xv, yv) in enumerate(zip(x.tolist(), y.tolist())))
    _emit(to_csv(GEN_HEADER, rows), args.output)
    return 0


def cmd_simulate(args) -> int:
    grid = load_grid(args.config)
    summaries = run_grid(grid, workers=args.workers)
    rows = (
        [s.d, s.rho, s.lam, s.T, s.q025, s.q50, s.q975, s.mean, s.stddev,
         s.replications_used, s.status]
        for s in summaries
    )
    csv_text = to_csv(GRID_HEADER, rows)
    script = gnuplot_script(summaries) if args.plot_script else None
    _emit(csv_text, args.output)
    if script is not None:
        atomic_write(args.plot_script, script)
    failed = sum(not s.ok for s in summaries)
    if failed:
        log.warning("%d of %d cells failed; see the status column", failed, len(summaries))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dmca",
        description="Detrending moving-average cross-correlation coefficient tools.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeff", parents=[common],
                       help="coefficient of two increment columns in a CSV file")
    c.add_argument("--input", required=True, help="CSV file, or - for stdin")
    c.add_argument("--lambda", dest="lam", default="5,15,31,101",
                   help="comma-separated window lengths (default: %(default)s)")
    c.add_argument("--theta", type=float, default=0.5, choices=(0.0, 0.5, 1.0))
    c.add_argument("--columns", help="two columns to use, by header name or 1-based index "
                   "(default: the last two)")
    c.add_argument("--output", help="output CSV (default: stdout)")
    c.set_defaults(func=cmd_coeff)

    g = sub.add_parser("gen", parents=[common], help="generate a correlated ARFIMA(0,d,0) pair")
    g.add_argument("--d1", type=float, required=True)
    g.add_argument("--d2", type=float, required=True)
    g.add_argument("--rho", type=float, required=True)
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--method", choices=("direct", "fft"), default="direct")
    g.add_argument("--output", help="output CSV (default: stdout)")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("simulate", parents=[common],
                       help="run a Monte Carlo grid from a TOML config")
    s.add_argument("--config", required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output", help="output CSV (default: stdout)")
    s.add_argument("--plot-script", help="also write a gnuplot script here")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except DmcaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:
    twin-sweep      ratio table over (aT, T/T0, sigma/T0) from a config file
    inertial-sweep  deviation-from-ideal table over (T/T0, sigma/T0)
    chart           comoving-chart samples of the traveling worldline
    classical       closed-form elapsed-time relations for one aT
    validate        structural invariant battery, nonzero exit on failure

Common flags: --config, --out, --workers (TEMPUS_WORKERS as fallback),
--strict, --rel-tol, --cutoff-multiple. CSV output is UTF-8 with \\n
line endings and fixed headers.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .geometry import Scenario, classical_ratio, elapsed_inertial_time, max_relative_velocity
from .sweeps import load_config, run_chart_export, run_inertial_sweep, run_twin_sweep, with_overrides
from .validate import run_validate


def _add_sweep_flags(p):
    p.add_argument("--config", required=True, help="sweep config file (ini sections)")
    p.add_argument("--out", default=None, help="output CSV path (overrides config)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (0 = auto; falls back to TEMPUS_WORKERS)")
    p.add_argument("--strict", action="store_true",
                   help="exit nonzero if any row failed to converge")
    p.add_argument("--rel-tol", type=float, default=None,
                   help="override the multidimensional relative tolerance")
    p.add_argument("--cutoff-multiple", type=float, default=None,
                   help="override the frequency cutoff multiple")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tempus",
        description="Finite-sized quantum clocks on twin-paradox worldlines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("twin-sweep", "compute the traveling/inertial clock ratio table"),
        ("inertial-sweep", "compute deviation-from-ideal-rate table"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_sweep_flags(p)

    p = sub.add_parser("chart", help="export comoving-chart samples as CSV")
    p.add_argument("--aT", type=float, required=True)
    p.add_argument("--T", type=float, default=1.0, help="total proper time in units of T0")
    p.add_argument("--sigma", type=float, required=True, help="clock extent in units of T0")
    p.add_argument("--tau-points", type=int, default=65)
    p.add_argument("--xi-points", type=int, default=33)
    p.add_argument("--xi-span", type=float, default=3.0, help="chart half-width in units of sigma")
    p.add_argument("--out", required=True)

    p = sub.add_parser("classical", help="print closed-form kinematic quantities")
    p.add_argument("--aT", type=float, required=True)
    p.add_argument("--T", type=float, default=None, help="optional proper time in units of T0")

    p = sub.add_parser("validate", help="run the structural invariant battery")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command in ("twin-sweep", "inertial-sweep"):
        cfg = load_config(args.config)
        cfg = with_overrides(
            cfg,
            rel_tol=args.rel_tol,
            cutoff_multiple=args.cutoff_multiple,
            workers=args.workers,
            output_path=args.out,
        )
        if not cfg.output_path:
            print("error: no output path given (config [output] path or --out)", file=sys.stderr)
            return 2
        runner = run_twin_sweep if args.command == "twin-sweep" else run_inertial_sweep
        table = runner(cfg)
        bad = table.unconverged_rows()
        print(f"wrote {len(table.rows)} rows to {cfg.output_path}"
              + (f" ({len(bad)} unconverged)" if bad else ""))
        if bad and args.strict:
            return 1
        return 0

    if args.command == "chart":
        if args.aT < 0 or args.T <= 0 or args.sigma <= 0:
            print("error: chart requires aT >= 0, T > 0, sigma > 0", file=sys.stderr)
            return 2
        scn = Scenario(a=args.aT / args.T, T=args.T, omega=2.0, sigma=args.sigma)
        tau_grid = np.linspace(0.0, scn.T, args.tau_points)
        span = args.xi_span * args.sigma
        x_grid = np.linspace(-span, span, args.xi_points)
        table = run_chart_export(scn, tau_grid, x_grid, args.out)
        print(f"wrote {len(table.rows)} rows to {args.out}")
        return 0

    if args.command == "classical":
        aT = args.aT
        print(f"classical_ratio = {classical_ratio(aT)!r}")
        print(f"max_relative_velocity = {max_relative_velocity(aT)!r}")
        if args.T is not None:
            a = aT / args.T
            print(f"elapsed_inertial_time = {elapsed_inertial_time(a, args.T)!r}")
        return 0

    if args.command == "validate":
        report = run_validate(stream=sys.stdout)
        return 0 if report["passed"] else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())

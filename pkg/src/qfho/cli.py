"""Command-line front end.

Subcommands: trajectory, kernel, compare, heisenberg.  One scenario per
invocation; all numeric output is CSV with fixed headers, with a PNG
rendered next to each CSV unless --no-plot is given.

Exit codes: 0 success (for compare: all agreement thresholds met),
1 usage or configuration error, 2 physics-domain error (caustic, packet at
the boundary, unresolvable kernel oscillation, ...) or a failed comparison.
"""

import argparse
import os
import sys

from . import experiments
from .errors import (
    CausticSingular,
    ConfigError,
    ExpressionError,
    PhysicsDomainError,
    QfhoError,
)
from .scenario import load_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PHYSICS = 2


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _float_list(text: str):
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="qfho",
        description="Driven quantum harmonic oscillator: closed-form evolution "
                    "and an independent grid solver to check it.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scenario file (INI)")
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument("--seed", type=int, default=None,
                       help="reserved; no stochastic components yet")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
        p.add_argument("--no-plot", action="store_true",
                       help="skip rendering PNG figures next to the CSVs")

    p = sub.add_parser("trajectory", help="integrate the classical shift parameters")
    common(p)

    p = sub.add_parser("kernel", help="evaluate the propagator on a (q, q') product")
    common(p)
    p.add_argument("--t", type=float, required=True, help="evaluation time")
    p.add_argument("--q", type=_float_list, required=True,
                   help="comma-separated final positions "
                        "(use --q=-2,0,2 when the first value is negative)")
    p.add_argument("--q-prime", type=_float_list, required=True,
                   help="comma-separated initial positions")

    p = sub.add_parser("compare", help="kernel evolution vs the grid solver")
    common(p)

    p = sub.add_parser("heisenberg", help="tabulate the phase-space map")
    common(p)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE

    try:
        scenario = load_scenario(args.config)
        os.makedirs(args.out, exist_ok=True)
        kwargs = {"plot": not args.no_plot, "quiet": args.quiet}
        if args.command == "trajectory":
            experiments.run_trajectory(scenario, args.out, **kwargs)
        elif args.command == "kernel":
            experiments.run_kernel(scenario, args.q, args.q_prime, args.t,
                                   args.out, **kwargs)
        elif args.command == "compare":
            outcome = experiments.run_compare(scenario, args.out, **kwargs)
            if not outcome.passed:
                print("compare: agreement thresholds not met", file=sys.stderr)
                return EXIT_PHYSICS
        elif args.command == "heisenberg":
            experiments.run_heisenberg(scenario, args.out, **kwargs)
    except (ConfigError, ExpressionError) as exc:
        print(f"qfho: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CausticSingular as exc:
        print(f"qfho: caustic: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except PhysicsDomainError as exc:
        print(f"qfho: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except QfhoError as exc:
        print(f"qfho: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qfho: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

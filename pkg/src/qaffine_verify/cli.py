"""Command line entry point: ``qav verify ...``."""
from __future__ import annotations

import argparse
import sys

from .report import EXIT_USAGE, emit_report
from .suites import SIGN_CHOICES, SUITES, ConfigError, SuiteConfig, default_weight, run_suite


def build_parser(weight_default: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qav", description="Exact verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--weight", type=int, default=weight_default,
                   help=f"weight cutoff W (default {weight_default}; env QAV_DEFAULT_WEIGHT)")
    v.add_argument("--zmin", type=int, default=-5)
    v.add_argument("--zmax", type=int, default=5)
    v.add_argument("--wmin", type=int)
    v.add_argument("--wmax", type=int)
    v.add_argument("--sign", choices=tuple(SIGN_CHOICES), default="both")
    v.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--spot-check", type=int, metavar="SEED",
                   help="compare coefficients at random rational values of the units")
    v.add_argument("--figures", metavar="DIR", help="also write a summary figure into DIR")
    return parser


def main(argv=None) -> int:
    try:
        weight_default = default_weight()
    except ConfigError as exc:
        print(f"qav: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(weight_default)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        cfg = SuiteConfig(suite=args.suite, weight=args.weight, zmin=args.zmin, zmax=args.zmax,
                          wmin=args.wmin, wmax=args.wmax, sign=args.sign, fmt=args.fmt,
                          spot_check=args.spot_check)
    except ConfigError as exc:
        print(f"qav: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(cfg)
    data = emit_report(report, cfg.fmt)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if args.figures:
        from .plotting import summary_figure
        path = summary_figure(report, args.figures)
        print(f"figure written to {path}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

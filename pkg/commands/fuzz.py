"""
Property fuzzing
================
Run one suite (or a group of suites) of generated cases and report the
pass/fail summary with the first counterexample of each suite.
"""

import argparse
import logging
from dataclasses import fields

import pandas as pd

from calculus.properties import GROUPS, SUITES, FuzzConfig, run_suite, suite_names, summarize
from options import EXIT_NEGATIVE, EXIT_OK, add_common, add_fuel, handles_errors
from utils.reporting import REPORT_FORMATS, format_summary, write_table

logger = logging.getLogger(__name__)

DEFAULTS = {f.name: f.default for f in fields(FuzzConfig)}


def register(subparsers):
    parser = subparsers.add_parser("fuzz", help="check a property suite on generated cases")
    parser.add_argument("--suite", required=True, choices=list(SUITES) + list(GROUPS))
    parser.add_argument("--cases", type=int, default=DEFAULTS["cases"])
    parser.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    parser.add_argument("--max-size", type=int, default=DEFAULTS["max_size"])
    parser.add_argument("--max-level", type=int, default=DEFAULTS["max_level"])
    parser.add_argument("--frontier", type=int, default=DEFAULTS["frontier"])
    parser.add_argument("--workers", type=int, default=DEFAULTS["workers"])
    parser.add_argument("--logical-mode", action="store_true")
    parser.add_argument("--report", metavar="OUT", help="write every case outcome to this file")
    parser.add_argument("--format", choices=REPORT_FORMATS, default="csv")
    add_fuel(parser, default=DEFAULTS["fuel"])
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


def config_from_args(args: argparse.Namespace) -> FuzzConfig:
    return FuzzConfig(
        cases=args.cases,
        seed=args.seed,
        max_size=args.max_size,
        max_level=args.max_level,
        fuel=args.fuel,
        frontier=args.frontier,
        workers=args.workers,
        logical_mode=args.logical_mode,
    )


@handles_errors
def run(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    frames = [run_suite(name, cfg) for name in suite_names(args.suite)]
    results = pd.concat(frames, ignore_index=True)
    summary = summarize(results)
    print(format_summary(summary))
    if args.report:
        write_table(results, args.report, args.format)
    failures = int(summary["failures"].sum() + summary["inconclusive"].sum())
    if failures:
        logger.warning("%d cases failed or were inconclusive", failures)
        return EXIT_NEGATIVE
    return EXIT_OK

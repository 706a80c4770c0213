"""
Ordering report for a single rewrite step
"""

import argparse

from calculus.ordering import DEFAULT_ETA_BOUND, check_step_decrease
from options import EXIT_NEGATIVE, EXIT_OK, add_common, handles_errors, parse_expression_arg


def register(subparsers):
    parser = subparsers.add_parser("check-decrease", help="compare the measures of BEFORE and AFTER")
    parser.add_argument("before")
    parser.add_argument("after")
    parser.add_argument("--eta-bound", type=int, default=DEFAULT_ETA_BOUND)
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    before = parse_expression_arg(args.before, "susp", args.legacy_dummies)
    after = parse_expression_arg(args.after, "susp", args.legacy_dummies)
    report = check_step_decrease(before, after, args.eta_bound)
    for name, holds in report.as_dict().items():
        print(f"{name}: {'yes' if holds else 'no'}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE

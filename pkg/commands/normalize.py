"""
Normalization
=============
Rewrite an expression of any supported calculus to normal form and optionally
record the trace as JSON.
"""

import argparse
import json
import logging
import sys

from calculus import dispatch
from calculus.syntax import to_text, trace_to_json
from options import (
    EXIT_NEGATIVE,
    EXIT_OK,
    add_calculus,
    add_common,
    add_fuel,
    add_rules,
    add_strategy,
    handles_errors,
    parse_expression_arg,
)

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("normalize", help="rewrite an expression to normal form")
    parser.add_argument("expression", help="expression text, a file holding it, or - for stdin")
    add_calculus(parser)
    add_rules(parser)
    add_strategy(parser)
    add_fuel(parser)
    parser.add_argument("--trace", metavar="OUT_JSON", help="write the full trace to this file")
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    x = parse_expression_arg(args.expression, args.calc, args.legacy_dummies)
    preset = dispatch.get_preset(args.calc, args.rules, args.logical_mode)
    trace = dispatch.normalize(x, preset, args.strategy, args.fuel)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as handle:
            json.dump(trace_to_json(trace), handle, indent=2)
        logger.info("trace of %d steps written to %s", trace.step_count, args.trace)
    print(to_text(trace.result))
    if not trace.normalized:
        print(f"fuel exhausted after {trace.step_count} steps", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK

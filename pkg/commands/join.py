"""
Joinability of two suspension expressions
"""

import argparse

from calculus.rewrite import DEFAULT_FRONTIER, joinable, preset
from calculus.syntax import to_text
from options import EXIT_NEGATIVE, EXIT_OK, add_common, add_fuel, handles_errors, parse_expression_arg


def register(subparsers):
    parser = subparsers.add_parser("join", help="decide whether A and B rewrite to a common expression")
    parser.add_argument("a")
    parser.add_argument("b")
    parser.add_argument("--rules", default="rm", help="rm, r, rmbeta, rbeta or rbeta-derived")
    parser.add_argument("--logical-mode", action="store_true")
    parser.add_argument("--frontier", type=int, default=DEFAULT_FRONTIER, help="node cap of the fallback search")
    add_fuel(parser)
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    a = parse_expression_arg(args.a, "susp", args.legacy_dummies)
    b = parse_expression_arg(args.b, "susp", args.legacy_dummies)
    verdict = joinable(a, b, preset(args.rules, args.logical_mode), args.fuel, args.frontier)
    if verdict:
        print(f"joinable at {to_text(verdict.meet)}")
        return EXIT_OK
    print("inconclusive: search frontier reached" if verdict.inconclusive else "not joinable")
    return EXIT_NEGATIVE

"""
One positioned rewrite step
"""

import argparse

from calculus import dispatch
from calculus.syntax import to_text
from calculus.tree import parse_path
from options import EXIT_OK, add_calculus, add_common, handles_errors, parse_expression_arg


def register(subparsers):
    parser = subparsers.add_parser("step", help="apply one rule at one position")
    parser.add_argument("expression", help="expression text, a file holding it, or - for stdin")
    parser.add_argument("--at", default="root", help="path such as 0.1.0 (root by default)")
    parser.add_argument("--rule", required=True, help="rule name, e.g. r5, m6, beta_s, varcons")
    add_calculus(parser)
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    x = parse_expression_arg(args.expression, args.calc, args.legacy_dummies)
    print(to_text(dispatch.step_at(x, args.calc, parse_path(args.at), args.rule)))
    return EXIT_OK

"""
Well-formedness check
"""

import argparse

from calculus.terms import check_well_formed
from calculus.tree import format_path
from options import EXIT_NEGATIVE, EXIT_OK, add_common, handles_errors, parse_expression_arg


def register(subparsers):
    parser = subparsers.add_parser("check", help="check that a suspension expression is well-formed")
    parser.add_argument("expression", help="expression text, a file holding it, or - for stdin")
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    x = parse_expression_arg(args.expression, "susp", args.legacy_dummies)
    verdict = check_well_formed(x)
    if verdict.ok:
        print("well-formed")
        return EXIT_OK
    print("ill-formed")
    for violation in verdict.violations:
        print(f"  at {format_path(violation.path)}: {violation.clause.value} ({violation.detail})")
    return EXIT_NEGATIVE

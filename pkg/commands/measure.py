"""
Termination measures of a suspension expression
"""

import argparse

from calculus.ordering import DEFAULT_ETA_BOUND, measure_table
from options import EXIT_OK, add_common, handles_errors, parse_expression_arg


def register(subparsers):
    parser = subparsers.add_parser("measure", help="print mu, eta_0..eta_k and the essence term")
    parser.add_argument("expression", help="expression text, a file holding it, or - for stdin")
    parser.add_argument("--eta-bound", type=int, default=DEFAULT_ETA_BOUND, help="largest i for eta_i")
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    x = parse_expression_arg(args.expression, "susp", args.legacy_dummies)
    table = measure_table(x, args.eta_bound)
    print(f"mu: {table['mu']}")
    for i, value in enumerate(table["eta"]):
        print(f"eta_{i}: {value}")
    print(f"essence: {table['essence']}")
    return EXIT_OK

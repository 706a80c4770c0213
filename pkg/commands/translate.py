"""
Translations between the suspension calculus and its neighbours
"""

import argparse

from calculus.bridges import EnvTriple
from calculus.bridges.ls import ls_to_susp
from calculus.bridges.lsig import env_to_lsig, lsig_translate, susp_to_lsig
from calculus.bridges.lu import lu_translate
from calculus.errors import ConfigurationError
from calculus.syntax import to_text
from calculus.terms import env_lev, is_env
from options import EXIT_OK, add_common, handles_errors, parse_expression_arg

DIRECTIONS = {
    ("lu", "susp"): lambda x, level: lu_translate(x),
    ("ls", "susp"): lambda x, level: ls_to_susp(x),
    ("susp", "lsig"): lambda x, level: _susp_to_lsig(x, level),
    ("lsig", "susp"): lambda x, level: lsig_translate(x),
}


def _susp_to_lsig(x, level):
    if is_env(x):
        return env_to_lsig(x, env_lev(x) if level is None else level)
    return susp_to_lsig(x)


def show(result) -> str:
    if isinstance(result, EnvTriple):
        return f"({result.ol}, {result.nl}, {to_text(result.env)})"
    return to_text(result)


def register(subparsers):
    parser = subparsers.add_parser("translate", help="translate between calculi")
    parser.add_argument("expression", help="expression text, a file holding it, or - for stdin")
    parser.add_argument("--from", dest="source", required=True, choices=["lu", "ls", "susp", "lsig"])
    parser.add_argument("--to", dest="target", required=True, choices=["susp", "lsig"])
    parser.add_argument("--level", type=int, default=None, help="embedding level for an environment (default: its lev)")
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    try:
        translate = DIRECTIONS[(args.source, args.target)]
    except KeyError:
        supported = ", ".join(f"{a}->{b}" for a, b in DIRECTIONS)
        raise ConfigurationError(f"no translation from {args.source} to {args.target}; supported: {supported}") from None
    x = parse_expression_arg(args.expression, args.source, args.legacy_dummies)
    print(show(translate(x, args.level)))
    return EXIT_OK

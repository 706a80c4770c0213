"""
Trace replay: re-execute a recorded trace and confirm every intermediate expression.
"""

import argparse
import json
import logging

from calculus import dispatch
from calculus.errors import RewriteError
from calculus.syntax import trace_from_json
from options import EXIT_NEGATIVE, EXIT_OK, add_common, handles_errors

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("replay", help="re-execute a trace file written by normalize --trace")
    parser.add_argument("trace", help="trace JSON file")
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    with open(args.trace, encoding="utf-8") as handle:
        data = json.load(handle)
    trace = trace_from_json(data)
    try:
        dispatch.replay(trace, data.get("calculus", "susp"))
    except RewriteError as e:
        print(f"replay failed: {e}")
        return EXIT_NEGATIVE
    print(f"replayed {trace.step_count} steps")
    return EXIT_OK

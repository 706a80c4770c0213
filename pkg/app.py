"""
Suspension Calculus Workbench
=============================
Command-line entry point: parse, check, rewrite, translate, measure, fuzz and
benchmark expressions of the suspension calculus and its neighbouring calculi.
"""

import argparse
import logging
import sys

from commands import COMMANDS
from options import EXIT_USAGE, configure_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suspcalc", description=__doc__.strip().splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help
        return EXIT_USAGE if e.code else 0
    if not getattr(args, "run", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    configure_logging(args.verbose)
    logger.debug("command %s", args.command)
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())

"""
Shared command-line options, logging setup and expression reading for every command.
"""

import argparse
import functools
import logging
import sys
from pathlib import Path

from calculus.engine import Strategy
from calculus.errors import SuspCalcError
from calculus.syntax import Calculus, parse

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(verbosity: int = 0):
    """WARNING by default, INFO with -v, DEBUG with -vv; always on stderr."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


# --- ARGUMENTS ---
def add_common(parser: argparse.ArgumentParser):
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for every step")
    parser.add_argument("--legacy-dummies", action="store_true", help="read @n as the item (#1, n+1)")


def add_calculus(parser: argparse.ArgumentParser, flag: str = "--calc", default: str = "susp"):
    parser.add_argument(flag, dest=flag.lstrip("-").replace("-", "_"), choices=[c.value for c in Calculus], default=default)


def add_fuel(parser: argparse.ArgumentParser, default=None):
    parser.add_argument("--fuel", type=int, default=default, help="maximum number of rewrite steps")


def add_rules(parser: argparse.ArgumentParser):
    parser.add_argument("--rules", default=None, help="rule set preset (rm, r, rmbeta, rbeta, rbeta-derived, beta, sigma, ...)")
    parser.add_argument("--logical-mode", action="store_true", help="add r7: meta variables are closed")


def add_strategy(parser: argparse.ArgumentParser):
    parser.add_argument("--strategy", type=strategy_arg, default=Strategy.parse("lo"), help="lo, li, head or rand:SEED")


def strategy_arg(text: str) -> Strategy:
    try:
        return Strategy.parse(text)
    except SuspCalcError as e:
        raise argparse.ArgumentTypeError(str(e))


# --- EXPRESSIONS ---
def read_expression_arg(value: str) -> str:
    """`-` reads stdin, an existing file is read whole, anything else is the expression itself."""
    if value == "-":
        return sys.stdin.read()
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8")
    except OSError:
        pass
    return value


def parse_expression_arg(value: str, calculus="susp", legacy_dummies: bool = False):
    return parse(read_expression_arg(value), calculus, legacy_dummies)


# --- ERRORS ---
def report_error(e: Exception) -> int:
    logger.error("%s: %s", type(e).__name__, e)
    print(f"Error: {e}", file=sys.stderr)
    return EXIT_USAGE


def handles_errors(run):
    """Map library errors raised by a command to the usage exit code."""

    @functools.wraps(run)
    def wrapper(args):
        try:
            return run(args)
        except (SuspCalcError, OSError, ValueError, KeyError) as e:
            return report_error(e)

    return wrapper

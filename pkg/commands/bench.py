"""
Step-count benchmarks
"""

import argparse

from calculus.generator import CORPORA
from calculus.rewrite import DEFAULT_RM_FUEL
from options import EXIT_OK, add_common, add_fuel, handles_errors
from utils.benchmarks import mean_steps, run_bench
from utils.reporting import REPORT_FORMATS, convert_df, format_summary, steps_chart, write_chart, write_table


def register(subparsers):
    parser = subparsers.add_parser("bench", help="count normalization steps per calculus and strategy")
    parser.add_argument("--corpus", required=True, choices=list(CORPORA))
    parser.add_argument("--report", choices=REPORT_FORMATS, default="csv")
    parser.add_argument("--out", help="write the table here instead of stdout (required for xlsx)")
    parser.add_argument("--chart", help="bar chart of mean steps (.html, or .png/.svg through kaleido)")
    add_fuel(parser, default=DEFAULT_RM_FUEL)
    add_common(parser)
    parser.set_defaults(run=run)
    return parser


@handles_errors
def run(args: argparse.Namespace) -> int:
    if args.report == "xlsx" and not args.out:
        raise ValueError("--report xlsx needs --out")
    results = run_bench(args.corpus, args.fuel)
    if args.out:
        write_table(results, args.out, args.report)
        print(format_summary(mean_steps(results)))
    else:
        print(convert_df(results), end="")
    if args.chart:
        write_chart(steps_chart(mean_steps(results)), args.chart)
    return EXIT_OK

"""Command modules; each exposes register(subparsers) and run(args) -> exit code."""

from commands import bench, check, check_decrease, fuzz, join, measure, normalize, replay, step, translate

COMMANDS = (check, normalize, step, replay, translate, measure, check_decrease, join, fuzz, bench)

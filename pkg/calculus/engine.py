"""
Generic rewriting engine shared by every calculus in the package.

A calculus supplies a rule-application function `apply_rule(rule, node)`
returning the contractum or None. The engine enumerates redexes in preorder
(rule order breaks ties), selects one according to a strategy, and records
the reduction in a `Trace`.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, List, Optional, Sequence

import networkx as nx
import numpy as np

from calculus.errors import ConfigurationError, RewriteError
from calculus.tree import ROOT, Node, Path, replace_at, subexpr_at, walk

logger = logging.getLogger(__name__)

ApplyRule = Callable[[object, Node], Optional[Node]]
HeadPaths = Callable[[Node], Iterable[Path]]


class Status(str, Enum):
    NORMAL_FORM = "normal_form"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass(frozen=True)
class Redex:
    at: Path
    rule: object
    result: Node


@dataclass(frozen=True)
class TraceStep:
    rule: object
    at: Path
    result: Node


@dataclass
class Trace:
    initial: Node
    steps: List[TraceStep] = field(default_factory=list)
    status: Status = Status.NORMAL_FORM

    @property
    def result(self) -> Node:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def normalized(self) -> bool:
        return self.status is Status.NORMAL_FORM

    def expressions(self) -> List[Node]:
        return [self.initial] + [s.result for s in self.steps]


# --- STRATEGIES ---
class StrategyKind(str, Enum):
    LEFTMOST_OUTERMOST = "lo"
    LEFTMOST_INNERMOST = "li"
    HEAD_FIRST = "head"
    RANDOM_SEEDED = "rand"


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        """Read `lo`, `li`, `head` or `rand:SEED`."""
        name, _, seed = text.strip().partition(":")
        try:
            kind = StrategyKind(name)
        except ValueError:
            raise ConfigurationError(f"unknown strategy {text!r} (use lo, li, head or rand:SEED)") from None
        if kind is StrategyKind.RANDOM_SEEDED:
            if not seed.isdigit():
                raise ConfigurationError("random strategy needs a seed, e.g. rand:7")
            return cls(kind, int(seed))
        if seed:
            raise ConfigurationError(f"strategy {name} takes no seed")
        return cls(kind)

    def __str__(self):
        if self.kind is StrategyKind.RANDOM_SEEDED:
            return f"rand:{self.seed}"
        return self.kind.value


LEFTMOST_OUTERMOST = Strategy(StrategyKind.LEFTMOST_OUTERMOST)
LEFTMOST_INNERMOST = Strategy(StrategyKind.LEFTMOST_INNERMOST)
HEAD_FIRST = Strategy(StrategyKind.HEAD_FIRST)


def random_strategy(seed: int) -> Strategy:
    return Strategy(StrategyKind.RANDOM_SEEDED, seed)


# --- REDEX ENUMERATION ---
def redexes_at(node: Node, path: Path, rules: Sequence, apply_rule: ApplyRule) -> Iterator[Redex]:
    for rule in rules:
        result = apply_rule(rule, node)
        if result is not None:
            yield Redex(path, rule, result)


def iter_redexes(x: Node, rules: Sequence, apply_rule: ApplyRule) -> Iterator[Redex]:
    """All redexes of `x` in preorder, rule order breaking ties."""
    for path, node in walk(x):
        yield from redexes_at(node, path, rules, apply_rule)


def spine_paths(x: Node) -> List[Path]:
    """Default head spine: follow the first child down from the root."""
    paths, path, node = [ROOT], ROOT, x
    while node.children():
        node, path = node.children()[0], path + (0,)
        paths.append(path)
    return paths


def head_redex(x: Node, rules: Sequence, apply_rule: ApplyRule, head_paths: HeadPaths = spine_paths) -> Optional[Redex]:
    for path in head_paths(x):
        redex = next(redexes_at(subexpr_at(x, path), path, rules, apply_rule), None)
        if redex is not None:
            return redex
    return None


def _innermost(found: List[Redex]) -> Redex:
    paths = [r.at for r in found]
    for redex in found:
        depth = len(redex.at)
        if not any(len(p) > depth and p[:depth] == redex.at for p in paths):
            return redex
    return found[0]


def select_redex(
    x: Node,
    rules: Sequence,
    apply_rule: ApplyRule,
    strategy: Strategy,
    rng: Optional[np.random.Generator] = None,
    head_paths: HeadPaths = spine_paths,
) -> Optional[Redex]:
    kind = strategy.kind
    if kind is StrategyKind.LEFTMOST_OUTERMOST:
        return next(iter_redexes(x, rules, apply_rule), None)
    if kind is StrategyKind.HEAD_FIRST:
        redex = head_redex(x, rules, apply_rule, head_paths)
        if redex is not None:
            return redex
        return next(iter_redexes(x, rules, apply_rule), None)
    found = list(iter_redexes(x, rules, apply_rule))
    if not found:
        return None
    if kind is StrategyKind.LEFTMOST_INNERMOST:
        return _innermost(found)
    return found[int(rng.integers(len(found)))]


def contract(x: Node, redex: Redex) -> Node:
    return replace_at(x, redex.at, redex.result)


def rewrite(
    x: Node,
    rules: Sequence,
    apply_rule: ApplyRule,
    strategy: Strategy,
    fuel: int,
    head_paths: HeadPaths = spine_paths,
    head_only: bool = False,
) -> Trace:
    """Rewrite until no redex remains or `fuel` steps have been taken.

    With `head_only` only positions listed by `head_paths` are considered.
    """
    rng = np.random.default_rng(strategy.seed) if strategy.kind is StrategyKind.RANDOM_SEEDED else None
    trace = Trace(x)
    current = x
    while True:
        if head_only:
            redex = head_redex(current, rules, apply_rule, head_paths)
        else:
            redex = select_redex(current, rules, apply_rule, strategy, rng, head_paths)
        if redex is None:
            trace.status = Status.NORMAL_FORM
            return trace
        if len(trace.steps) >= fuel:
            trace.status = Status.FUEL_EXHAUSTED
            logger.info("fuel of %d steps exhausted under strategy %s", fuel, strategy)
            return trace
        current = contract(current, redex)
        trace.steps.append(TraceStep(redex.rule, redex.at, current))
        logger.debug("step %d: %s at %s", len(trace.steps), getattr(redex.rule, "value", redex.rule), redex.at)


def step_at(x: Node, at: Path, rule, apply_rule: ApplyRule) -> Node:
    """Apply `rule` at the subexpression addressed by `at`."""
    result = apply_rule(rule, subexpr_at(x, at))
    if result is None:
        name = getattr(rule, "value", rule)
        raise RewriteError(f"rule {name} does not apply at {list(at)}")
    return replace_at(x, at, result)


def replay(trace: Trace, apply_rule: ApplyRule) -> List[Node]:
    """Re-execute every recorded step; raise if an intermediate differs."""
    current = trace.initial
    produced = [current]
    for number, recorded in enumerate(trace.steps, start=1):
        current = step_at(current, recorded.at, recorded.rule, apply_rule)
        if current != recorded.result:
            raise RewriteError(f"replay diverges at step {number}")
        produced.append(current)
    return produced


# --- REDUCTION GRAPHS ---
def reduction_graph(x: Node, rules: Sequence, apply_rule: ApplyRule, max_nodes: int) -> nx.DiGraph:
    """Breadth-first reduction graph of `x`, capped at `max_nodes` expressions.

    The graph attribute `complete` is True when every reachable expression was expanded.
    """
    graph = nx.DiGraph(complete=True)
    graph.add_node(x)
    frontier = [x]
    while frontier:
        next_frontier = []
        for node in frontier:
            for redex in iter_redexes(node, rules, apply_rule):
                successor = contract(node, redex)
                if successor not in graph:
                    if graph.number_of_nodes() >= max_nodes:
                        graph.graph["complete"] = False
                        continue
                    graph.add_node(successor)
                    next_frontier.append(successor)
                graph.add_edge(node, successor, rule=getattr(redex.rule, "value", redex.rule), at=redex.at)
        frontier = next_frontier
    return graph

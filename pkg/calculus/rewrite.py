"""
Rewriting in the suspension calculus
====================================

Reading rules r1-r7, merging rules m1-m6, beta_s, the derived rules r3'
and lookup, rule-set presets, normalization, head normalization and
joinability.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from calculus import engine
from calculus.engine import Redex, Status, Strategy, Trace, TraceStep
from calculus.errors import ConfigurationError
from calculus.terms import (
    NIL,
    Abs,
    App,
    Cons,
    Const,
    EnvItem,
    Index,
    Merge,
    MetaVar,
    Nil,
    SuspExpr,
    SuspTerm,
    Susp,
    checked_add,
    checked_sub,
    env_item_at,
    has_metavars,
    is_simple,
    monus,
)
from calculus.tree import ROOT, Path, subexpr_at, walk

logger = logging.getLogger(__name__)

# --- CONSTANTS ---
DEFAULT_RM_FUEL = 100_000
DEFAULT_FRONTIER = 10_000


class RuleId(str, Enum):
    BETA_S = "beta_s"
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"
    R4 = "r4"
    R5 = "r5"
    R6 = "r6"
    R7 = "r7"
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"
    M4 = "m4"
    M5 = "m5"
    M6 = "m6"
    R3_PRIME = "r3_prime"
    LOOKUP_DERIVED = "lookup"


RULE_ORDER: Dict[RuleId, int] = {rule: position for position, rule in enumerate(RuleId)}
READING_RULES = frozenset({RuleId.R1, RuleId.R2, RuleId.R3, RuleId.R4, RuleId.R5, RuleId.R6})
MERGING_RULES = frozenset({RuleId.M1, RuleId.M2, RuleId.M3, RuleId.M4, RuleId.M5, RuleId.M6})


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: FrozenSet[RuleId]

    @property
    def ordered(self) -> Tuple[RuleId, ...]:
        return tuple(sorted(self.rules, key=RULE_ORDER.__getitem__))

    @property
    def has_beta(self) -> bool:
        return RuleId.BETA_S in self.rules

    @property
    def logical_mode(self) -> bool:
        return RuleId.R7 in self.rules

    def __contains__(self, rule) -> bool:
        return rule in self.rules

    def logical(self) -> "RuleSet":
        """The logical-mode variant, which adds r7."""
        if self.logical_mode:
            return self
        return RuleSet(f"{self.name}+r7", self.rules | {RuleId.R7})

    def including(self, *extra: RuleId) -> "RuleSet":
        suffix = "+".join(r.value for r in extra)
        return RuleSet(f"{self.name}+{suffix}", self.rules | frozenset(extra))


RM = RuleSet("rm", READING_RULES | MERGING_RULES)
R = RuleSet("r", READING_RULES)
RMBETA = RuleSet("rmbeta", RM.rules | {RuleId.BETA_S})
RBETA = RuleSet("rbeta", R.rules | {RuleId.BETA_S})
# one-step target relation for the lambda-s and lambda-upsilon correspondences
RBETA_DERIVED = RBETA.including(RuleId.R3_PRIME, RuleId.LOOKUP_DERIVED)

PRESETS: Dict[str, RuleSet] = {
    "rm": RM,
    "r": R,
    "rmbeta": RMBETA,
    "rbeta": RBETA,
    "rbeta-derived": RBETA_DERIVED,
}


def preset(name: str, logical_mode: bool = False) -> RuleSet:
    try:
        rules = PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown rule set {name!r}; choose one of {', '.join(PRESETS)}") from None
    return rules.logical() if logical_mode else rules


# --- RULES ---
def _beta_s(x):
    if isinstance(x, App) and isinstance(x.fn, Abs):
        return Susp(x.fn.body, 1, 0, Cons(EnvItem(x.arg, 0), NIL))
    return None


def _r1(x):
    if isinstance(x, Susp) and isinstance(x.term, Const):
        return x.term
    return None


def _r7(x):
    if isinstance(x, Susp) and isinstance(x.term, MetaVar):
        return x.term
    return None


def _r2(x):
    if isinstance(x, Susp) and isinstance(x.term, Index) and x.ol == 0 and isinstance(x.env, Nil):
        return Index(checked_add(x.term.i, x.nl))
    return None


def _r3(x):
    if isinstance(x, Susp) and x.term == Index(1) and isinstance(x.env, Cons):
        item = x.env.item
        return Susp(item.term, 0, checked_sub(x.nl, item.index), NIL)
    return None


def _r4(x):
    if isinstance(x, Susp) and isinstance(x.term, Index) and x.term.i > 1 and isinstance(x.env, Cons):
        return Susp(Index(x.term.i - 1), checked_sub(x.ol, 1), x.nl, x.env.rest)
    return None


def _r5(x):
    if isinstance(x, Susp) and isinstance(x.term, App):
        return App(Susp(x.term.fn, x.ol, x.nl, x.env), Susp(x.term.arg, x.ol, x.nl, x.env))
    return None


def _r6(x):
    if isinstance(x, Susp) and isinstance(x.term, Abs):
        nl = checked_add(x.nl, 1)
        return Abs(Susp(x.term.body, checked_add(x.ol, 1), nl, Cons(EnvItem(Index(1), nl), x.env)))
    return None


def _m1(x):
    if isinstance(x, Susp) and isinstance(x.term, Susp):
        inner = x.term
        return Susp(
            inner.term,
            checked_add(inner.ol, monus(x.ol, inner.nl)),
            checked_add(x.nl, monus(inner.nl, x.ol)),
            Merge(inner.env, inner.nl, x.ol, x.env),
        )
    return None


def _m2(x):
    if isinstance(x, Merge) and x.ol2 == 0 and isinstance(x.e2, Nil):
        return x.e1
    return None


def _m3(x):
    if isinstance(x, Merge) and isinstance(x.e1, Nil) and x.nl1 == 0:
        return x.e2
    return None


def _m4(x):
    if isinstance(x, Merge) and isinstance(x.e1, Nil) and x.nl1 >= 1 and isinstance(x.e2, Cons):
        return Merge(NIL, x.nl1 - 1, checked_sub(x.ol2, 1), x.e2.rest)
    return None


def _m5(x):
    if isinstance(x, Merge) and isinstance(x.e1, Cons) and isinstance(x.e2, Cons) and x.nl1 > x.e1.item.index:
        return Merge(x.e1, x.nl1 - 1, checked_sub(x.ol2, 1), x.e2.rest)
    return None


def _m6(x):
    if isinstance(x, Merge) and isinstance(x.e1, Cons) and isinstance(x.e2, Cons) and x.nl1 == x.e1.item.index:
        n, l = x.nl1, x.e2.item.index
        moved = EnvItem(Susp(x.e1.item.term, x.ol2, l, x.e2), checked_add(l, monus(n, x.ol2)))
        return Cons(moved, Merge(x.e1.rest, n, x.ol2, x.e2))
    return None


def _r3_prime(x):
    if isinstance(x, Susp) and x.term == Index(1) and x.nl == 0 and isinstance(x.env, Cons) and x.env.item.index == 0:
        return x.env.item.term
    return None


def _lookup(x):
    if not (isinstance(x, Susp) and isinstance(x.term, Index) and is_simple(x.env)):
        return None
    n = x.term.i
    if n > x.ol:
        return Index(checked_add(checked_sub(n, x.ol), x.nl))
    try:
        item = env_item_at(x.env, n - 1)
    except IndexError:
        return None
    if item.term == Index(1) and item.index >= 1:
        return Index(checked_sub(x.nl, item.index) + 1)
    return Susp(item.term, 0, checked_sub(x.nl, item.index), NIL)


_RULES = {
    RuleId.BETA_S: _beta_s,
    RuleId.R1: _r1,
    RuleId.R2: _r2,
    RuleId.R3: _r3,
    RuleId.R4: _r4,
    RuleId.R5: _r5,
    RuleId.R6: _r6,
    RuleId.R7: _r7,
    RuleId.M1: _m1,
    RuleId.M2: _m2,
    RuleId.M3: _m3,
    RuleId.M4: _m4,
    RuleId.M5: _m5,
    RuleId.M6: _m6,
    RuleId.R3_PRIME: _r3_prime,
    RuleId.LOOKUP_DERIVED: _lookup,
}


def rule_apply(rule: RuleId, x: SuspExpr) -> Optional[SuspExpr]:
    """Contract `x` at its root with `rule`, or return None when it does not match."""
    return _RULES[RuleId(rule)](x)


# --- HEAD SPINE ---
def head_paths(x: SuspExpr) -> List[Path]:
    """Positions whose rewriting can change the head of `x`, in preorder."""
    paths = []
    stack = [(ROOT, x)]
    while stack:
        path, node = stack.pop()
        paths.append(path)
        if isinstance(node, (Abs, App)):
            stack.append((path + (0,), node.children()[0]))
        elif isinstance(node, Susp):
            stack.append((path + (1,), node.env))
        elif isinstance(node, Merge):
            stack.append((path + (1,), node.e2))
            stack.append((path + (0,), node.e1))
    return paths


def spine_arguments(t: SuspTerm) -> List[Path]:
    """Paths of the arguments hanging off the head spine of `t`."""
    found, path, node = [], ROOT, t
    while isinstance(node, (Abs, App)):
        if isinstance(node, App):
            found.append(path + (1,))
        node, path = node.children()[0], path + (0,)
    return found


# --- OPERATIONS ---
def redexes(x: SuspExpr, rules: RuleSet) -> List[Tuple[Path, RuleId]]:
    return [(r.at, r.rule) for r in engine.iter_redexes(x, rules.ordered, rule_apply)]


def successors(x: SuspExpr, rules: RuleSet) -> List[Redex]:
    return list(engine.iter_redexes(x, rules.ordered, rule_apply))


def step_at(x: SuspExpr, at: Path, rule: RuleId) -> SuspExpr:
    return engine.step_at(x, at, RuleId(rule), rule_apply)


def validate_rules(rules: RuleSet, x: SuspExpr) -> None:
    if RuleId.R3_PRIME in rules and not rules.logical_mode and has_metavars(x):
        raise ConfigurationError("r3' is not admissible with graftable meta variables in the input")


def resolve_fuel(rules: RuleSet, fuel: Optional[int]) -> int:
    if fuel is None:
        if rules.has_beta:
            raise ConfigurationError(f"rule set {rules.name} contains beta_s and needs an explicit fuel")
        return DEFAULT_RM_FUEL
    if fuel < 0:
        raise ConfigurationError("fuel must be a natural number")
    return fuel


def normalize(
    x: SuspExpr,
    rules: RuleSet = RM,
    strategy: Strategy = engine.LEFTMOST_OUTERMOST,
    fuel: Optional[int] = None,
) -> Trace:
    """Rewrite `x` with `rules` under `strategy` until normal or out of fuel."""
    validate_rules(rules, x)
    return engine.rewrite(x, rules.ordered, rule_apply, strategy, resolve_fuel(rules, fuel), head_paths)


def normal_form(x: SuspExpr, rules: RuleSet = RM, fuel: Optional[int] = None) -> SuspExpr:
    return normalize(x, rules, engine.LEFTMOST_OUTERMOST, fuel).result


_LOOKUP_RULES = (RuleId.R2, RuleId.R3, RuleId.R4)


def head_normalize(t: SuspTerm, fuel: int, rules: RuleSet = RMBETA) -> Trace:
    """Expose the head of `t`, leaving argument suspensions pending.

    The head spine is rewritten first; afterwards index lookups are resolved
    at the root of each spine argument.
    """
    trace = engine.rewrite(t, rules.ordered, rule_apply, engine.HEAD_FIRST, fuel, head_paths, head_only=True)
    if trace.status is Status.FUEL_EXHAUSTED:
        return trace
    current = trace.result
    for arg in spine_arguments(current):
        while True:
            redex = next(engine.redexes_at(subexpr_at(current, arg), arg, _LOOKUP_RULES, rule_apply), None)
            if redex is None:
                break
            if len(trace.steps) >= fuel:
                trace.status = Status.FUEL_EXHAUSTED
                return trace
            current = engine.contract(current, redex)
            trace.steps.append(TraceStep(redex.rule, redex.at, current))
    return trace


def replay_trace(trace: Trace) -> List[SuspExpr]:
    return engine.replay(trace, rule_apply)


def reduction_graph(x: SuspExpr, rules: RuleSet, max_nodes: int = DEFAULT_FRONTIER) -> nx.DiGraph:
    return engine.reduction_graph(x, rules.ordered, rule_apply, max_nodes)


# --- JOINABILITY ---
@dataclass(frozen=True)
class JoinResult:
    joinable: bool
    inconclusive: bool = False
    meet: Optional[SuspExpr] = None

    def __bool__(self):
        return self.joinable


def _normal_forms_decide(rules: RuleSet) -> bool:
    # terminating and confluent: distinct normal forms settle the question
    return not rules.has_beta and rules.rules >= RM.rules and not rules.rules & {RuleId.R3_PRIME, RuleId.LOOKUP_DERIVED}


def joinable(
    a: SuspExpr,
    b: SuspExpr,
    rules: RuleSet = RM,
    fuel: Optional[int] = None,
    frontier: int = DEFAULT_FRONTIER,
) -> JoinResult:
    """Decide whether `a` and `b` rewrite to a common expression."""
    if a == b:
        return JoinResult(True, meet=a)
    validate_rules(rules, a)
    validate_rules(rules, b)
    fuel = resolve_fuel(rules, fuel)
    left = normalize(a, rules, engine.LEFTMOST_OUTERMOST, fuel)
    right = normalize(b, rules, engine.LEFTMOST_OUTERMOST, fuel)
    if left.normalized and right.normalized:
        if left.result == right.result:
            return JoinResult(True, meet=left.result)
        if _normal_forms_decide(rules):
            return JoinResult(False)
    graph_a = reduction_graph(a, rules, frontier)
    graph_b = reduction_graph(b, rules, frontier)
    common = set(graph_a.nodes) & set(graph_b.nodes)
    if common:
        return JoinResult(True, meet=min(common, key=lambda x: sum(1 for _ in walk(x))))
    complete = graph_a.graph["complete"] and graph_b.graph["complete"]
    if not complete:
        logger.info("joinability search truncated at %d expressions", frontier)
    return JoinResult(False, inconclusive=not complete)

"""
The lambda-s calculus, its lambda-s_e extension, and the translation into
suspensions.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, List, Optional, Tuple, Union

from calculus import engine
from calculus.engine import Strategy, Trace
from calculus.errors import BridgeError
from calculus.terms import NIL, Abs, App, Index, Susp, SuspTerm, env_of
from calculus.tree import Node, Path, walk


# --- SYNTAX ---
@dataclass(frozen=True)
class LsVar(Node):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BridgeError("lambda-s indices start at 1")


@dataclass(frozen=True)
class LsApp(Node):
    fn: "LsTerm"
    arg: "LsTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("fn", "arg")


@dataclass(frozen=True)
class LsAbs(Node):
    body: "LsTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body",)


@dataclass(frozen=True)
class Sigma(Node):
    """body sigma^i arg"""

    i: int
    body: "LsTerm"
    arg: "LsTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body", "arg")

    def __post_init__(self):
        if self.i < 1:
            raise BridgeError("sigma needs i >= 1")


@dataclass(frozen=True)
class Phi(Node):
    """phi^i_k body"""

    k: int
    i: int
    body: "LsTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body",)

    def __post_init__(self):
        if self.k < 0 or self.i < 1:
            raise BridgeError("phi needs k >= 0 and i >= 1")


LsTerm = Union[LsVar, LsApp, LsAbs, Sigma, Phi]


# --- RULES ---
class LsRule(str, Enum):
    SIGMA_GENERATION = "sigma-generation"
    SIGMA_LAMBDA = "sigma-lambda"
    SIGMA_APP = "sigma-app"
    SIGMA_DESTRUCTION = "sigma-destruction"
    PHI_LAMBDA = "phi-lambda"
    PHI_APP = "phi-app"
    PHI_DESTRUCTION = "phi-destruction"
    SIGMA_SIGMA = "sigma-sigma"
    SIGMA_PHI_1 = "sigma-phi-1"
    SIGMA_PHI_2 = "sigma-phi-2"
    PHI_SIGMA = "phi-sigma"
    PHI_PHI_1 = "phi-phi-1"
    PHI_PHI_2 = "phi-phi-2"


LS = tuple(LsRule)[:7]
LS_E = tuple(LsRule)


def _sigma_rules(rule, x: Sigma):
    a, i, b = x.body, x.i, x.arg
    if rule is LsRule.SIGMA_LAMBDA and isinstance(a, LsAbs):
        return LsAbs(Sigma(i + 1, a.body, b))
    if rule is LsRule.SIGMA_APP and isinstance(a, LsApp):
        return LsApp(Sigma(i, a.fn, b), Sigma(i, a.arg, b))
    if rule is LsRule.SIGMA_DESTRUCTION and isinstance(a, LsVar):
        if a.n > i:
            return LsVar(a.n - 1)
        if a.n == i:
            return Phi(0, i, b)
        return a
    if rule is LsRule.SIGMA_SIGMA and isinstance(a, Sigma) and a.i <= i:
        return Sigma(a.i, Sigma(i + 1, a.body, b), Sigma(i - a.i + 1, a.arg, b))
    if isinstance(a, Phi):
        k, inner_i = a.k, a.i
        if rule is LsRule.SIGMA_PHI_1 and k < i < k + inner_i:
            return Phi(k, inner_i - 1, a.body)
        if rule is LsRule.SIGMA_PHI_2 and k + inner_i <= i:
            return Phi(k, inner_i, Sigma(i - inner_i + 1, a.body, b))
    return None


def _phi_rules(rule, x: Phi):
    k, i, a = x.k, x.i, x.body
    if rule is LsRule.PHI_LAMBDA and isinstance(a, LsAbs):
        return LsAbs(Phi(k + 1, i, a.body))
    if rule is LsRule.PHI_APP and isinstance(a, LsApp):
        return LsApp(Phi(k, i, a.fn), Phi(k, i, a.arg))
    if rule is LsRule.PHI_DESTRUCTION and isinstance(a, LsVar):
        return LsVar(a.n + i - 1) if a.n > k else a
    if rule is LsRule.PHI_SIGMA and isinstance(a, Sigma) and a.i <= k + 1:
        return Sigma(a.i, Phi(k + 1, i, a.body), Phi(k + 1 - a.i, i, a.arg))
    if isinstance(a, Phi):
        l, j = a.k, a.i
        if rule is LsRule.PHI_PHI_1 and l + j <= k:
            return Phi(l, j, Phi(k + 1 - j, i, a.body))
        if rule is LsRule.PHI_PHI_2 and l <= k < l + j:
            return Phi(l, j + i - 1, a.body)
    return None


def ls_rule_apply(rule: LsRule, x: LsTerm) -> Optional[LsTerm]:
    rule = LsRule(rule)
    if rule is LsRule.SIGMA_GENERATION:
        if isinstance(x, LsApp) and isinstance(x.fn, LsAbs):
            return Sigma(1, x.fn.body, x.arg)
        return None
    if isinstance(x, Sigma):
        return _sigma_rules(rule, x)
    if isinstance(x, Phi):
        return _phi_rules(rule, x)
    return None


def ls_rules(include_se: bool = False):
    return LS_E if include_se else LS


def ls_successors(x: LsTerm, include_se: bool = False) -> List[engine.Redex]:
    return list(engine.iter_redexes(x, ls_rules(include_se), ls_rule_apply))


def ls_step(x: LsTerm, include_se: bool = False) -> Optional[LsTerm]:
    redex = next(engine.iter_redexes(x, ls_rules(include_se), ls_rule_apply), None)
    return None if redex is None else engine.contract(x, redex)


def ls_step_at(x: LsTerm, at: Path, rule: LsRule) -> LsTerm:
    return engine.step_at(x, at, LsRule(rule), ls_rule_apply)


def ls_normalize(
    x: LsTerm,
    include_se: bool = False,
    strategy: Strategy = engine.LEFTMOST_OUTERMOST,
    fuel: int = 100_000,
    rules=None,
) -> Trace:
    return engine.rewrite(x, rules or ls_rules(include_se), ls_rule_apply, strategy, fuel)


# --- TRANSLATION ---
def ls_to_susp(t: LsTerm) -> SuspTerm:
    if isinstance(t, LsVar):
        return Index(t.n)
    if isinstance(t, LsApp):
        return App(ls_to_susp(t.fn), ls_to_susp(t.arg))
    if isinstance(t, LsAbs):
        return Abs(ls_to_susp(t.body))
    if isinstance(t, Sigma):
        i = t.i
        items = [(Index(1), level) for level in range(i - 1, 0, -1)] + [(ls_to_susp(t.arg), 0)]
        return Susp(ls_to_susp(t.body), i, i - 1, env_of(items))
    if isinstance(t, Phi):
        k, i = t.k, t.i
        items = [(Index(1), level) for level in range(k + i - 1, i - 1, -1)]
        return Susp(ls_to_susp(t.body), k, k + i - 1, env_of(items, NIL))
    raise BridgeError(f"not a lambda-s term: {type(t).__name__}")


def ls_from_db(t: SuspTerm) -> LsTerm:
    if isinstance(t, Index):
        return LsVar(t.i)
    if isinstance(t, App):
        return LsApp(ls_from_db(t.fn), ls_from_db(t.arg))
    if isinstance(t, Abs):
        return LsAbs(ls_from_db(t.body))
    raise BridgeError(f"lambda-s has no counterpart for {type(t).__name__}")


def ls_to_db(t: LsTerm) -> SuspTerm:
    if any(isinstance(node, (Sigma, Phi)) for _, node in walk(t)):
        raise BridgeError("term still contains a pending substitution")
    return ls_to_susp(t)

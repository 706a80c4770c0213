"""
The lambda-upsilon calculus and its translation into suspensions.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, List, Optional, Tuple, Union

from calculus import engine
from calculus.bridges import EnvTriple
from calculus.engine import Strategy, Trace
from calculus.errors import BridgeError
from calculus.terms import NIL, Abs, App, Cons, EnvItem, Index, SuspTerm, checked_add
from calculus.tree import Node, Path


# --- SYNTAX ---
@dataclass(frozen=True)
class Var(Node):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BridgeError("lambda-upsilon indices start at 1")


@dataclass(frozen=True)
class LuApp(Node):
    fn: "LuTerm"
    arg: "LuTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("fn", "arg")


@dataclass(frozen=True)
class LuAbs(Node):
    body: "LuTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body",)


@dataclass(frozen=True)
class Closure(Node):
    term: "LuTerm"
    subst: "LuSubst"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("term", "subst")


@dataclass(frozen=True)
class Slash(Node):
    term: "LuTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("term",)


@dataclass(frozen=True)
class Lift(Node):
    subst: "LuSubst"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("subst",)


@dataclass(frozen=True)
class Shift(Node):
    pass


SHIFT = Shift()

LuTerm = Union[Var, LuApp, LuAbs, Closure]
LuSubst = Union[Slash, Lift, Shift]
LuExpr = Union[LuTerm, LuSubst]


# --- RULES ---
class LuRule(str, Enum):
    B = "b"
    APP = "app"
    LAMBDA = "lambda"
    FVAR = "fvar"
    RVAR = "rvar"
    VAR_SHIFT = "varshift"
    FVAR_LIFT = "fvarlift"
    RVAR_LIFT = "rvarlift"


UPSILON = tuple(rule for rule in LuRule if rule is not LuRule.B)
LAMBDA_UPSILON = tuple(LuRule)


def lu_rule_apply(rule: LuRule, x: LuExpr) -> Optional[LuExpr]:
    rule = LuRule(rule)
    if rule is LuRule.B:
        if isinstance(x, LuApp) and isinstance(x.fn, LuAbs):
            return Closure(x.fn.body, Slash(x.arg))
        return None
    if not isinstance(x, Closure):
        return None
    a, s = x.term, x.subst
    if rule is LuRule.APP and isinstance(a, LuApp):
        return LuApp(Closure(a.fn, s), Closure(a.arg, s))
    if rule is LuRule.LAMBDA and isinstance(a, LuAbs):
        return LuAbs(Closure(a.body, Lift(s)))
    if not isinstance(a, Var):
        return None
    if rule is LuRule.FVAR and a.n == 1 and isinstance(s, Slash):
        return s.term
    if rule is LuRule.RVAR and a.n > 1 and isinstance(s, Slash):
        return Var(a.n - 1)
    if rule is LuRule.VAR_SHIFT and isinstance(s, Shift):
        return Var(a.n + 1)
    if rule is LuRule.FVAR_LIFT and a.n == 1 and isinstance(s, Lift):
        return Var(1)
    if rule is LuRule.RVAR_LIFT and a.n > 1 and isinstance(s, Lift):
        return Closure(Closure(Var(a.n - 1), s.subst), SHIFT)
    return None


def lu_successors(x: LuExpr, rules=LAMBDA_UPSILON) -> List[engine.Redex]:
    return list(engine.iter_redexes(x, rules, lu_rule_apply))


def lu_step(x: LuExpr, rules=LAMBDA_UPSILON) -> Optional[LuExpr]:
    """One leftmost-outermost step, or None at a normal form."""
    redex = next(engine.iter_redexes(x, rules, lu_rule_apply), None)
    return None if redex is None else engine.contract(x, redex)


def lu_step_at(x: LuExpr, at: Path, rule: LuRule) -> LuExpr:
    return engine.step_at(x, at, LuRule(rule), lu_rule_apply)


def lu_normalize(x: LuExpr, rules=LAMBDA_UPSILON, strategy: Strategy = engine.LEFTMOST_OUTERMOST, fuel: int = 100_000) -> Trace:
    return engine.rewrite(x, rules, lu_rule_apply, strategy, fuel)


# --- TRANSLATION ---
def lu_to_susp(t: LuTerm) -> SuspTerm:
    if isinstance(t, Var):
        return Index(t.n)
    if isinstance(t, LuApp):
        return App(lu_to_susp(t.fn), lu_to_susp(t.arg))
    if isinstance(t, LuAbs):
        return Abs(lu_to_susp(t.body))
    if isinstance(t, Closure):
        return lu_subst_to_triple(t.subst).wrap(lu_to_susp(t.term))
    raise BridgeError(f"not a lambda-upsilon term: {type(t).__name__}")


def lu_subst_to_triple(s: LuSubst) -> EnvTriple:
    if isinstance(s, Slash):
        return EnvTriple(1, 0, Cons(EnvItem(lu_to_susp(s.term), 0), NIL))
    if isinstance(s, Shift):
        return EnvTriple(0, 1, NIL)
    if isinstance(s, Lift):
        inner = lu_subst_to_triple(s.subst)
        nl = checked_add(inner.nl, 1)
        return EnvTriple(inner.ol + 1, nl, Cons(EnvItem(Index(1), nl), inner.env))
    raise BridgeError(f"not a lambda-upsilon substitution: {type(s).__name__}")


def lu_translate(x: LuExpr):
    """Translate a term or a substitution."""
    if isinstance(x, (Slash, Lift, Shift)):
        return lu_subst_to_triple(x)
    return lu_to_susp(x)


def lu_from_db(t: SuspTerm) -> LuTerm:
    """Encode a pure de Bruijn term."""
    if isinstance(t, Index):
        return Var(t.i)
    if isinstance(t, App):
        return LuApp(lu_from_db(t.fn), lu_from_db(t.arg))
    if isinstance(t, Abs):
        return LuAbs(lu_from_db(t.body))
    raise BridgeError(f"lambda-upsilon has no counterpart for {type(t).__name__}")


def lu_to_db(t: LuTerm) -> SuspTerm:
    """Decode a closure-free term."""
    if isinstance(t, Closure):
        raise BridgeError("term still contains a closure")
    return lu_to_susp(t)

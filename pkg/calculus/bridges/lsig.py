"""
The lambda-sigma calculus and the translations between it and the
suspension calculus in both directions.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, List, Optional, Tuple, Union

from calculus import engine
from calculus.bridges import EnvTriple
from calculus.engine import Strategy, Trace
from calculus.errors import BridgeError, ConstraintError
from calculus.terms import (
    NIL,
    Abs,
    App,
    Cons,
    Const,
    EnvItem,
    Index,
    Merge,
    Nil,
    SuspEnv,
    SuspTerm,
    Susp,
    checked_add,
    checked_sub,
    env_lev,
    monus,
)
from calculus.tree import Node, Path, walk

# --- CONSTANTS ---
DEFAULT_SIGMA_FUEL = 10_000


# --- SYNTAX ---
@dataclass(frozen=True)
class One(Node):
    pass


ONE = One()


@dataclass(frozen=True)
class LsigConst(Node):
    name: str


@dataclass(frozen=True)
class LsigApp(Node):
    fn: "LsigTerm"
    arg: "LsigTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("fn", "arg")


@dataclass(frozen=True)
class LsigAbs(Node):
    body: "LsigTerm"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("body",)


@dataclass(frozen=True)
class Closure(Node):
    term: "LsigTerm"
    subst: "LsigSubst"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("term", "subst")


@dataclass(frozen=True)
class Id(Node):
    pass


ID = Id()


@dataclass(frozen=True)
class ConsS(Node):
    term: "LsigTerm"
    subst: "LsigSubst"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("term", "subst")


@dataclass(frozen=True)
class Comp(Node):
    left: "LsigSubst"
    right: "LsigSubst"
    CHILDREN: ClassVar[Tuple[str, ...]] = ("left", "right")


@dataclass(frozen=True)
class Shift(Node):
    pass


SHIFT = Shift()

LsigTerm = Union[One, LsigConst, LsigApp, LsigAbs, Closure]
LsigSubst = Union[Id, ConsS, Comp, Shift]
LsigExpr = Union[LsigTerm, LsigSubst]
SUBST_TYPES = (Id, ConsS, Comp, Shift)


def is_subst(x) -> bool:
    return isinstance(x, SUBST_TYPES)


def shift_power(n: int) -> LsigSubst:
    """The substitution written with n shifts: id, ^, ^ o ^, ^ o (^ o ^), ..."""
    if n < 0:
        raise BridgeError("shift powers are natural numbers")
    if n == 0:
        return ID
    result = SHIFT
    for _ in range(n - 1):
        result = Comp(SHIFT, result)
    return result


def shift_exponent(s: LsigSubst) -> Optional[int]:
    """n when `s` is the n-th shift power, None otherwise."""
    if isinstance(s, Id):
        return 0
    count = 0
    while isinstance(s, Comp) and isinstance(s.left, Shift):
        count += 1
        s = s.right
    if isinstance(s, Shift):
        return count + 1
    return None


def index_term(n: int) -> LsigTerm:
    """The encoding of de Bruijn index n: 1, 1[^], 1[^2], ..."""
    return ONE if n == 1 else Closure(ONE, shift_power(n - 1))


# --- RULES ---
class LsigRule(str, Enum):
    BETA = "beta"
    APP = "app"
    ABS = "abs"
    VAR_ID = "varid"
    VAR_CONS = "varcons"
    CLOS = "clos"
    CONST = "const"
    MAP = "map"
    ASS = "ass"
    ID_L = "idl"
    SHIFT_ID = "shiftid"
    SHIFT_CONS = "shiftcons"


# CONST (c[s] -> c) is not one of the usual lambda-sigma rules; it exists only
# because constants are allowed here. On constant-free expressions SIGMA is
# exactly the sigma calculus.
SIGMA = tuple(rule for rule in LsigRule if rule is not LsigRule.BETA)
LAMBDA_SIGMA = tuple(LsigRule)


def lsig_rule_apply(rule: LsigRule, x: LsigExpr) -> Optional[LsigExpr]:
    rule = LsigRule(rule)
    if rule is LsigRule.BETA:
        if isinstance(x, LsigApp) and isinstance(x.fn, LsigAbs):
            return Closure(x.fn.body, ConsS(x.arg, ID))
        return None
    if isinstance(x, Closure):
        a, s = x.term, x.subst
        if rule is LsigRule.APP and isinstance(a, LsigApp):
            return LsigApp(Closure(a.fn, s), Closure(a.arg, s))
        if rule is LsigRule.ABS and isinstance(a, LsigAbs):
            return LsigAbs(Closure(a.body, ConsS(ONE, Comp(s, SHIFT))))
        if rule is LsigRule.VAR_ID and isinstance(a, One) and isinstance(s, Id):
            return ONE
        if rule is LsigRule.VAR_CONS and isinstance(a, One) and isinstance(s, ConsS):
            return s.term
        if rule is LsigRule.CLOS and isinstance(a, Closure):
            return Closure(a.term, Comp(a.subst, s))
        if rule is LsigRule.CONST and isinstance(a, LsigConst):
            return a
        return None
    if isinstance(x, Comp):
        s, t = x.left, x.right
        if rule is LsigRule.MAP and isinstance(s, ConsS):
            return ConsS(Closure(s.term, t), Comp(s.subst, t))
        if rule is LsigRule.ASS and isinstance(s, Comp):
            return Comp(s.left, Comp(s.right, t))
        if rule is LsigRule.ID_L and isinstance(s, Id):
            return t
        if rule is LsigRule.SHIFT_ID and isinstance(s, Shift) and isinstance(t, Id):
            return SHIFT
        if rule is LsigRule.SHIFT_CONS and isinstance(s, Shift) and isinstance(t, ConsS):
            return t.subst
    return None


def lsig_successors(x: LsigExpr, rules=LAMBDA_SIGMA) -> List[engine.Redex]:
    return list(engine.iter_redexes(x, rules, lsig_rule_apply))


def lsig_step(x: LsigExpr, rules=LAMBDA_SIGMA) -> Optional[LsigExpr]:
    redex = next(engine.iter_redexes(x, rules, lsig_rule_apply), None)
    return None if redex is None else engine.contract(x, redex)


def lsig_step_at(x: LsigExpr, at: Path, rule: LsigRule) -> LsigExpr:
    return engine.step_at(x, at, LsigRule(rule), lsig_rule_apply)


def lsig_normalize(
    x: LsigExpr,
    rules=LAMBDA_SIGMA,
    strategy: Strategy = engine.LEFTMOST_OUTERMOST,
    fuel: int = 100_000,
) -> Trace:
    return engine.rewrite(x, rules, lsig_rule_apply, strategy, fuel)


def sigma_joinable(a: LsigExpr, b: LsigExpr, fuel: int = DEFAULT_SIGMA_FUEL):
    """Compare sigma-normal forms; None when either side runs out of fuel."""
    left = lsig_normalize(a, SIGMA, fuel=fuel)
    right = lsig_normalize(b, SIGMA, fuel=fuel)
    if not (left.normalized and right.normalized):
        return None
    return left.result == right.result


# --- SUSPENSIONS TO LAMBDA-SIGMA ---
def _shifted(s: LsigSubst, times: int) -> LsigSubst:
    for _ in range(times):
        s = Comp(s, SHIFT)
    return s


def susp_to_lsig(t: SuspTerm) -> LsigTerm:
    if isinstance(t, Index):
        return index_term(t.i)
    if isinstance(t, Const):
        return LsigConst(t.name)
    if isinstance(t, App):
        return LsigApp(susp_to_lsig(t.fn), susp_to_lsig(t.arg))
    if isinstance(t, Abs):
        return LsigAbs(susp_to_lsig(t.body))
    if isinstance(t, Susp):
        return Closure(susp_to_lsig(t.term), env_to_lsig(t.env, t.nl))
    raise BridgeError(f"lambda-sigma has no counterpart for {type(t).__name__}")


def env_to_lsig(e: SuspEnv, i: int) -> LsigSubst:
    """Encode environment `e` read at level i (requires lev(e) <= i)."""
    if env_lev(e) > i:
        raise ConstraintError(f"environment level {env_lev(e)} exceeds {i}")
    if isinstance(e, Nil):
        return _shifted(ID, i)
    if isinstance(e, Cons):
        n = e.item.index
        head = ConsS(susp_to_lsig(e.item.term), env_to_lsig(e.rest, n))
        return _shifted(head, i - n)
    if isinstance(e, Merge):
        return Comp(env_to_lsig(e.e1, e.nl1), env_to_lsig(e.e2, checked_sub(i, monus(e.nl1, e.ol2))))
    raise BridgeError(f"not an environment: {type(e).__name__}")


# --- LAMBDA-SIGMA TO SUSPENSIONS ---
def lsig_to_susp(t: LsigTerm) -> SuspTerm:
    if isinstance(t, One):
        return Index(1)
    if isinstance(t, LsigConst):
        return Const(t.name)
    if isinstance(t, LsigApp):
        return App(lsig_to_susp(t.fn), lsig_to_susp(t.arg))
    if isinstance(t, LsigAbs):
        return Abs(lsig_to_susp(t.body))
    if isinstance(t, Closure):
        if isinstance(t.term, One):
            n = shift_exponent(t.subst)
            # 1[id] stays a suspension so that translating back is the identity
            if n is not None and n >= 1:
                return Index(n + 1)
        return lsig_subst_to_triple(t.subst).wrap(lsig_to_susp(t.term))
    raise BridgeError(f"not a lambda-sigma term: {type(t).__name__}")


def lsig_subst_to_triple(s: LsigSubst) -> EnvTriple:
    if isinstance(s, Id):
        return EnvTriple(0, 0, NIL)
    if isinstance(s, Shift):
        return EnvTriple(0, 1, NIL)
    if isinstance(s, ConsS):
        rest = lsig_subst_to_triple(s.subst)
        return EnvTriple(rest.ol + 1, rest.nl, Cons(EnvItem(lsig_to_susp(s.term), rest.nl), rest.env))
    if isinstance(s, Comp):
        first = lsig_subst_to_triple(s.left)
        if isinstance(s.right, Shift):
            return EnvTriple(first.ol, checked_add(first.nl, 1), first.env)
        second = lsig_subst_to_triple(s.right)
        return EnvTriple(
            checked_add(first.ol, monus(second.ol, first.nl)),
            checked_add(second.nl, monus(first.nl, second.ol)),
            Merge(first.env, first.nl, second.ol, second.env),
        )
    raise BridgeError(f"not a lambda-sigma substitution: {type(s).__name__}")


def lsig_translate(x: LsigExpr):
    if is_subst(x):
        return lsig_subst_to_triple(x)
    return lsig_to_susp(x)


def lsig_from_db(t: SuspTerm) -> LsigTerm:
    if any(isinstance(node, Susp) for _, node in walk(t)):
        raise BridgeError("expected a suspension-free term")
    return susp_to_lsig(t)


def lsig_to_db(t: LsigTerm) -> SuspTerm:
    result = lsig_to_susp(t)
    if any(isinstance(node, Susp) for _, node in walk(result)):
        raise BridgeError("term still contains a closure")
    return result


# --- SELF-SCOPED CLOSURES ---
def self_scoped(x: LsigExpr) -> bool:
    """True when some closure applies a substitution that contains its own beta redex."""
    for _, node in walk(x):
        if isinstance(node, Closure) and _is_redex(node.term):
            if any(sub == node.term for _, sub in walk(node.subst)):
                return True
    return False


def _is_redex(t) -> bool:
    return isinstance(t, LsigApp) and isinstance(t.fn, LsigAbs)


# --- SELF-SCOPING REDUCTION ---
SELF_SCOPING_STEPS: Tuple[Tuple[LsigRule, Path], ...] = (
    (LsigRule.APP, ()),
    (LsigRule.ABS, (0,)),
    (LsigRule.BETA, ()),
    (LsigRule.CLOS, ()),
    (LsigRule.MAP, (1,)),
    (LsigRule.VAR_CONS, (1, 0)),
    (LsigRule.ASS, (1, 1)),
)
# the (Map) step that distributes a substitution into a copy of itself
SELF_SCOPING_MAP_AT: Path = (1, 1)


def self_scoping_start(
    a_prime: LsigTerm = ONE,
    b_prime: LsigTerm = Closure(ONE, SHIFT),
    a: LsigTerm = LsigApp(ONE, ONE),
    b: LsigTerm = ONE,
) -> LsigTerm:
    """((\\a') b')[((\\a) b) . id]: the start of the self-scoping reduction."""
    return Closure(LsigApp(LsigAbs(a_prime), b_prime), ConsS(LsigApp(LsigAbs(a), b), ID))


def self_scoping_replay(start: Optional[LsigTerm] = None) -> List[LsigTerm]:
    """Every term along the fixed reduction, the start included."""
    current = self_scoping_start() if start is None else start
    produced = [current]
    for rule, at in SELF_SCOPING_STEPS:
        current = lsig_step_at(current, at, rule)
        produced.append(current)
    return produced

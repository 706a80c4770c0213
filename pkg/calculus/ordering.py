"""
Termination measures for the reading and merging rules.

mu and eta_i are natural-number measures on suspension expressions;
`essence` maps an expression to a first-order measure term, and `rpo_gt`
is the recursive path ordering over those terms.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

from calculus.errors import CategoryError
from calculus.terms import Abs, App, Cons, Const, Index, Merge, MetaVar, Nil, SuspExpr, Susp

# --- CONSTANTS ---
DEFAULT_ETA_BOUND = 16


# --- MEASURE TERMS ---
@dataclass(frozen=True)
class Star:
    def __str__(self):
        return "*"


@dataclass(frozen=True)
class Lam:
    arg: "MeasureTerm"

    def __str__(self):
        return f"lam({self.arg})"


@dataclass(frozen=True)
class AppT:
    a: "MeasureTerm"
    b: "MeasureTerm"

    def __str__(self):
        return f"app({self.a}, {self.b})"


@dataclass(frozen=True)
class ConsT:
    a: "MeasureTerm"
    b: "MeasureTerm"

    def __str__(self):
        return f"cons({self.a}, {self.b})"


@dataclass(frozen=True)
class S:
    i: int
    a: "MeasureTerm"
    b: "MeasureTerm"

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("s_i needs i >= 1")

    def __str__(self):
        return f"s{self.i}({self.a}, {self.b})"


MeasureTerm = Union[Star, Lam, AppT, ConsT, S]
STAR = Star()


def _symbol(t: MeasureTerm):
    if isinstance(t, S):
        return ("s", t.i)
    return (type(t).__name__, 0)


def _args(t: MeasureTerm) -> Tuple[MeasureTerm, ...]:
    if isinstance(t, Star):
        return ()
    if isinstance(t, Lam):
        return (t.arg,)
    return (t.a, t.b)


def precedes(f, g) -> bool:
    """f is above g in the precedence: s_i over s_j for i > j, every s_i over the rest."""
    if f[0] != "s":
        return False
    return g[0] != "s" or f[1] > g[1]


# --- MEASURES ---
@lru_cache(maxsize=65536)
def mu(x: SuspExpr) -> int:
    """Internal embedding potential."""
    if isinstance(x, (Const, MetaVar, Index, Nil)):
        return 0
    if isinstance(x, Abs):
        return mu(x.body)
    if isinstance(x, App):
        return max(mu(x.fn), mu(x.arg))
    if isinstance(x, Susp):
        return mu(x.term) + mu(x.env) + 1
    if isinstance(x, Cons):
        return max(mu(x.item.term), mu(x.rest))
    if isinstance(x, Merge):
        return mu(x.e1) + mu(x.e2) + 1
    raise CategoryError(f"not a suspension expression: {type(x).__name__}")


@lru_cache(maxsize=65536)
def eta(x: SuspExpr, i: int) -> int:
    if isinstance(x, (Const, MetaVar, Index)):
        return 1
    if isinstance(x, Nil):
        return 0
    if isinstance(x, Abs):
        return eta(x.body, i) + 1
    if isinstance(x, App):
        return max(eta(x.fn, i), eta(x.arg, i)) + 1
    if isinstance(x, Susp):
        return eta(x.term, i + 1) + eta(x.env, i + 1 + mu(x.term)) + 1
    if isinstance(x, Cons):
        return max(eta(x.item.term, i), eta(x.rest, i))
    if isinstance(x, Merge):
        return eta(x.e1, i + 1) + eta(x.e2, i + 1 + mu(x.e1)) + 1
    raise CategoryError(f"not a suspension expression: {type(x).__name__}")


def essence(x: SuspExpr) -> MeasureTerm:
    if isinstance(x, (Const, MetaVar, Index, Nil)):
        return STAR
    if isinstance(x, Abs):
        return Lam(essence(x.body))
    if isinstance(x, App):
        return AppT(essence(x.fn), essence(x.arg))
    if isinstance(x, Susp):
        return S(eta(x, 0), essence(x.term), essence(x.env))
    if isinstance(x, Cons):
        return ConsT(essence(x.item.term), essence(x.rest))
    if isinstance(x, Merge):
        return S(eta(x, 0), essence(x.e1), essence(x.e2))
    raise CategoryError(f"not a suspension expression: {type(x).__name__}")


# --- RECURSIVE PATH ORDERING ---
def _lex_gt(left, right) -> bool:
    for a, b in zip(left, right):
        if a == b:
            continue
        return rpo_gt(a, b)
    return False


@lru_cache(maxsize=262144)
def rpo_gt(s: MeasureTerm, t: MeasureTerm) -> bool:
    s_args, t_args = _args(s), _args(t)
    if any(arg == t or rpo_gt(arg, t) for arg in s_args):
        return True
    f, g = _symbol(s), _symbol(t)
    if f == g:
        return _lex_gt(s_args, t_args) and all(rpo_gt(s, arg) for arg in t_args)
    if precedes(f, g):
        return all(rpo_gt(s, arg) for arg in t_args)
    return False


# --- DECREASE REPORT ---
@dataclass(frozen=True)
class DecreaseReport:
    essence_decreases: bool
    mu_nonincreasing: bool
    eta_nonincreasing: bool
    eta_bound: int

    @property
    def ok(self) -> bool:
        return self.essence_decreases and self.mu_nonincreasing and self.eta_nonincreasing

    def as_dict(self):
        return {
            "essence_decreases": self.essence_decreases,
            "mu_nonincreasing": self.mu_nonincreasing,
            f"eta_nonincreasing_upto_{self.eta_bound}": self.eta_nonincreasing,
        }


def check_step_decrease(before: SuspExpr, after: SuspExpr, k: int = DEFAULT_ETA_BOUND) -> DecreaseReport:
    return DecreaseReport(
        essence_decreases=rpo_gt(essence(before), essence(after)),
        mu_nonincreasing=mu(before) >= mu(after),
        eta_nonincreasing=all(eta(before, i) >= eta(after, i) for i in range(k + 1)),
        eta_bound=k,
    )


def measure_table(x: SuspExpr, k: int = DEFAULT_ETA_BOUND):
    """mu, eta_0..eta_k and the essence of `x`, ready for display."""
    return {
        "mu": mu(x),
        "eta": [eta(x, i) for i in range(k + 1)],
        "essence": str(essence(x)),
    }

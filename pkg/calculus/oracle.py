"""
Reference semantics: de Bruijn beta reduction, similarity of suspension
expressions, and the parallel beta_s relation.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from calculus import engine
from calculus.engine import Trace
from calculus.errors import CategoryError, RewriteError
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
    is_env,
    is_term,
)
from calculus.tree import Path, replace_at, subexpr_at, walk

logger = logging.getLogger(__name__)

BETA = "beta"


# --- DE BRUIJN SUBSTITUTION ---
@dataclass(frozen=True)
class DbSubst:
    """Index k <= n maps to explicit[k-1]; index n + k maps to #(k + tail_shift)."""

    explicit: Tuple[SuspTerm, ...] = ()
    tail_shift: int = 0

    def __post_init__(self):
        if len(self.explicit) + self.tail_shift < 0:
            raise ValueError("substitution would produce non-positive indices")


SHIFT = DbSubst((), 1)


def is_db_term(t) -> bool:
    return all(isinstance(node, (Const, Index, App, Abs)) for _, node in walk(t))


def lift(s: DbSubst) -> DbSubst:
    """The substitution used under an abstraction: #1 followed by the shifted entries."""
    shifted = tuple(db_subst(entry, SHIFT) for entry in s.explicit)
    return DbSubst((Index(1),) + shifted, s.tail_shift + 1)


def db_subst(t: SuspTerm, s: DbSubst) -> SuspTerm:
    if isinstance(t, Const):
        return t
    if isinstance(t, Index):
        n = len(s.explicit)
        if t.i <= n:
            return s.explicit[t.i - 1]
        return Index(t.i - n + s.tail_shift)
    if isinstance(t, App):
        return App(db_subst(t.fn, s), db_subst(t.arg, s))
    if isinstance(t, Abs):
        return Abs(db_subst(t.body, lift(s)))
    raise CategoryError(f"not a de Bruijn term: {type(t).__name__}")


def beta_rule_apply(rule, t) -> Optional[SuspTerm]:
    if isinstance(t, App) and isinstance(t.fn, Abs):
        return db_subst(t.fn.body, DbSubst((t.arg,), 0))
    return None


def db_beta_step(t: SuspTerm, at: Path) -> SuspTerm:
    redex = subexpr_at(t, at)
    result = beta_rule_apply(BETA, redex)
    if result is None:
        raise RewriteError(f"no beta redex at {list(at)}")
    return replace_at(t, at, result)


def db_normalize(t: SuspTerm, fuel: int) -> Trace:
    """Leftmost-outermost beta reduction."""
    if not is_db_term(t):
        raise CategoryError("the beta oracle accepts suspension-free, meta-free terms only")
    return engine.rewrite(t, (BETA,), beta_rule_apply, engine.LEFTMOST_OUTERMOST, fuel)


def db_reduction_graph(t: SuspTerm, max_nodes: int):
    return engine.reduction_graph(t, (BETA,), beta_rule_apply, max_nodes)


# --- SIMILARITY ---
def _same_category(a, b):
    if not ((is_term(a) and is_term(b)) or (is_env(a) and is_env(b))):
        raise CategoryError("similarity compares two terms or two environments")


def _displaced_pair(a: Cons, b: Cons) -> bool:
    s, t = a.item.term, b.item.term
    if not (isinstance(s, Susp) and isinstance(t, Susp) and s.ol == t.ol):
        return False
    k = a.item.index - s.nl
    if k < 0 or b.item.index - t.nl != k:
        return False
    return similar(s.term, t.term) and similar(s.env, t.env) and similar(a.rest, b.rest)


def similar(a: SuspExpr, b: SuspExpr) -> bool:
    """Derivability of a ~ b from the similarity rules."""
    _same_category(a, b)
    if a == b:
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, App):
        return similar(a.fn, b.fn) and similar(a.arg, b.arg)
    if isinstance(a, Abs):
        return similar(a.body, b.body)
    if isinstance(a, Susp):
        return a.ol == b.ol and a.nl == b.nl and similar(a.term, b.term) and similar(a.env, b.env)
    if isinstance(a, Cons):
        if _displaced_pair(a, b):
            return True
        return a.item.index == b.item.index and similar(a.item.term, b.item.term) and similar(a.rest, b.rest)
    if isinstance(a, Merge):
        return a.nl1 == b.nl1 and a.ol2 == b.ol2 and similar(a.e1, b.e1) and similar(a.e2, b.e2)
    return False


# --- PARALLEL BETA_S ---
def par_successors(x: SuspExpr) -> FrozenSet[SuspExpr]:
    """Everything reachable from `x` by one parallel beta_s step."""
    if isinstance(x, (Const, MetaVar, Index, Nil)):
        return frozenset({x})
    if isinstance(x, Abs):
        return frozenset(Abs(b) for b in par_successors(x.body))
    if isinstance(x, App):
        args = par_successors(x.arg)
        found = {App(f, a) for f, a in itertools.product(par_successors(x.fn), args)}
        if isinstance(x.fn, Abs):
            for body, arg in itertools.product(par_successors(x.fn.body), args):
                found.add(Susp(body, 1, 0, Cons(EnvItem(arg, 0), NIL)))
        return frozenset(found)
    if isinstance(x, Susp):
        return frozenset(
            Susp(t, x.ol, x.nl, e) for t, e in itertools.product(par_successors(x.term), par_successors(x.env))
        )
    if isinstance(x, Cons):
        return frozenset(
            Cons(EnvItem(t, x.item.index), e)
            for t, e in itertools.product(par_successors(x.item.term), par_successors(x.rest))
        )
    if isinstance(x, Merge):
        return frozenset(
            Merge(e1, x.nl1, x.ol2, e2) for e1, e2 in itertools.product(par_successors(x.e1), par_successors(x.e2))
        )
    raise CategoryError(f"not a suspension expression: {type(x).__name__}")


def diamond_counterexample(x: SuspExpr) -> Optional[Tuple[SuspExpr, SuspExpr]]:
    """A pair of parallel successors with no common parallel successor, if one exists."""
    succ = sorted(par_successors(x), key=repr)
    closures = {u: par_successors(u) for u in succ}
    for u, v in itertools.combinations(succ, 2):
        if not closures[u] & closures[v]:
            return u, v
    return None

"""
Deterministic expression generator
==================================

Seeded generators for well-formed suspension expressions, strongly
normalizing de Bruijn terms (simply typed skeletons), expressions of the
neighbouring calculi, similar pairs, and the fixed benchmark corpora.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Tuple

import numpy as np

from calculus.bridges import ls, lu
from calculus.bridges.lsig import env_to_lsig, susp_to_lsig
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
    SuspEnv,
    SuspTerm,
    Susp,
    apply_all,
    env_len,
    env_lev,
    env_of,
)

CONSTANT_NAMES = ("a", "b", "c", "f", "g")
METAVAR_NAMES = ("X", "Y", "Z")
BASE = "o"


class GenMode(str, Enum):
    WELL_FORMED_SUSP = "susp"
    SN_DEBRUIJN = "sn"
    LSIG_EXPR = "lsig"
    LU_EXPR = "lu"
    LS_EXPR = "ls"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 40
    max_level: int = 8
    allow_metavars: bool = False
    mode: GenMode = GenMode.WELL_FORMED_SUSP
    allow_constants: bool = True
    simple_envs: bool = False


def case_seed(seed: int, case: int) -> int:
    """Independent seed for case number `case` of a run seeded with `seed`."""
    return int(np.random.SeedSequence([seed, case]).generate_state(1)[0])


# --- SUSPENSION EXPRESSIONS ---
class _SuspBuilder:
    """Well-formed by construction: environments are built bottom-up."""

    def __init__(self, cfg: GenConfig, rng: np.random.Generator):
        self.cfg = cfg
        self.rng = rng

    def _split(self, budget: int) -> int:
        return int(self.rng.integers(1, budget)) if budget > 1 else 1

    def leaf(self) -> SuspTerm:
        kinds = ["index"]
        if self.cfg.allow_constants:
            kinds.append("const")
        if self.cfg.allow_metavars:
            kinds.append("meta")
        kind = kinds[int(self.rng.integers(len(kinds)))]
        if kind == "const":
            return Const(CONSTANT_NAMES[int(self.rng.integers(len(CONSTANT_NAMES)))])
        if kind == "meta":
            return MetaVar(METAVAR_NAMES[int(self.rng.integers(len(METAVAR_NAMES)))])
        return Index(int(self.rng.integers(1, self.cfg.max_level + 2)))

    def term(self, budget: int) -> SuspTerm:
        if budget <= 1:
            return self.leaf()
        roll = self.rng.random()
        if roll < 0.3 and budget >= 3:
            left = self._split(budget - 1)
            fn = self.term(left)
            if self.rng.random() < 0.3:
                fn = Abs(fn)
            return App(fn, self.term(budget - 1 - left))
        if roll < 0.5:
            return Abs(self.term(budget - 1))
        if roll < 0.85 and budget >= 3:
            return self.susp(budget)
        return self.leaf()

    def susp(self, budget: int) -> Susp:
        env_budget = self._split(budget - 1)
        env = self.env(env_budget, self.cfg.max_level)
        body = self.term(max(budget - 1 - env_budget, 1))
        nl = int(self.rng.integers(env_lev(env), self.cfg.max_level + 1))
        return Susp(body, env_len(env), nl, env)

    def env(self, budget: int, max_lev: int) -> SuspEnv:
        roll = self.rng.random()
        if budget <= 1 or roll < 0.15:
            return NIL
        if roll < 0.7 or budget < 3 or self.cfg.simple_envs:
            item_budget = self._split(budget - 1)
            rest = self.env(max(budget - 1 - item_budget, 1), max_lev)
            index = int(self.rng.integers(env_lev(rest), max_lev + 1))
            return Cons(EnvItem(self.term(item_budget), index), rest)
        left = self._split(budget - 1)
        e2 = self.env(max(budget - 1 - left, 1), max_lev)
        ol2 = env_len(e2)
        upper = min(ol2 + max_lev - env_lev(e2), self.cfg.max_level)
        e1 = self.env(left, upper)
        nl1 = int(self.rng.integers(env_lev(e1), upper + 1))
        return Merge(e1, nl1, ol2, e2)

    def simple_env(self, length: int, budget: int) -> SuspEnv:
        env = NIL
        for _ in range(length):
            index = int(self.rng.integers(env_lev(env), self.cfg.max_level + 1))
            env = Cons(EnvItem(self.term(max(budget, 1)), index), env)
        return env


# --- STRONGLY NORMALIZING TERMS ---
class _TypedBuilder:
    """Simply typed de Bruijn terms; free indices and constants are inert."""

    def __init__(self, cfg: GenConfig, rng: np.random.Generator):
        self.cfg = cfg
        self.rng = rng

    def type_(self, depth: int = 2):
        if depth == 0 or self.rng.random() < 0.5:
            return BASE
        return (self.type_(depth - 1), self.type_(depth - 1))

    def leaf(self, ctx, ty) -> SuspTerm:
        matches = [i for i, bound in enumerate(ctx) if bound == ty]
        if matches and self.rng.random() < 0.7:
            return Index(int(self.rng.choice(matches)) + 1)
        if isinstance(ty, tuple) and self.rng.random() < 0.5:
            return Abs(self.leaf((ty[0],) + ctx, ty[1]))
        if self.cfg.allow_metavars and self.rng.random() < 0.3:
            return MetaVar(METAVAR_NAMES[int(self.rng.integers(len(METAVAR_NAMES)))])
        if self.cfg.allow_constants and self.rng.random() < 0.5:
            return Const(CONSTANT_NAMES[int(self.rng.integers(len(CONSTANT_NAMES)))])
        return Index(len(ctx) + 1 + int(self.rng.integers(2)))

    def term(self, ctx, ty, budget: int) -> SuspTerm:
        if budget <= 1:
            return self.leaf(ctx, ty)
        roll = self.rng.random()
        if isinstance(ty, tuple) and roll < 0.35:
            return Abs(self.term((ty[0],) + ctx, ty[1], budget - 1))
        if roll < 0.8 and budget >= 4:
            arg_ty = self.type_(1)
            fn_budget = int(self.rng.integers(2, budget - 1))
            if self.rng.random() < 0.5:
                fn = Abs(self.term((arg_ty,) + ctx, ty, fn_budget - 1))
            else:
                fn = self.term(ctx, (arg_ty, ty), fn_budget)
            return App(fn, self.term(ctx, arg_ty, budget - 1 - fn_budget))
        return self.leaf(ctx, ty)


# --- NEIGHBOURING CALCULI ---
def _lu_term(rng, budget: int):
    if budget <= 1:
        return lu.Var(int(rng.integers(1, 5)))
    roll = rng.random()
    if roll < 0.3 and budget >= 3:
        left = int(rng.integers(1, budget - 1))
        fn = _lu_term(rng, left)
        if rng.random() < 0.3:
            fn = lu.LuAbs(fn)
        return lu.LuApp(fn, _lu_term(rng, budget - 1 - left))
    if roll < 0.5:
        return lu.LuAbs(_lu_term(rng, budget - 1))
    if roll < 0.85 and budget >= 3:
        left = int(rng.integers(1, budget - 1))
        return lu.Closure(_lu_term(rng, left), _lu_subst(rng, budget - 1 - left))
    return lu.Var(int(rng.integers(1, 5)))


def _lu_subst(rng, budget: int):
    roll = rng.random()
    if budget <= 1 or roll < 0.25:
        return lu.SHIFT
    if roll < 0.6:
        return lu.Lift(_lu_subst(rng, budget - 1))
    return lu.Slash(_lu_term(rng, budget - 1))


def _ls_term(rng, budget: int):
    if budget <= 1:
        return ls.LsVar(int(rng.integers(1, 5)))
    roll = rng.random()
    if roll < 0.3 and budget >= 3:
        left = int(rng.integers(1, budget - 1))
        fn = _ls_term(rng, left)
        if rng.random() < 0.3:
            fn = ls.LsAbs(fn)
        return ls.LsApp(fn, _ls_term(rng, budget - 1 - left))
    if roll < 0.45:
        return ls.LsAbs(_ls_term(rng, budget - 1))
    if roll < 0.7 and budget >= 3:
        left = int(rng.integers(1, budget - 1))
        return ls.Sigma(int(rng.integers(1, 4)), _ls_term(rng, left), _ls_term(rng, budget - 1 - left))
    if roll < 0.9:
        return ls.Phi(int(rng.integers(0, 3)), int(rng.integers(1, 4)), _ls_term(rng, budget - 1))
    return ls.LsVar(int(rng.integers(1, 5)))


# --- ENTRY POINTS ---
def generate(cfg: GenConfig):
    """One expression of the calculus selected by `cfg.mode`, deterministic in the seed."""
    rng = np.random.default_rng(cfg.seed)
    size = max(cfg.max_size, 1)
    mode = GenMode(cfg.mode)
    if mode is GenMode.WELL_FORMED_SUSP:
        return _SuspBuilder(cfg, rng).term(size)
    if mode is GenMode.SN_DEBRUIJN:
        builder = _TypedBuilder(cfg, rng)
        return builder.term((), builder.type_(), size)
    if mode is GenMode.LSIG_EXPR:
        builder = _SuspBuilder(replace(cfg, allow_metavars=False), rng)
        if rng.random() < 0.25:
            env = builder.env(size, cfg.max_level)
            return env_to_lsig(env, int(rng.integers(env_lev(env), cfg.max_level + 1)))
        return susp_to_lsig(builder.term(size))
    if mode is GenMode.LU_EXPR:
        return _lu_term(rng, size)
    return _ls_term(rng, size)


def generate_env(cfg: GenConfig) -> SuspEnv:
    """A well-formed suspension environment with level at most `cfg.max_level`."""
    rng = np.random.default_rng(cfg.seed)
    return _SuspBuilder(cfg, rng).env(max(cfg.max_size, 1), cfg.max_level)


def generate_simple_env(cfg: GenConfig, length: int) -> SuspEnv:
    """A Nil/Cons-only environment of the given length."""
    rng = np.random.default_rng(cfg.seed)
    return _SuspBuilder(cfg, rng).simple_env(length, max(cfg.max_size // max(length, 1), 1))


def generate_expression(cfg: GenConfig):
    """A well-formed term or environment, chosen by the seed."""
    if np.random.default_rng(cfg.seed).random() < 0.3:
        return generate_env(cfg)
    return generate(replace(cfg, mode=GenMode.WELL_FORMED_SUSP))


# --- SIMILAR PAIRS ---
def similar_pair(cfg: GenConfig) -> Tuple[SuspTerm, SuspTerm]:
    """Two terms related by the displaced-pair rule at one or more positions."""
    rng = np.random.default_rng(cfg.seed)
    builder = _SuspBuilder(replace(cfg, allow_metavars=False), rng)
    return _similar_terms(builder, rng, max(cfg.max_size, 6), depth=2)


def _similar_terms(builder: _SuspBuilder, rng, budget: int, depth: int):
    max_level = builder.cfg.max_level
    if depth == 0 or budget < 6:
        t = builder.term(max(budget, 1))
        return t, t
    inner, inner_other = _similar_terms(builder, rng, budget // 3, depth - 1)
    r = builder.env(max(budget // 4, 1), max_level)
    lev, ol = env_lev(r), env_len(r)
    nl = int(rng.integers(lev, max_level + 1))
    other_nl = int(rng.integers(lev, max_level + 1))
    k = int(rng.integers(0, 3))
    rest = builder.env(max(budget // 4, 1), min(nl, other_nl) + k)
    env = Cons(EnvItem(Susp(inner, ol, nl, r), nl + k), rest)
    other_env = Cons(EnvItem(Susp(inner_other, ol, other_nl, r), other_nl + k), rest)
    body = builder.term(max(budget // 4, 1))
    outer_nl = max(nl, other_nl) + k + int(rng.integers(0, 2))
    outer_ol = env_len(env)
    a, b = Susp(body, outer_ol, outer_nl, env), Susp(body, outer_ol, outer_nl, other_env)
    roll = rng.random()
    if roll < 0.3:
        side = builder.term(2)
        return App(a, side), App(b, side)
    if roll < 0.5:
        return Abs(a), Abs(b)
    return a, b


# --- FIXTURES AND CORPORA ---
def metavar_peak(t1: SuspTerm, t2: SuspTerm, meta: str = "X") -> Tuple[SuspTerm, SuspTerm]:
    """The two reducts of ((\\ ((\\ X) t1)) t2) that the reading rules alone cannot join."""
    x = MetaVar(meta)
    left = Susp(Susp(x, 1, 0, env_of([(t1, 0)])), 1, 0, env_of([(t2, 0)]))
    right = Susp(
        Susp(x, 2, 1, env_of([(Index(1), 1), (t2, 0)])),
        1,
        0,
        env_of([(Susp(t1, 1, 0, env_of([(t2, 0)])), 0)]),
    )
    return left, right


def church(n: int) -> SuspTerm:
    body = Index(1)
    for _ in range(n):
        body = App(Index(2), body)
    return Abs(Abs(body))


CHURCH_PLUS = Abs(Abs(Abs(Abs(apply_all(Index(4), Index(2), apply_all(Index(3), Index(2), Index(1)))))))
CHURCH_MULT = Abs(Abs(Abs(App(Index(3), App(Index(2), Index(1))))))


def church_corpus(limit: int = 5) -> List[Tuple[str, SuspTerm]]:
    corpus = []
    for m in range(limit + 1):
        for n in range(limit + 1):
            corpus.append((f"plus-{m}-{n}", apply_all(CHURCH_PLUS, church(m), church(n))))
            corpus.append((f"mult-{m}-{n}", apply_all(CHURCH_MULT, church(m), church(n))))
    return corpus


def deep_redex(depth: int) -> SuspTerm:
    """Identity and duplicating redexes nested `depth` deep around a free variable."""
    t = Index(1)
    for level in range(depth):
        fn = Abs(App(Index(1), Index(1))) if level % 2 else Abs(Index(1))
        t = App(fn, t)
    return t


def deep_redex_corpus(max_depth: int = 12) -> List[Tuple[str, SuspTerm]]:
    return [(f"deep-{d}", deep_redex(d)) for d in range(1, max_depth + 1)]


CORPORA = {
    "church": church_corpus,
    "deep-redex": deep_redex_corpus,
}


def sn_corpus(count: int = 200, seed: int = 0, max_size: int = 24) -> List[Tuple[str, SuspTerm]]:
    """Fixed constant-free corpus of strongly normalizing pure terms."""
    corpus = church_corpus() + deep_redex_corpus()
    case = 0
    while len(corpus) < count:
        cfg = GenConfig(seed=case_seed(seed, case), max_size=max_size, mode=GenMode.SN_DEBRUIJN, allow_constants=False)
        corpus.append((f"typed-{case}", generate(cfg)))
        case += 1
    return corpus[:count]

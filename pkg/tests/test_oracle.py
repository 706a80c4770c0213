import pytest
from hypothesis import given, strategies as st

from calculus import engine
from calculus.engine import Status
from calculus.errors import CategoryError
from calculus.generator import GenConfig, GenMode, generate
from calculus.oracle import (
    DbSubst,
    db_beta_step,
    db_normalize,
    db_subst,
    diamond_counterexample,
    par_successors,
    similar,
)
from calculus.rewrite import RMBETA, normalize
from calculus.terms import NIL, Abs, Const, Index, Susp, env_of

c = Const("c")


# --- DE BRUIJN SUBSTITUTION ---
def test_db_subst():
    assert db_subst(Index(1), DbSubst((c,))) == c
    assert db_subst(Abs(Index(2)), DbSubst((c,))) == Abs(c)
    assert db_subst(Abs(Index(2)), DbSubst((Index(1),))) == Abs(Index(2))


@pytest.mark.parametrize(
    "text, expected",
    [("(\\ #1) c", "c"), ("(\\ \\ #2) c", "\\ c"), ("(\\ #2) c", "#1")],
)
def test_db_beta_step(susp, text, expected):
    assert db_beta_step(susp(text), ()) == susp(expected)


def test_db_normalize(susp):
    trace = db_normalize(susp("(\\ (\\ \\ #1 #2 #3) c) c"), 100)
    assert trace.normalized
    assert trace.result == susp("\\ #1 c c")
    assert db_normalize(c, 10).result == c


def test_db_normalize_omega(susp):
    assert db_normalize(susp("(\\ #1 #1) (\\ #1 #1)"), 50).status is Status.FUEL_EXHAUSTED


def test_oracle_refuses_suspensions():
    with pytest.raises(CategoryError):
        db_normalize(Susp(c, 0, 0, NIL), 10)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_rmbeta_simulates_beta(seed):
    t = generate(GenConfig(seed=seed, max_size=24, mode=GenMode.SN_DEBRUIJN))
    expected = db_normalize(t, 100_000)
    assert expected.normalized
    assert normalize(t, RMBETA, engine.LEFTMOST_OUTERMOST, 100_000).result == expected.result


# --- SIMILARITY ---
def test_similarity_is_reflexive(susp):
    x = susp("[#1, 1, 0, (c, 0) :: nil]")
    assert similar(x, x)


def test_displaced_pair():
    left = env_of([(Susp(c, 0, 2, NIL), 3)])
    right = env_of([(Susp(c, 0, 5, NIL), 6)])
    assert similar(left, right)


def test_distinct_indices_are_not_similar():
    assert not similar(env_of([(c, 1)]), env_of([(c, 2)]))


def test_similarity_needs_one_category():
    with pytest.raises(CategoryError):
        similar(c, NIL)


# --- PARALLEL BETA ---
def test_par_successors_of_constant():
    assert par_successors(c) == frozenset({c})


def test_par_successors_of_redex(susp):
    found = par_successors(susp("(\\ #1) c"))
    assert susp("(\\ #1) c") in found
    assert susp("[#1, 1, 0, (c, 0) :: nil]") in found


def test_disjoint_redexes_contract_together(susp):
    found = par_successors(susp("((\\ #1) c) ((\\ #1) c)"))
    both = susp("[#1, 1, 0, (c, 0) :: nil] [#1, 1, 0, (c, 0) :: nil]")
    assert both in found
    assert len(found) == 4


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_diamond(seed):
    assert diamond_counterexample(generate(GenConfig(seed=seed, max_size=10))) is None

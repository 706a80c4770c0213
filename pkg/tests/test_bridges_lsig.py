import pytest
from hypothesis import given, strategies as st

from calculus import engine
from calculus.bridges import EnvTriple
from calculus.bridges.lsig import (
    ID,
    ONE,
    SHIFT,
    SIGMA,
    Closure,
    Comp,
    ConsS,
    LsigConst,
    LsigRule,
    SELF_SCOPING_MAP_AT,
    env_to_lsig,
    index_term,
    lsig_normalize,
    lsig_step_at,
    lsig_subst_to_triple,
    lsig_successors,
    lsig_to_db,
    lsig_to_susp,
    self_scoped,
    self_scoping_replay,
    shift_exponent,
    shift_power,
    sigma_joinable,
    susp_to_lsig,
)
from calculus.errors import BridgeError, ConstraintError
from calculus.properties import FuzzConfig, check_retraction
from calculus.rewrite import RM, normal_form, successors
from calculus.terms import NIL, Const, Index, Merge, Susp, env_of

c = Const("c")


def test_shift_powers():
    assert shift_power(0) == ID
    assert shift_power(2) == Comp(SHIFT, SHIFT)
    assert shift_exponent(shift_power(4)) == 4
    assert shift_exponent(ConsS(ONE, ID)) is None
    assert index_term(1) == ONE


def test_beta_then_lookup(lsig):
    assert lsig_normalize(lsig("(\\1) c")).result == LsigConst("c")


def test_sigma_excludes_beta(lsig):
    assert lsig_successors(lsig("(\\1) c"), SIGMA) == []


def test_constant_rule_only_fires_on_constants(lsig):
    assert [r.rule for r in lsig_successors(lsig("c[^]"), SIGMA)] == [LsigRule.CONST]
    assert LsigRule.CONST not in {r.rule for r in lsig_successors(lsig("(\\1)[c . id]"), SIGMA)}


def test_shift_cancels_cons(lsig):
    assert sigma_joinable(lsig("^ o (c . id)"), ID)


# --- SUSPENSIONS TO LAMBDA-SIGMA ---
def test_index_encoding(lsig):
    assert susp_to_lsig(Index(3)) == lsig("1[^2]")
    assert susp_to_lsig(Index(3)) == Closure(ONE, shift_power(2))


def test_environment_encoding():
    assert env_to_lsig(NIL, 0) == ID
    assert env_to_lsig(env_of([(c, 0)]), 0) == ConsS(LsigConst("c"), ID)
    assert env_to_lsig(env_of([(c, 0)]), 1) == Comp(ConsS(LsigConst("c"), ID), SHIFT)


def test_environment_level_is_checked():
    with pytest.raises(ConstraintError):
        env_to_lsig(env_of([(c, 2)]), 1)


def test_suspension_encoding():
    assert susp_to_lsig(Susp(c, 1, 0, env_of([(c, 0)]))) == Closure(LsigConst("c"), ConsS(LsigConst("c"), ID))


def test_merging_an_environment_keeps_its_translation():
    e = Merge(env_of([(Const("b"), 0)]), 0, 1, env_of([(c, 0)]))
    steps = successors(e, RM)
    assert [redex.at for redex in steps] == [()]
    after = engine.contract(e, steps[0])
    assert sigma_joinable(env_to_lsig(e, 0), env_to_lsig(after, 0))


# --- LAMBDA-SIGMA TO SUSPENSIONS ---
def test_shifted_one(lsig):
    assert lsig_to_susp(lsig("1[^ o ^]")) == Index(3)
    assert lsig_to_susp(lsig("1[^]")) == Index(2)


def test_one_under_identity_stays_a_suspension(lsig):
    assert lsig_to_susp(lsig("1[id]")) == Susp(Index(1), 0, 0, NIL)


def test_substitution_triples(lsig):
    assert lsig_subst_to_triple(ID) == EnvTriple(0, 0, NIL)
    assert lsig_subst_to_triple(SHIFT) == EnvTriple(0, 1, NIL)
    assert lsig_subst_to_triple(lsig("c . id")) == EnvTriple(1, 0, env_of([(c, 0)]))
    assert lsig_subst_to_triple(lsig("c . ^")) == EnvTriple(1, 1, env_of([(c, 1)]))


def test_composition_becomes_a_merge(lsig):
    triple = lsig_subst_to_triple(lsig("^ o (c . id)"))
    assert triple == EnvTriple(0, 0, Merge(NIL, 1, 1, env_of([(c, 0)])))
    assert normal_form(triple.env, RM) == NIL


def test_closures_do_not_decode(lsig):
    with pytest.raises(BridgeError):
        lsig_to_db(lsig("c[c . id]"))


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_translation_is_a_retraction(seed):
    outcome = check_retraction(FuzzConfig(seed=seed, max_size=24), 0)
    assert outcome.passed, outcome.detail


# --- SELF-SCOPED CLOSURES ---
def test_fixed_reduction_stays_well_scoped():
    produced = self_scoping_replay()
    assert len(produced) == 8
    assert not any(self_scoped(term) for term in produced)


def test_final_map_scopes_closure_over_itself():
    last = self_scoping_replay()[-1]
    assert self_scoped(lsig_step_at(last, SELF_SCOPING_MAP_AT, LsigRule.MAP))

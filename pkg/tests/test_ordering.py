import pytest
from hypothesis import given, strategies as st

from calculus import engine
from calculus.generator import GenConfig, generate_expression
from calculus.ordering import (
    STAR,
    AppT,
    ConsT,
    Lam,
    S,
    check_step_decrease,
    essence,
    eta,
    measure_table,
    mu,
    rpo_gt,
)
from calculus.rewrite import RM, RuleId, step_at, successors
from calculus.terms import NIL, App, Const, Index, Merge, Susp
from calculus.tree import subexpr_at

c = Const("c")
READ_C = Susp(c, 0, 0, NIL)


def test_mu():
    assert mu(c) == 0
    assert mu(READ_C) == 1
    assert mu(Merge(NIL, 0, 0, NIL)) == 1


def test_eta():
    assert eta(Index(3), 7) == 1
    assert all(eta(NIL, i) == 0 for i in range(5))
    assert eta(READ_C, 0) == 2


def test_essence():
    assert essence(App(Index(1), Index(2))) == AppT(STAR, STAR)
    assert essence(READ_C) == S(2, STAR, STAR)


def test_suspension_free_terms_have_no_s_nodes(susp):
    assert "s" not in str(essence(susp("(\\ (\\ \\ #1 #2 #3) b) c")))


def test_rpo():
    assert rpo_gt(S(2, STAR, STAR), STAR)
    assert not rpo_gt(STAR, STAR)
    assert rpo_gt(S(3, STAR, STAR), S(2, STAR, STAR))
    assert not rpo_gt(S(2, STAR, STAR), S(3, STAR, STAR))


def test_reading_a_constant_decreases():
    report = check_step_decrease(READ_C, c)
    assert report.ok
    assert report.as_dict() == {
        "essence_decreases": True,
        "mu_nonincreasing": True,
        "eta_nonincreasing_upto_16": True,
    }


def test_increase_is_reported():
    assert not check_step_decrease(c, READ_C).ok


def test_worked_merging_steps_decrease(susp):
    current = susp("[[\\ #1 #2 #3, 1, 0, (b, 0) :: nil], 1, 0, (c, 0) :: nil]")
    for rule, at in [(RuleId.M1, ()), (RuleId.M6, (1,)), (RuleId.M3, (1, 1))]:
        after = step_at(current, at, rule)
        assert check_step_decrease(subexpr_at(current, at), subexpr_at(after, at)).essence_decreases
        current = after


def test_measure_table():
    table = measure_table(READ_C, 3)
    assert table["mu"] == 1
    assert table["eta"] == [2, 2, 2, 2]
    assert table["essence"] == "s2(*, *)"


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_every_rm_instance_decreases(seed):
    x = generate_expression(GenConfig(seed=seed, max_size=20, allow_metavars=True))
    for redex in successors(x, RM):
        after = engine.contract(x, redex)
        report = check_step_decrease(subexpr_at(x, redex.at), subexpr_at(after, redex.at), 8)
        assert report.ok, (redex.rule, redex.at)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_rpo_is_irreflexive(seed):
    e = essence(generate_expression(GenConfig(seed=seed, max_size=16)))
    assert not rpo_gt(e, e)


# --- ORDERING LAWS ---
small_measure_terms = st.recursive(
    st.just(STAR),
    lambda inner: st.one_of(
        st.builds(Lam, inner),
        st.builds(AppT, inner, inner),
        st.builds(ConsT, inner, inner),
        st.builds(S, st.integers(min_value=1, max_value=3), inner, inner),
    ),
    max_leaves=6,
)
generated_essences = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: essence(generate_expression(GenConfig(seed=seed, max_size=10)))
)
measure_terms = st.one_of(small_measure_terms, generated_essences)

CONTEXTS = {
    "lam": lambda hole, other: Lam(hole),
    "app-left": lambda hole, other: AppT(hole, other),
    "app-right": lambda hole, other: AppT(other, hole),
    "cons-left": lambda hole, other: ConsT(hole, other),
    "cons-right": lambda hole, other: ConsT(other, hole),
    "s-left": lambda hole, other: S(2, hole, other),
    "s-right": lambda hole, other: S(2, other, hole),
}


@given(measure_terms, measure_terms, measure_terms)
def test_rpo_is_transitive(a, b, c_):
    if rpo_gt(a, b) and rpo_gt(b, c_):
        assert rpo_gt(a, c_)


def test_rpo_chain():
    top, middle, bottom = S(3, STAR, STAR), S(2, Lam(STAR), STAR), AppT(STAR, STAR)
    assert rpo_gt(top, middle) and rpo_gt(middle, bottom)
    assert rpo_gt(top, bottom)


@pytest.mark.parametrize("context", list(CONTEXTS))
@given(a=measure_terms, b=measure_terms, other=measure_terms)
def test_rpo_is_closed_under_contexts(context, a, b, other):
    fill = CONTEXTS[context]
    if rpo_gt(a, b):
        assert rpo_gt(fill(a, other), fill(b, other))


@pytest.mark.parametrize("context", list(CONTEXTS))
def test_smaller_s_index_decreases_in_context(context):
    fill = CONTEXTS[context]
    assert rpo_gt(fill(S(3, STAR, STAR), STAR), fill(S(2, STAR, STAR), STAR))

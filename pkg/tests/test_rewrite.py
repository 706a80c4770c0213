import pytest
from hypothesis import given, strategies as st

from calculus import engine
from calculus.engine import Status, Strategy, StrategyKind, TraceStep
from calculus.errors import ConfigurationError, RewriteError
from calculus.generator import GenConfig, generate, generate_expression, metavar_peak
from calculus.rewrite import (
    R,
    RBETA_DERIVED,
    RM,
    RMBETA,
    RuleId,
    head_normalize,
    joinable,
    normal_form,
    normalize,
    preset,
    reduction_graph,
    redexes,
    replay_trace,
    rule_apply,
    step_at,
)
from calculus.syntax import parse
from calculus.terms import NIL, Abs, App, Const, Index, Merge, MetaVar, Susp, env_of, is_debruijn, is_simple

b, c = Const("b"), Const("c")

# The worked reduction of ((\ (\ \ #1 #2 #3) t2) t3) with t2 = b and t3 = c.
START = "(\\ (\\ \\ #1 #2 #3) b) c"
WORKED = [
    (RuleId.BETA_S, (), "[(\\ \\ #1 #2 #3) b, 1, 0, (c, 0) :: nil]"),
    (RuleId.BETA_S, (0,), "[[\\ #1 #2 #3, 1, 0, (b, 0) :: nil], 1, 0, (c, 0) :: nil]"),
    (RuleId.M1, (), "[\\ #1 #2 #3, 2, 0, {(b, 0) :: nil, 0, 1, (c, 0) :: nil}]"),
    (RuleId.M6, (1,), "[\\ #1 #2 #3, 2, 0, ([b, 1, 0, (c, 0) :: nil], 0) :: {nil, 0, 1, (c, 0) :: nil}]"),
    (RuleId.M3, (1, 1), "[\\ #1 #2 #3, 2, 0, ([b, 1, 0, (c, 0) :: nil], 0) :: (c, 0) :: nil]"),
]


def test_worked_trace_step_by_step(susp):
    current = susp(START)
    for rule, at, expected in WORKED:
        current = step_at(current, at, rule)
        assert current == susp(expected)


def test_worked_start_has_two_beta_redexes(susp):
    found = [(at, rule) for at, rule in redexes(susp(START), RMBETA) if rule is RuleId.BETA_S]
    assert sorted(found) == [((), RuleId.BETA_S), ((0, 0), RuleId.BETA_S)]


def test_worked_normal_form(susp):
    trace = normalize(susp(START), RMBETA, engine.LEFTMOST_OUTERMOST, 1000)
    assert trace.normalized
    assert trace.result == susp("\\ #1 b c")


def test_combined_environment_reaches_rm_normal_form(susp):
    assert normal_form(susp(WORKED[-1][2]), RM) == susp("\\ #1 b c")


def test_combined_environment_reaches_the_suspended_head_form(susp):
    # lambda (#1 [[t2, 1, 0, (t3, 0) :: nil], 0, 1, nil]) [t3, 0, 1, nil], as read off
    # the combined environment by hand with t2 = b and t3 = c.
    trace = head_normalize(susp(WORKED[-1][2]), 100)
    assert trace.normalized
    assert trace.result == susp("\\ #1 [[b, 1, 0, (c, 0) :: nil], 0, 1, nil] [c, 0, 1, nil]")


def test_head_normalize_leaves_head_normal_terms():
    trace = head_normalize(c, 10)
    assert trace.result == c and trace.step_count == 0


def test_head_normalize_agrees_with_beta_on_head(susp):
    assert head_normalize(susp("(\\ #1) c"), 10).result == c


# --- SINGLE RULES ---
def test_beta_s(susp):
    assert rule_apply(RuleId.BETA_S, susp("(\\ #1) c")) == susp("[#1, 1, 0, (c, 0) :: nil]")


def test_m1_combines_environments(susp):
    before = susp("[[\\ #1 #2 #3, 1, 0, (b, 0) :: nil], 1, 0, (c, 0) :: nil]")
    assert rule_apply(RuleId.M1, before) == susp("[\\ #1 #2 #3, 2, 0, {(b, 0) :: nil, 0, 1, (c, 0) :: nil}]")


def test_rule_without_match():
    assert rule_apply(RuleId.R1, c) is None


def test_redexes():
    assert redexes(c, RM) == []
    assert redexes(Susp(c, 0, 0, NIL), RM) == [((), RuleId.R1)]


def test_step_at(susp):
    assert step_at(susp("\\ [c, 0, 0, nil]"), (0,), RuleId.R1) == susp("\\ c")


def test_step_at_rejects_non_matching_rule(susp):
    with pytest.raises(RewriteError):
        step_at(susp("\\ [c, 0, 0, nil]"), (0,), RuleId.R2)


def test_step_at_rejects_bad_path(susp):
    with pytest.raises(RewriteError):
        step_at(susp("\\ c"), (1,), RuleId.R1)


# --- NORMALIZATION ---
def test_normal_form_takes_no_steps():
    trace = normalize(c, RM, engine.LEFTMOST_INNERMOST, 0)
    assert trace.status is Status.NORMAL_FORM and trace.step_count == 0


def test_omega_runs_out_of_fuel(susp):
    trace = normalize(susp("(\\ #1 #1) (\\ #1 #1)"), RMBETA, engine.LEFTMOST_OUTERMOST, 50)
    assert trace.status is Status.FUEL_EXHAUSTED
    assert trace.step_count == 50


def test_beta_rule_sets_need_fuel(susp):
    with pytest.raises(ConfigurationError):
        normalize(susp("(\\ #1) c"), RMBETA)


def test_r3_prime_refused_with_graftable_metavars():
    with pytest.raises(ConfigurationError):
        normalize(Susp(MetaVar("X"), 0, 0, NIL), RBETA_DERIVED, fuel=10)


def test_logical_mode_reads_through_metavars():
    x = Susp(MetaVar("X"), 1, 0, env_of([(c, 0)]))
    assert normal_form(x, RM) == x
    assert normal_form(x, RM.logical()) == MetaVar("X")
    assert preset("rm", logical_mode=True) == RM.logical()


def test_unknown_preset():
    with pytest.raises(ConfigurationError):
        preset("rmx")


@pytest.mark.parametrize("strategy", ["lo", "li", "head", "rand:0", "rand:7"])
def test_strategies_agree_on_rm_normal_form(susp, strategy):
    x = susp("[[\\ #1 #2 #3, 1, 0, (b, 0) :: nil], 1, 0, (c, 0) :: nil]")
    assert normalize(x, RM, Strategy.parse(strategy)).result == susp("\\ #1 b c")


def test_strategy_parsing():
    assert Strategy.parse("rand:7") == Strategy(StrategyKind.RANDOM_SEEDED, 7)
    assert str(Strategy.parse("li")) == "li"
    with pytest.raises(ConfigurationError):
        Strategy.parse("rand")
    with pytest.raises(ConfigurationError):
        Strategy.parse("outermost")


def test_random_strategy_is_deterministic(susp):
    x = susp(START)
    first = normalize(x, RMBETA, Strategy.parse("rand:3"), 1000)
    second = normalize(x, RMBETA, Strategy.parse("rand:3"), 1000)
    assert [s.at for s in first.steps] == [s.at for s in second.steps]


# --- TRACES AND GRAPHS ---
def test_replay_reproduces_trace(susp):
    trace = normalize(susp(START), RMBETA, engine.LEFTMOST_OUTERMOST, 1000)
    assert replay_trace(trace) == trace.expressions()


def test_replay_detects_tampering(susp):
    trace = normalize(susp(START), RMBETA, engine.LEFTMOST_OUTERMOST, 1000)
    first = trace.steps[0]
    trace.steps[0] = TraceStep(first.rule, first.at, c)
    with pytest.raises(RewriteError):
        replay_trace(trace)


def test_reduction_graph_of_normal_form():
    graph = reduction_graph(c, RM)
    assert list(graph.nodes) == [c]
    assert graph.graph["complete"]


def test_reduction_graph_edges_carry_rules(susp):
    graph = reduction_graph(susp("[c, 0, 0, nil]"), RM)
    (_, _, data), = graph.edges(data=True)
    assert data["rule"] == RuleId.R1


def test_reduction_graph_cap(susp):
    graph = reduction_graph(susp("(\\ #1 #1) (\\ #1 #1)"), RMBETA, max_nodes=5)
    assert not graph.graph["complete"]


# --- JOINABILITY ---
def test_join_is_reflexive():
    assert joinable(c, c, RM, 0)


def test_metavar_peak_needs_merging():
    left, right = metavar_peak(Const("a"), b)
    assert joinable(left, right, RM)
    verdict = joinable(left, right, R)
    assert not verdict and not verdict.inconclusive


def test_metavar_peak_comes_from_the_source_term():
    source = parse("(\\ (\\ X) a) b")
    left, right = metavar_peak(Const("a"), b)
    graph = reduction_graph(source, RMBETA, 10_000)
    assert left in graph.nodes and right in graph.nodes


@pytest.mark.parametrize(
    "e1, nl1, ol2, e2, nl2, ol3, e3",
    [
        ([("a", 1)], 1, 1, [("b", 0)], 0, 1, [("c", 0)]),
        ([("a", 2), ("b", 0)], 2, 1, [("c", 1)], 1, 2, [("d", 1), ("f", 0)]),
    ],
)
def test_merge_associativity(e1, nl1, ol2, e2, nl2, ol3, e3):
    def env(items):
        return env_of([(Const(name), n) for name, n in items])

    left = Merge(Merge(env(e1), nl1, ol2, env(e2)), nl2 + max(nl1 - ol2, 0), ol3, env(e3))
    right = Merge(env(e1), nl1, ol2 + max(ol3 - nl2, 0), Merge(env(e2), nl2, ol3, env(e3)))
    a, b_ = normal_form(left, RM), normal_form(right, RM)
    assert a == b_
    assert is_simple(a)


def test_abs_and_app_build_terms():
    assert App(Abs(Index(1)), c) == parse("(\\ #1) c")


# --- NORMAL FORMS ---
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_reading_rules_suffice_for_simple_environments(seed):
    x = generate_expression(GenConfig(seed=seed, max_size=24, simple_envs=True))
    assert normal_form(x, R) == normal_form(x, RM)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_rm_normal_forms_are_debruijn_terms(seed):
    t = generate(GenConfig(seed=seed, max_size=24))
    assert is_debruijn(normal_form(t, RM))

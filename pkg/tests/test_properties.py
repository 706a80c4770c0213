import logging

import pandas as pd
import pytest

from calculus import engine, properties
from calculus.properties import (
    GROUPS,
    SUITES,
    CaseOutcome,
    FuzzConfig,
    Suite,
    agreement_corpus,
    env_step_problem,
    envs_agree,
    normal_forms_by_calculus,
    run_suite,
    suite_names,
    summarize,
)
from calculus.errors import RewriteError
from calculus.generator import CHURCH_MULT, church
from calculus.rewrite import RM, successors
from calculus.terms import NIL, Const, Index, Merge, Susp, apply_all, env_of

SMALL = FuzzConfig(cases=4, seed=3, max_size=12, max_level=4, workers=2)


@pytest.mark.parametrize("name", [n for n in SUITES if n != "self-scoping"])
def test_suite_has_no_counterexamples(name):
    frame = run_suite(name, SMALL)
    assert len(frame) == 4
    assert list(frame["case"]) == [0, 1, 2, 3]
    failed = frame[~frame["passed"] & ~frame["inconclusive"]]
    assert failed.empty, failed.to_dict("records")


def test_self_scoping_suite_runs_once():
    frame = run_suite("self-scoping", SMALL)
    assert len(frame) == 1
    assert frame["passed"].all()


def test_suite_names():
    assert suite_names("diamond") == ["diamond"]
    assert suite_names("bridges") == GROUPS["bridges"]
    assert suite_names("all") == list(SUITES)
    with pytest.raises(KeyError):
        suite_names("nonsense")


def test_agreement_count_is_capped():
    assert SUITES["agreement"].count(FuzzConfig(cases=10_000)) == len(agreement_corpus())


def test_every_calculus_multiplies():
    forms = normal_forms_by_calculus(apply_all(CHURCH_MULT, church(2), church(3)), 10_000)
    assert set(forms) == {"susp", "lu", "ls", "lsig"}
    assert all(form == church(6) for form in forms.values())


def test_envs_agree():
    c = Const("c")
    assert envs_agree(0, 0, Merge(NIL, 1, 1, env_of([(c, 0)])), NIL)
    assert not envs_agree(1, 0, env_of([(c, 0)]), env_of([(Const("b"), 0)]))


def test_errors_become_failures(monkeypatch, caplog):
    def broken(cfg, case):
        raise RewriteError("boom")

    monkeypatch.setitem(properties.SUITES, "broken", Suite("broken", broken))
    with caplog.at_level(logging.WARNING, logger="calculus.properties"):
        frame = run_suite("broken", FuzzConfig(cases=2, workers=1))
    assert not frame["passed"].any()
    assert frame["detail"].iloc[0] == "RewriteError: boom"
    assert "case 0 failed" in caplog.text


def test_summarize():
    frame = pd.DataFrame(
        [
            {"suite": "a", "case": 0, "passed": True, "inconclusive": False, "detail": "", "expression": ""},
            {"suite": "a", "case": 1, "passed": False, "inconclusive": False, "detail": "bad", "expression": "#1"},
            {"suite": "b", "case": 0, "passed": False, "inconclusive": True, "detail": "frontier", "expression": "c"},
        ]
    )
    summary = summarize(frame).set_index("suite")
    assert summary.loc["a", "failures"] == 1
    assert summary.loc["a", "first_case"] == 1
    assert summary.loc["a", "first_counterexample"] == "bad :: #1"
    assert summary.loc["b", "failures"] == 0
    assert summary.loc["b", "inconclusive"] == 1
    assert summary.loc["b", "first_counterexample"] == ""


def test_case_outcome_defaults():
    assert CaseOutcome(0, True).detail == ""


def test_nested_environment_steps_are_measured():
    c = Const("c")
    x = Susp(Index(1), 1, 0, Merge(env_of([(c, 0)]), 0, 0, NIL))
    (redex,) = successors(x, RM)
    assert redex.at == (1,)
    assert env_step_problem(x, engine.contract(x, redex), redex.at) is None
    shorter = Susp(Index(1), 1, 0, NIL)
    assert env_step_problem(x, shorter, (1,)) == "changes the length at [1] from 1 to 0"
    assert env_step_problem(x, shorter, ()) is None
    higher = Susp(Index(1), 1, 0, env_of([(c, 1)]))
    assert env_step_problem(x, higher, (1,)) == "raises the level at [1] from 0 to 1"

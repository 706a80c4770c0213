"""
Property suites
===============

Each suite checks one metatheoretic property on a stream of generated cases.
A case is a pure function of (suite configuration, case number); `run_suite`
shards cases over a thread pool and reports them sorted by case number.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Callable, Dict, List, Optional

import pandas as pd

from calculus import engine
from calculus.bridges import lsig as sg
from calculus.bridges.ls import ls_normalize, ls_successors, ls_to_db, ls_from_db, ls_to_susp
from calculus.bridges.lu import LuRule, lu_from_db, lu_normalize, lu_successors, lu_to_db, lu_to_susp
from calculus.errors import SuspCalcError
from calculus.generator import (
    GenConfig,
    GenMode,
    case_seed,
    generate,
    generate_env,
    generate_expression,
    generate_simple_env,
    metavar_peak,
    similar_pair,
    sn_corpus,
)
from calculus.oracle import db_normalize, diamond_counterexample, similar
from calculus.ordering import DEFAULT_ETA_BOUND, check_step_decrease
from calculus.rewrite import (
    DEFAULT_FRONTIER,
    DEFAULT_RM_FUEL,
    R,
    RBETA_DERIVED,
    RM,
    RMBETA,
    joinable,
    normal_form,
    normalize,
    reduction_graph,
    successors,
)
from calculus.syntax import to_text
from calculus.terms import (
    Abs,
    App,
    Const,
    Index,
    Merge,
    Susp,
    apply_all,
    check_well_formed,
    env_drop,
    env_len,
    env_lev,
    is_env,
    is_simple,
)
from calculus.tree import ROOT, Path, subexpr_at, walk

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FuzzConfig:
    cases: int = 1_000
    seed: int = 0
    max_size: int = 40
    max_level: int = 8
    fuel: int = DEFAULT_RM_FUEL
    frontier: int = DEFAULT_FRONTIER
    sigma_fuel: int = sg.DEFAULT_SIGMA_FUEL
    eta_bound: int = DEFAULT_ETA_BOUND
    logical_mode: bool = False
    workers: int = 4

    def gen(self, case: int, **overrides) -> GenConfig:
        base = GenConfig(seed=case_seed(self.seed, case), max_size=self.max_size, max_level=self.max_level)
        return replace(base, **overrides)


@dataclass(frozen=True)
class CaseOutcome:
    case: int
    passed: bool
    inconclusive: bool = False
    detail: str = ""
    expression: str = ""


def _fail(case, x, detail) -> CaseOutcome:
    return CaseOutcome(case, False, detail=detail, expression=_show(x))


def _show(x) -> str:
    try:
        return to_text(x)
    except SuspCalcError:
        return repr(x)


def _strategies(cfg: FuzzConfig, case: int) -> List[engine.Strategy]:
    randoms = [engine.random_strategy(case_seed(cfg.seed + 1 + j, case)) for j in range(5)]
    return [engine.LEFTMOST_OUTERMOST, engine.LEFTMOST_INNERMOST] + randoms


def _reader(ol: int, nl: int, env) -> Susp:
    """A suspension reading every binding of `env` once."""
    return Susp(apply_all(*(Index(i) for i in range(1, ol + 2))), ol, nl, env)


def envs_agree(ol: int, nl: int, e1, e2) -> bool:
    """Similar RM-normal forms, or identical RM-normal forms of a suspension reading every binding."""
    n1, n2 = normal_form(e1, RM), normal_form(e2, RM)
    if similar(n1, n2):
        return True
    return normal_form(_reader(ol, nl, e1), RM) == normal_form(_reader(ol, nl, e2), RM)


# --- SUSPENSION CALCULUS SUITES ---
def check_termination(cfg: FuzzConfig, case: int) -> CaseOutcome:
    x = generate_expression(cfg.gen(case, allow_metavars=True))
    for strategy in _strategies(cfg, case):
        trace = normalize(x, RM, strategy, cfg.fuel)
        if not trace.normalized:
            return _fail(case, x, f"no normal form within {cfg.fuel} steps under {strategy}")
        before = x
        for number, step in enumerate(trace.steps, start=1):
            report = check_step_decrease(subexpr_at(before, step.at), subexpr_at(step.result, step.at), cfg.eta_bound)
            if not report.ok:
                return _fail(case, before, f"step {number} ({step.rule.value}) under {strategy}: {report.as_dict()}")
            before = step.result
    return CaseOutcome(case, True)


def check_confluence(cfg: FuzzConfig, case: int) -> CaseOutcome:
    x = generate_expression(cfg.gen(case, allow_metavars=True))
    forms = {str(s): normalize(x, RM, s, cfg.fuel).result for s in _strategies(cfg, case)}
    expected = forms[str(engine.LEFTMOST_OUTERMOST)]
    for name, form in forms.items():
        if form != expected:
            return _fail(case, x, f"strategy {name} reaches {_show(form)}, lo reaches {_show(expected)}")
    for redex in successors(x, RM):
        reduct = engine.contract(x, redex)
        if normal_form(reduct, RM, cfg.fuel) != expected:
            return _fail(case, x, f"successor by {redex.rule.value} at {list(redex.at)} has another normal form")
    return CaseOutcome(case, True)


def env_step_problem(before, after, at: Path) -> Optional[str]:
    """What a step at `at` does wrong to the environment found there, if one is."""
    old, new = subexpr_at(before, at), subexpr_at(after, at)
    if not is_env(old):
        return None
    if env_len(new) != env_len(old):
        return f"changes the length at {list(at)} from {env_len(old)} to {env_len(new)}"
    if env_lev(new) > env_lev(old):
        return f"raises the level at {list(at)} from {env_lev(old)} to {env_lev(new)}"
    return None


def check_preservation(cfg: FuzzConfig, case: int) -> CaseOutcome:
    x = generate_expression(cfg.gen(case, allow_metavars=cfg.logical_mode))
    rules = RMBETA.logical() if cfg.logical_mode else RMBETA
    for redex in successors(x, rules):
        reduct = engine.contract(x, redex)
        verdict = check_well_formed(reduct)
        where = f"{redex.rule.value} at {list(redex.at)}"
        if not verdict.ok:
            return _fail(case, x, f"{where} breaks {verdict.violations[0].clause.value}")
        problem = env_step_problem(x, reduct, redex.at) or env_step_problem(x, reduct, ROOT)
        if problem:
            return _fail(case, x, f"{where} {problem}")
    return CaseOutcome(case, True)


def check_simulation(cfg: FuzzConfig, case: int) -> CaseOutcome:
    t = generate(cfg.gen(case, mode=GenMode.SN_DEBRUIJN))
    expected = db_normalize(t, cfg.fuel)
    if not expected.normalized:
        return _fail(case, t, "beta oracle ran out of fuel")
    got = normalize(t, RMBETA, engine.LEFTMOST_OUTERMOST, cfg.fuel)
    if not got.normalized:
        return _fail(case, t, "rmbeta ran out of fuel")
    if got.result != expected.result:
        return _fail(case, t, f"rmbeta gives {_show(got.result)}, beta gives {_show(expected.result)}")
    return CaseOutcome(case, True)


def check_similarity(cfg: FuzzConfig, case: int) -> CaseOutcome:
    a, b = similar_pair(cfg.gen(case))
    if not similar(a, b):
        return _fail(case, a, "generated pair is not similar")
    if normal_form(a, RM) != normal_form(b, RM):
        return _fail(case, a, f"normal forms differ from those of {_show(b)}")
    if isinstance(a, Susp):
        if not is_simple(normal_form(a.env, RM)):
            return _fail(case, a, "environment normal form is not simple")
        if not envs_agree(a.ol, a.nl, a.env, b.env):
            return _fail(case, a, "environments disagree after normalization")
    return CaseOutcome(case, True)


def check_grafting(cfg: FuzzConfig, case: int) -> CaseOutcome:
    if case == 0:
        outcome = _check_metavar_peak()
        if outcome is not None:
            return outcome
    t = generate(cfg.gen(case, mode=GenMode.SN_DEBRUIJN, allow_metavars=True, max_size=min(cfg.max_size, 24)))
    seeds = [case_seed(cfg.seed + 7, case), case_seed(cfg.seed + 11, case)]
    lengths = [s % 21 for s in seeds]
    u, v = (normalize(t, RMBETA, engine.random_strategy(s), n).result for s, n in zip(seeds, lengths))
    verdict = joinable(u, v, RMBETA, cfg.fuel, cfg.frontier)
    if verdict.inconclusive:
        return CaseOutcome(case, False, inconclusive=True, detail="search frontier reached", expression=_show(t))
    if not verdict:
        return _fail(case, t, f"reducts {_show(u)} and {_show(v)} do not join")
    return CaseOutcome(case, True)


def _check_metavar_peak() -> Optional[CaseOutcome]:
    a, b = metavar_peak(Const("a"), Const("b"))
    if not joinable(a, b, RM):
        return _fail(0, a, "the meta variable peak does not join under rm")
    under_r = joinable(a, b, R)
    if under_r or under_r.inconclusive:
        return _fail(0, a, "the meta variable peak is not refuted under r")
    return None


def check_diamond(cfg: FuzzConfig, case: int) -> CaseOutcome:
    x = generate(cfg.gen(case, max_size=min(cfg.max_size, 12)))
    pair = diamond_counterexample(x)
    if pair is not None:
        return _fail(case, x, f"{_show(pair[0])} and {_show(pair[1])} have no common parallel successor")
    return CaseOutcome(case, True)


def check_pruning(cfg: FuzzConfig, case: int) -> CaseOutcome:
    gen = cfg.gen(case, allow_metavars=True, max_size=min(cfg.max_size, 20))
    e1 = generate_env(gen)
    length = gen.seed % 4
    e2 = generate_simple_env(replace(gen, seed=case_seed(gen.seed, 1)), length)
    slack = gen.seed % 3
    vacuous = Merge(e1, env_lev(e1) + length + slack, length, e2)
    if normal_form(vacuous, RM) != normal_form(e1, RM):
        return _fail(case, vacuous, "a vacuous merge does not reduce like its first environment")
    if length:
        nl1 = env_lev(e1) + 1 + slack
        i = 1 + gen.seed % min(nl1 - env_lev(e1), length)
        full = Merge(e1, nl1, length, e2)
        pruned = Merge(e1, nl1 - i, length - i, env_drop(e2, i))
        if normal_form(full, RM) != normal_form(pruned, RM):
            return _fail(case, full, f"pruning {i} bindings changes the normal form")
    return CaseOutcome(case, True)


# --- BRIDGE SUITES ---
def check_retraction(cfg: FuzzConfig, case: int) -> CaseOutcome:
    t = generate(cfg.gen(case))
    back = sg.lsig_to_susp(sg.susp_to_lsig(t))
    if back != t:
        return _fail(case, t, f"round trip through lambda-sigma gives {_show(back)}")
    return CaseOutcome(case, True)


def _one_step_reducts(x, rules):
    return {engine.contract(x, redex) for redex in successors(x, rules)}


def check_lambda_s(cfg: FuzzConfig, case: int) -> CaseOutcome:
    a = generate(cfg.gen(case, mode=GenMode.LS_EXPR, max_size=min(cfg.max_size, 20)))
    image = ls_to_susp(a)
    reducts = _one_step_reducts(image, RBETA_DERIVED)
    for redex in ls_successors(a):
        b = engine.contract(a, redex)
        if ls_to_susp(b) not in reducts:
            return _fail(case, a, f"{redex.rule.value} at {list(redex.at)} is not a single suspension step")
    return CaseOutcome(case, True)


def check_lambda_upsilon(cfg: FuzzConfig, case: int) -> CaseOutcome:
    a = generate(cfg.gen(case, mode=GenMode.LU_EXPR, max_size=min(cfg.max_size, 20)))
    image = lu_to_susp(a)
    reducts = _one_step_reducts(image, RBETA_DERIVED)
    for redex in lu_successors(a):
        b = engine.contract(a, redex)
        where = f"{redex.rule.value} at {list(redex.at)}"
        if redex.rule is LuRule.RVAR_LIFT:
            if normal_form(image, RM) != normal_form(lu_to_susp(b), RM):
                return _fail(case, a, f"{where}: translations have different normal forms")
        elif lu_to_susp(b) not in reducts:
            return _fail(case, a, f"{where} is not a single suspension step")
    return CaseOutcome(case, True)


def check_lambda_sigma(cfg: FuzzConfig, case: int) -> CaseOutcome:
    small = min(cfg.max_size, 20)
    t = generate(cfg.gen(case, max_size=small))
    for redex in successors(t, RM):
        u, v = sg.susp_to_lsig(t), sg.susp_to_lsig(engine.contract(t, redex))
        verdict = sg.sigma_joinable(u, v, cfg.sigma_fuel)
        if verdict is None:
            return CaseOutcome(case, False, inconclusive=True, detail="sigma fuel exhausted", expression=_show(t))
        if not verdict:
            return _fail(case, t, f"{redex.rule.value} at {list(redex.at)}: translations are not sigma-joinable")
    e = generate_env(cfg.gen(case, max_size=small))
    level = env_lev(e)
    for redex in successors(e, RM):
        u, v = sg.env_to_lsig(e, level), sg.env_to_lsig(engine.contract(e, redex), level)
        verdict = sg.sigma_joinable(u, v, cfg.sigma_fuel)
        if verdict is None:
            return CaseOutcome(case, False, inconclusive=True, detail="sigma fuel exhausted", expression=_show(e))
        if not verdict:
            return _fail(case, e, f"{redex.rule.value} at {list(redex.at)}: environment translations are not sigma-joinable")
    a = generate(cfg.gen(case, mode=GenMode.LSIG_EXPR, max_size=small))
    for redex in sg.lsig_successors(a, sg.SIGMA):
        b = engine.contract(a, redex)
        where = f"{redex.rule.value} at {list(redex.at)}"
        if sg.is_subst(a):
            ta, tb = sg.lsig_subst_to_triple(a), sg.lsig_subst_to_triple(b)
            if (ta.ol, ta.nl) != (tb.ol, tb.nl):
                return _fail(case, a, f"{where} changes the embedding levels")
            if not envs_agree(ta.ol, ta.nl, ta.env, tb.env):
                return _fail(case, a, f"{where}: environments disagree")
        elif normal_form(sg.lsig_to_susp(a), RM) != normal_form(sg.lsig_to_susp(b), RM):
            return _fail(case, a, f"{where}: translations are not rm-joinable")
    return CaseOutcome(case, True)


@lru_cache(maxsize=1)
def agreement_corpus():
    return tuple(sn_corpus())


def normal_forms_by_calculus(t, fuel: int) -> Dict[str, object]:
    """The beta-normal form of a pure term as computed by every calculus, decoded back."""
    results = {
        "susp": normalize(t, RMBETA, engine.LEFTMOST_OUTERMOST, fuel),
        "lu": lu_normalize(lu_from_db(t), fuel=fuel),
        "ls": ls_normalize(ls_from_db(t), fuel=fuel),
        "lsig": sg.lsig_normalize(sg.lsig_from_db(t), fuel=fuel),
    }
    decode = {"susp": lambda x: x, "lu": lu_to_db, "ls": ls_to_db, "lsig": sg.lsig_to_db}
    return {name: decode[name](trace.result) if trace.normalized else None for name, trace in results.items()}


def check_agreement(cfg: FuzzConfig, case: int) -> CaseOutcome:
    corpus = agreement_corpus()
    name, t = corpus[case % len(corpus)]
    expected = db_normalize(t, cfg.fuel)
    if not expected.normalized:
        return _fail(case, t, f"{name}: beta oracle ran out of fuel")
    try:
        forms = normal_forms_by_calculus(t, cfg.fuel)
    except SuspCalcError as e:
        return _fail(case, t, f"{name}: {e}")
    for calculus, form in forms.items():
        if form != expected.result:
            return _fail(case, t, f"{name}: {calculus} disagrees with the beta oracle")
    return CaseOutcome(case, True)


def beta_redex_in_own_env(x) -> bool:
    """Some suspension stands over a beta redex that also occurs inside its own environment."""
    for _, node in walk(x):
        if isinstance(node, Susp) and isinstance(node.term, App) and isinstance(node.term.fn, Abs):
            if any(sub == node.term for _, sub in walk(node.env)):
                return True
    return False


def check_self_scoping(cfg: FuzzConfig, case: int) -> CaseOutcome:
    produced = sg.self_scoping_replay()
    if any(sg.self_scoped(term) for term in produced):
        return _fail(case, produced[0], "the fixed reduction scopes a closure over itself too early")
    perverse = sg.lsig_step_at(produced[-1], sg.SELF_SCOPING_MAP_AT, sg.LsigRule.MAP)
    if not sg.self_scoped(perverse):
        return _fail(case, produced[-1], "the final (map) step does not scope the closure over itself")
    graph = reduction_graph(sg.lsig_to_susp(produced[0]), RMBETA, cfg.frontier)
    offending = next((node for node in graph.nodes if beta_redex_in_own_env(node)), None)
    if offending is not None:
        return _fail(case, offending, "a suspension stands over its own redex")
    if not graph.graph["complete"]:
        return CaseOutcome(case, False, inconclusive=True, detail="search frontier reached")
    return CaseOutcome(case, True)


# --- REGISTRY ---
@dataclass(frozen=True)
class Suite:
    name: str
    check: Callable[[FuzzConfig, int], CaseOutcome]
    count: Callable[[FuzzConfig], int] = lambda cfg: cfg.cases


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("termination", check_termination),
        Suite("confluence", check_confluence),
        Suite("preservation", check_preservation),
        Suite("simulation", check_simulation),
        Suite("similarity", check_similarity),
        Suite("grafting", check_grafting),
        Suite("diamond", check_diamond),
        Suite("pruning", check_pruning),
        Suite("retraction", check_retraction),
        Suite("lambda-s", check_lambda_s),
        Suite("lambda-upsilon", check_lambda_upsilon),
        Suite("lambda-sigma", check_lambda_sigma),
        Suite("agreement", check_agreement, lambda cfg: min(cfg.cases, len(agreement_corpus()))),
        Suite("self-scoping", check_self_scoping, lambda cfg: 1),
    )
}
GROUPS: Dict[str, List[str]] = {
    "bridges": ["retraction", "lambda-s", "lambda-upsilon", "lambda-sigma", "agreement"],
    "all": list(SUITES),
}


def suite_names(name: str) -> List[str]:
    if name in GROUPS:
        return GROUPS[name]
    if name not in SUITES:
        raise KeyError(name)
    return [name]


def _run_case(suite: Suite, cfg: FuzzConfig, case: int) -> CaseOutcome:
    try:
        return suite.check(cfg, case)
    except SuspCalcError as e:
        return CaseOutcome(case, False, detail=f"{type(e).__name__}: {e}")


def run_suite(name: str, cfg: FuzzConfig) -> pd.DataFrame:
    """Run every case of suite `name`; one row per case, sorted by case number."""
    suite = SUITES[name]
    cases = suite.count(cfg)
    logger.info("suite %s: %d cases, seed %d", name, cases, cfg.seed)
    with ThreadPoolExecutor(max_workers=max(cfg.workers, 1)) as pool:
        outcomes = list(pool.map(lambda case: _run_case(suite, cfg, case), range(cases)))
    outcomes.sort(key=lambda o: o.case)
    for outcome in outcomes:
        if not outcome.passed and not outcome.inconclusive:
            logger.warning("suite %s case %d failed: %s", name, outcome.case, outcome.detail)
    frame = pd.DataFrame([asdict(o) for o in outcomes], columns=["case", "passed", "inconclusive", "detail", "expression"])
    frame.insert(0, "suite", name)
    return frame


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Per-suite counts and the first counterexample."""
    rows = []
    for name, group in frame.groupby("suite", sort=False):
        failed = group[~group["passed"] & ~group["inconclusive"]]
        first = failed.iloc[0] if len(failed) else None
        rows.append(
            {
                "suite": name,
                "cases": len(group),
                "failures": len(failed),
                "inconclusive": int(group["inconclusive"].sum()),
                "first_case": None if first is None else int(first["case"]),
                "first_counterexample": "" if first is None else f"{first['detail']} :: {first['expression']}",
            }
        )
    return pd.DataFrame(rows)

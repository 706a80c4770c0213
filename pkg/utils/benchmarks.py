"""
Step-count benchmarks over the fixed term corpora.
"""

import logging
from typing import Iterable, List, Optional, Tuple

import pandas as pd

from calculus import dispatch, engine
from calculus.bridges.ls import ls_from_db
from calculus.bridges.lsig import lsig_from_db
from calculus.bridges.lu import lu_from_db
from calculus.generator import CORPORA
from calculus.syntax import Calculus

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["corpus", "term_id", "calculus", "ruleset", "strategy", "steps", "status"]

# (calculus, preset, strategies, encoder from a pure de Bruijn term)
SUSP_STRATEGIES = (engine.LEFTMOST_OUTERMOST, engine.LEFTMOST_INNERMOST, engine.HEAD_FIRST)
RUNS = (
    (Calculus.SUSP, "rmbeta", SUSP_STRATEGIES, None),
    (Calculus.SUSP, "rbeta", SUSP_STRATEGIES, None),
    (Calculus.SUSP, "beta", (engine.LEFTMOST_OUTERMOST,), None),
    (Calculus.LSIG, "lambda-sigma", (engine.LEFTMOST_OUTERMOST,), lsig_from_db),
    (Calculus.LU, "lambda-upsilon", (engine.LEFTMOST_OUTERMOST,), lu_from_db),
    (Calculus.LS, "ls", (engine.LEFTMOST_OUTERMOST,), ls_from_db),
    (Calculus.LS, "lse", (engine.LEFTMOST_OUTERMOST,), ls_from_db),
)


def load_corpus(name: str) -> List[Tuple[str, object]]:
    try:
        build = CORPORA[name]
    except KeyError:
        raise KeyError(f"unknown corpus {name!r}; choose one of {', '.join(CORPORA)}") from None
    return build()


def run_bench(corpus: str, fuel: int, terms: Optional[Iterable[Tuple[str, object]]] = None) -> pd.DataFrame:
    """Normalize every corpus term in every calculus; one row per (term, calculus, rule set, strategy)."""
    terms = list(terms) if terms is not None else load_corpus(corpus)
    logger.info("bench %s: %d terms, fuel %d", corpus, len(terms), fuel)
    rows = []
    for term_id, term in terms:
        for calculus, name, strategies, encode in RUNS:
            preset = dispatch.get_preset(calculus, name)
            start = encode(term) if encode else term
            for strategy in strategies:
                trace = dispatch.normalize(start, preset, strategy, fuel)
                rows.append(
                    {
                        "corpus": corpus,
                        "term_id": term_id,
                        "calculus": calculus.value,
                        "ruleset": name,
                        "strategy": str(strategy),
                        "steps": trace.step_count,
                        "status": trace.status.value,
                    }
                )
        logger.debug("bench %s: %s done", corpus, term_id)
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)


def mean_steps(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean steps of the normalizing runs per calculus, rule set and strategy."""
    finished = frame[frame["status"] == engine.Status.NORMAL_FORM.value]
    summary = finished.groupby(["calculus", "ruleset", "strategy"], as_index=False)["steps"].mean()
    return summary.rename(columns={"steps": "mean_steps"})

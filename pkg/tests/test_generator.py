from hypothesis import given, strategies as st

from calculus.generator import (
    GenConfig,
    GenMode,
    case_seed,
    church,
    church_corpus,
    deep_redex,
    deep_redex_corpus,
    generate,
    generate_expression,
    generate_simple_env,
    metavar_peak,
    sn_corpus,
)
from calculus.syntax import Calculus, calculus_of, parse
from calculus.terms import Const, Merge, env_len, has_constants, is_debruijn, is_simple, is_well_formed
from calculus.tree import walk


def test_generation_is_deterministic():
    cfg = GenConfig(seed=42, allow_metavars=True)
    assert generate(cfg) == generate(cfg)


def test_case_seeds_differ():
    assert case_seed(0, 0) != case_seed(0, 1)
    assert case_seed(0, 3) == case_seed(0, 3)


def test_church_numerals():
    assert church(0) == parse("\\ \\ #1")
    assert church(2) == parse("\\ \\ #2 (#2 #1)")


def test_deep_redex():
    assert deep_redex(2) == parse("(\\ #1 #1) ((\\ #1) #1)")


def test_corpus_sizes():
    assert len(church_corpus()) == 72
    assert len(deep_redex_corpus()) == 12
    corpus = sn_corpus()
    assert len(corpus) == 200
    assert len({name for name, _ in corpus}) == 200


def test_sn_corpus_is_pure():
    assert all(is_debruijn(t) and not has_constants(t) for _, t in sn_corpus())


def test_metavar_peak_is_well_formed():
    left, right = metavar_peak(Const("a"), Const("b"))
    assert is_well_formed(left) and is_well_formed(right)


@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=0, max_value=6))
def test_simple_env_has_requested_length(seed, length):
    e = generate_simple_env(GenConfig(seed=seed, max_size=24), length)
    assert env_len(e) == length
    assert is_simple(e) and is_well_formed(e)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_modes_pick_the_calculus(seed):
    assert calculus_of(generate(GenConfig(seed=seed, max_size=12, mode=GenMode.LU_EXPR))) is Calculus.LU
    assert calculus_of(generate(GenConfig(seed=seed, max_size=12, mode=GenMode.LS_EXPR))) is Calculus.LS
    assert calculus_of(generate(GenConfig(seed=seed, max_size=12, mode=GenMode.LSIG_EXPR))) is Calculus.LSIG
    assert is_debruijn(generate(GenConfig(seed=seed, max_size=12, mode=GenMode.SN_DEBRUIJN)))


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_simple_envs_leave_out_merges(seed):
    x = generate_expression(GenConfig(seed=seed, max_size=30, simple_envs=True))
    assert is_well_formed(x)
    assert not any(isinstance(node, Merge) for _, node in walk(x))

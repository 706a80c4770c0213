"""
Per-calculus entry points used by the command line: rule presets, normalization,
single steps and trace replay for the suspension calculus and its neighbours.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from calculus import engine, oracle, rewrite
from calculus.bridges import ls, lsig, lu
from calculus.engine import Strategy, Trace
from calculus.errors import ConfigurationError
from calculus.syntax import RULE_TYPES, Calculus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preset:
    """A named rule set of one calculus."""

    calculus: Calculus
    name: str
    rules: Sequence
    apply_rule: Callable
    has_beta: bool
    rule_set: Optional[rewrite.RuleSet] = None


def _susp(name: str, logical_mode: bool) -> Preset:
    rules = rewrite.preset(name, logical_mode)
    return Preset(Calculus.SUSP, rules.name, rules.ordered, rewrite.rule_apply, rules.has_beta, rules)


_BRIDGE_PRESETS: Dict[Calculus, Dict[str, Preset]] = {
    Calculus.LSIG: {
        "sigma": Preset(Calculus.LSIG, "sigma", lsig.SIGMA, lsig.lsig_rule_apply, False),
        "lambda-sigma": Preset(Calculus.LSIG, "lambda-sigma", lsig.LAMBDA_SIGMA, lsig.lsig_rule_apply, True),
    },
    Calculus.LU: {
        "upsilon": Preset(Calculus.LU, "upsilon", lu.UPSILON, lu.lu_rule_apply, False),
        "lambda-upsilon": Preset(Calculus.LU, "lambda-upsilon", lu.LAMBDA_UPSILON, lu.lu_rule_apply, True),
    },
    Calculus.LS: {
        "ls": Preset(Calculus.LS, "ls", ls.LS, ls.ls_rule_apply, True),
        "lse": Preset(Calculus.LS, "lse", ls.LS_E, ls.ls_rule_apply, True),
    },
}
BETA_ORACLE = Preset(Calculus.SUSP, oracle.BETA, (oracle.BETA,), oracle.beta_rule_apply, True)
DEFAULT_PRESET = {Calculus.SUSP: "rm", Calculus.LSIG: "lambda-sigma", Calculus.LU: "lambda-upsilon", Calculus.LS: "ls"}


def preset_names(calculus) -> List[str]:
    calculus = Calculus(calculus)
    if calculus is Calculus.SUSP:
        return list(rewrite.PRESETS) + [oracle.BETA]
    return list(_BRIDGE_PRESETS[calculus])


def get_preset(calculus, name: Optional[str] = None, logical_mode: bool = False) -> Preset:
    calculus = Calculus(calculus)
    name = name or DEFAULT_PRESET[calculus]
    if calculus is Calculus.SUSP:
        return BETA_ORACLE if name == oracle.BETA else _susp(name, logical_mode)
    if logical_mode:
        raise ConfigurationError("logical mode applies to the suspension calculus only")
    try:
        return _BRIDGE_PRESETS[calculus][name]
    except KeyError:
        choices = ", ".join(preset_names(calculus))
        raise ConfigurationError(f"unknown rule set {name!r} for {calculus.value}; choose one of {choices}") from None


def _fuel(preset: Preset, fuel: Optional[int]) -> int:
    if fuel is None:
        if preset.has_beta:
            raise ConfigurationError(f"rule set {preset.name} contains a beta rule and needs an explicit fuel")
        return rewrite.DEFAULT_RM_FUEL
    if fuel < 0:
        raise ConfigurationError("fuel must be a natural number")
    return fuel


def normalize(x, preset: Preset, strategy: Strategy = engine.LEFTMOST_OUTERMOST, fuel: Optional[int] = None) -> Trace:
    """Normalize `x` with `preset`, returning the full trace."""
    fuel = _fuel(preset, fuel)
    logger.info("normalizing with %s under %s, fuel %d", preset.name, strategy, fuel)
    if preset is BETA_ORACLE:
        if strategy != engine.LEFTMOST_OUTERMOST:
            raise ConfigurationError("the beta oracle reduces leftmost-outermost only")
        return oracle.db_normalize(x, fuel)
    if preset.rule_set is not None:
        return rewrite.normalize(x, preset.rule_set, strategy, fuel)
    return engine.rewrite(x, preset.rules, preset.apply_rule, strategy, fuel)


def rule_named(calculus, name: str):
    calculus = Calculus(calculus)
    if calculus is Calculus.SUSP and name == oracle.BETA:
        return oracle.BETA
    try:
        return RULE_TYPES[calculus](name)
    except ValueError:
        choices = ", ".join(r.value for r in RULE_TYPES[calculus])
        raise ConfigurationError(f"unknown rule {name!r} for {calculus.value}; choose one of {choices}") from None


def _apply_rule(calculus: Calculus) -> Callable:
    if calculus is Calculus.SUSP:
        return lambda rule, x: (oracle.beta_rule_apply if rule == oracle.BETA else rewrite.rule_apply)(rule, x)
    return {Calculus.LSIG: lsig.lsig_rule_apply, Calculus.LU: lu.lu_rule_apply, Calculus.LS: ls.ls_rule_apply}[calculus]


def step_at(x, calculus, at, rule):
    calculus = Calculus(calculus)
    return engine.step_at(x, at, rule_named(calculus, getattr(rule, "value", rule)), _apply_rule(calculus))


def replay(trace: Trace, calculus) -> list:
    """Re-execute a recorded trace; raises RewriteError at the first divergence."""
    return engine.replay(trace, _apply_rule(Calculus(calculus)))

"""
Bridges to neighbouring explicit substitution calculi.
"""

from dataclasses import dataclass

from calculus.terms import SuspEnv, SuspTerm, Susp


@dataclass(frozen=True)
class EnvTriple:
    """Old level, new level and environment: the parameters of a suspension."""

    ol: int
    nl: int
    env: SuspEnv

    def wrap(self, term: SuspTerm) -> Susp:
        return Susp(term, self.ol, self.nl, self.env)

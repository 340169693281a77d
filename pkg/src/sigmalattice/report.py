"""Structured verdicts returned by every law checker."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core import SigmaField


@dataclass(frozen=True)
class Claim:
    """One implication ``hypotheses => conclusion`` evaluated on an instance."""

    name: str
    hypotheses: tuple[tuple[str, bool], ...]
    conclusion: bool

    @property
    def hypotheses_hold(self) -> bool:
        return all(v for _, v in self.hypotheses)

    @property
    def holds(self) -> bool:
        return self.conclusion or not self.hypotheses_hold

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "hypotheses": {k: v for k, v in self.hypotheses},
            "conclusion": self.conclusion,
        }


@dataclass(frozen=True)
class LawReport:
    """Verdict of a law checker.

    ``claims[0]`` is the law itself; further claims are side statements the
    checker evaluates on the same instance (specialisations, companion
    implications). ``facts`` carries informational values and ``witness``
    pinpoints a failed equality of the primary claim.
    """

    law: str
    claims: tuple[Claim, ...]
    facts: tuple[tuple[str, Any], ...] = ()
    witness: tuple[tuple[str, Any], ...] | None = None

    @property
    def hypotheses(self) -> dict[str, bool]:
        return dict(self.claims[0].hypotheses)

    @property
    def hypotheses_hold(self) -> bool:
        return self.claims[0].hypotheses_hold

    @property
    def conclusion(self) -> bool:
        return self.claims[0].conclusion

    @property
    def holds(self) -> bool:
        """Every claim's implication holds (the soundness verdict)."""
        return all(c.holds for c in self.claims)

    def fact(self, name: str):
        return dict(self.facts)[name]

    def to_dict(self) -> dict:
        out = {
            "law": self.law,
            "hypotheses": self.hypotheses,
            "conclusion": self.conclusion,
            "holds": self.holds,
            "claims": [c.to_dict() for c in self.claims],
            "facts": {k: _jsonable(v) for k, v in self.facts},
        }
        if self.witness is not None:
            out["witness"] = {k: _jsonable(v) for k, v in self.witness}
        return out


def _jsonable(value):
    if isinstance(value, SigmaField):
        return [[str(o) for o in b] for b in value.blocks]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def claim(name: str, conclusion: bool, **hypotheses: bool) -> Claim:
    return Claim(name, tuple((k, bool(v)) for k, v in hypotheses.items()), bool(conclusion))


def equality_witness(lhs: SigmaField, rhs: SigmaField) -> tuple[tuple[str, Any], ...] | None:
    """Blocks of both sides plus the first pair of outcomes they treat differently."""
    if lhs == rhs:
        return None
    a, b = lhs.labels, rhs.labels
    sup = lhs.space.support
    for j in range(len(a)):
        for i in range(j):
            same_a = a[i] == a[j]
            if same_a != (b[i] == b[j]):
                return (
                    ("lhs", lhs),
                    ("rhs", rhs),
                    ("pair", [str(sup[i]), str(sup[j])]),
                    ("together_in", "lhs" if same_a else "rhs"),
                )
    return (("lhs", lhs), ("rhs", rhs))

"""Finite probability spaces and complete sigma-fields as partitions.

A complete sub-sigma-field of a finite space is determined, modulo null
sets, by the partition it induces on the positive-mass outcomes (the
support). :class:`SigmaField` stores that partition as a label tuple over
the support in restricted-growth form, so equality of sigma-fields is plain
tuple equality.

All probabilities are :class:`fractions.Fraction`. Internally a space also
keeps integer masses over a common denominator, which is what the partition
kernels consume.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from . import kernels
from .errors import (
    DuplicateLabel,
    NegativeWeight,
    NonUnitMass,
    NotAPartition,
    SpaceMismatch,
    UnknownOutcome,
)

Rational = Fraction
Event = frozenset
RandomVariable = Sequence[Any] | Mapping[Hashable, Any]


def to_rational(value) -> Fraction:
    """Exact conversion from int, Fraction or a ``"p/q"`` string; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact or boolean weight {value!r}")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational: {value!r}") from None
    return Fraction(value)


class ProbSpace:
    """A finite outcome list with exact weights summing to one.

    Zero weights are allowed; such outcomes are outside the support and never
    appear in any :class:`SigmaField`.
    """

    __slots__ = ("outcomes", "weights", "support", "support_index", "masses", "total", "_pos", "_hash")

    def __init__(self, outcomes: Iterable[Hashable], weights: Iterable[Any]):
        outcomes = tuple(outcomes)
        weights = tuple(to_rational(w) for w in weights)
        if len(outcomes) != len(weights):
            raise ValueError(f"{len(outcomes)} outcomes but {len(weights)} weights")
        if len(set(outcomes)) != len(outcomes):
            dup = next(o for o, c in _counts(outcomes).items() if c > 1)
            raise DuplicateLabel(f"duplicate outcome label {dup!r}")
        for o, w in zip(outcomes, weights):
            if w < 0:
                raise NegativeWeight(f"weight of {o!r} is {w}")
        total_weight = sum(weights, Fraction(0))
        if total_weight != 1:
            raise NonUnitMass(f"weights sum to {total_weight}, not 1")
        self.outcomes = outcomes
        self.weights = weights
        self.support_index = tuple(i for i, w in enumerate(weights) if w > 0)
        self.support = tuple(outcomes[i] for i in self.support_index)
        denom = 1
        for i in self.support_index:
            denom = math.lcm(denom, weights[i].denominator)
        self.total = denom
        self.masses = tuple(int(weights[i] * denom) for i in self.support_index)
        self._pos = {o: p for p, o in enumerate(self.support)}
        self._hash = hash((outcomes, weights))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ProbSpace):
            return NotImplemented
        return self._hash == other._hash and self.outcomes == other.outcomes and self.weights == other.weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        pairs = ", ".join(f"{o!r}: {w}" for o, w in zip(self.outcomes, self.weights))
        return f"ProbSpace({{{pairs}}})"

    def __len__(self):
        return len(self.outcomes)

    @property
    def n(self) -> int:
        """Support size."""
        return len(self.support)

    def weight(self, outcome) -> Fraction:
        try:
            return self.weights[self.outcomes.index(outcome)]
        except ValueError:
            raise UnknownOutcome(f"unknown outcome {outcome!r}") from None

    def position(self, outcome) -> int | None:
        """Support position of ``outcome``; ``None`` for a null outcome."""
        pos = self._pos.get(outcome)
        if pos is None and outcome not in self.outcomes:
            raise UnknownOutcome(f"unknown outcome {outcome!r}")
        return pos

    def prob(self, event: Iterable[Hashable]) -> Fraction:
        return sum((self.weight(o) for o in set(event)), Fraction(0))

    def rv_on_support(self, rv: RandomVariable) -> tuple:
        """Values of an outcome-indexed random variable at the support points."""
        if isinstance(rv, Mapping):
            missing = [o for o in self.support if o not in rv]
            if missing:
                raise ValueError(f"random variable undefined at {missing[0]!r}")
            return tuple(rv[o] for o in self.support)
        rv = tuple(rv)
        if len(rv) != len(self.outcomes):
            raise ValueError(f"random variable has {len(rv)} values for {len(self.outcomes)} outcomes")
        return tuple(rv[i] for i in self.support_index)


def _counts(items):
    out = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return out


class SigmaField:
    """A complete sub-sigma-field, stored as a canonical partition of the support.

    Blocks are ordered by their first support point and each block lists its
    outcomes in space order. ``0_Lambda`` is the one-block field, the top is
    all singletons.
    """

    __slots__ = ("space", "labels", "nblocks", "_blocks")

    def __init__(self, space: ProbSpace, labels: Sequence[int]):
        # labels must already be canonical; public constructors guarantee it
        self.space = space
        self.labels = tuple(labels)
        self.nblocks = max(self.labels) + 1 if self.labels else 0
        self._blocks = None

    @classmethod
    def from_labels(cls, space: ProbSpace, labels: Sequence[Hashable]) -> SigmaField:
        if len(labels) != space.n:
            raise ValueError(f"{len(labels)} labels for a support of size {space.n}")
        return cls(space, kernels.canonical(labels))

    def __eq__(self, other):
        if not isinstance(other, SigmaField):
            return NotImplemented
        return self.labels == other.labels and self.space == other.space

    def __hash__(self):
        return hash(self.labels)

    def __lt__(self, other):
        return self.labels < other.labels

    def __repr__(self):
        return f"SigmaField({format_blocks(self.blocks)})"

    @property
    def block_positions(self) -> tuple[tuple[int, ...], ...]:
        if self._blocks is None:
            groups = [[] for _ in range(self.nblocks)]
            for p, v in enumerate(self.labels):
                groups[v].append(p)
            self._blocks = tuple(tuple(g) for g in groups)
        return self._blocks

    @property
    def blocks(self) -> tuple[tuple[Hashable, ...], ...]:
        sup = self.space.support
        return tuple(tuple(sup[p] for p in b) for b in self.block_positions)

    @property
    def block_masses(self) -> list[int]:
        return kernels.block_masses(self.labels, self.space.masses)

    @property
    def block_probs(self) -> tuple[Fraction, ...]:
        t = self.space.total
        return tuple(Fraction(m, t) for m in self.block_masses)

    def block_of(self, outcome) -> int:
        pos = self.space.position(outcome)
        if pos is None:
            raise ValueError(f"{outcome!r} is a null outcome; it belongs to no block")
        return self.labels[pos]

    def is_trivial(self) -> bool:
        return self.nblocks <= 1

    def is_discrete(self) -> bool:
        return self.nblocks == len(self.labels)


def format_blocks(blocks) -> str:
    return "[" + ", ".join("{" + ", ".join(str(o) for o in b) + "}" for b in blocks) + "]"


def same_space(*fields: SigmaField) -> ProbSpace:
    """Return the common space of ``fields`` or raise :class:`SpaceMismatch`."""
    space = fields[0].space
    for f in fields[1:]:
        if f.space is not space and f.space != space:
            raise SpaceMismatch("sigma-fields live on different probability spaces")
    return space


def make_space(labels: Iterable[Hashable], weights: Iterable[Any]) -> ProbSpace:
    return ProbSpace(labels, weights)


def uniform_space(labels: Iterable[Hashable]) -> ProbSpace:
    labels = tuple(labels)
    return ProbSpace(labels, [Fraction(1, len(labels))] * len(labels))


def sigma_from_blocks(space: ProbSpace, blocks: Iterable[Iterable[Hashable]]) -> SigmaField:
    """Sigma-field generated by a partition given as lists of outcome labels.

    Null outcomes may appear in any block or be omitted; they are dropped.
    Every positive-mass outcome must be covered exactly once.
    """
    labels = [None] * space.n
    for b, block in enumerate(blocks):
        for o in block:
            pos = space.position(o)
            if pos is None:
                continue
            if labels[pos] is not None:
                raise NotAPartition(f"outcome {o!r} appears in more than one block")
            labels[pos] = b
    uncovered = [space.support[p] for p, v in enumerate(labels) if v is None]
    if uncovered:
        raise NotAPartition(f"positive-mass outcome {uncovered[0]!r} is not covered")
    return SigmaField(space, kernels.canonical(labels))


def sigma_from_rv(space: ProbSpace, rv: RandomVariable) -> SigmaField:
    """Complete sigma-field generated by a random variable: its level sets on the support."""
    return SigmaField(space, kernels.canonical(space.rv_on_support(rv)))


def sigma_from_rvs(space: ProbSpace, *rvs: RandomVariable) -> SigmaField:
    """Sigma-field generated jointly by several random variables."""
    if not rvs:
        return trivial(space)
    cols = [space.rv_on_support(rv) for rv in rvs]
    return SigmaField(space, kernels.canonical(zip(*cols)))


def sigma_from_events(space: ProbSpace, events: Iterable[Iterable[Hashable]]) -> SigmaField:
    """Sigma-field generated by finitely many events (common refinement of ``{E, E^c}``)."""
    members = []
    for e in events:
        e = frozenset(e)
        for o in e:
            space.position(o)  # validates the label
        members.append(e)
    keys = [tuple(o in e for e in members) for o in space.support]
    return SigmaField(space, kernels.canonical(keys))


def trivial(space: ProbSpace) -> SigmaField:
    return SigmaField(space, (0,) * space.n)


def discrete(space: ProbSpace) -> SigmaField:
    return SigmaField(space, tuple(range(space.n)))


def is_sub(x: SigmaField, y: SigmaField) -> bool:
    """``x`` is contained in ``y`` as a sigma-field, i.e. ``x`` is the coarser partition."""
    same_space(x, y)
    return kernels.coarser(x.labels, y.labels)


class Product:
    """A product of finite spaces with the lifts of factor sigma-fields.

    Product outcomes are labelled by joining factor labels with ``","`` and are
    ordered lexicographically by factor (first factor varies slowest).
    """

    def __init__(self, *factors: ProbSpace):
        if not factors:
            raise ValueError("product of no spaces")
        self.factors = factors
        coords = list(itertools.product(*(range(len(f)) for f in factors)))
        labels = [",".join(str(f.outcomes[i]) for f, i in zip(factors, c)) for c in coords]
        weights = []
        for c in coords:
            w = Fraction(1)
            for f, i in zip(factors, c):
                w *= f.weights[i]
            weights.append(w)
        self.space = ProbSpace(labels, weights)
        self.coords = tuple(coords[i] for i in self.space.support_index)

    def lift(self, factor: int, field: SigmaField) -> SigmaField:
        """Preimage of a factor sigma-field under the projection onto that factor."""
        f = self.factors[factor]
        if field.space != f:
            raise SpaceMismatch(f"field does not live on factor {factor}")
        pos = f._pos
        outs = f.outcomes
        return SigmaField(
            self.space,
            kernels.canonical(field.labels[pos[outs[c[factor]]]] for c in self.coords),
        )

    def lift_rv(self, factor: int, rv: RandomVariable) -> list:
        """``rv`` composed with the projection onto ``factor``, indexed by product outcomes."""
        f = self.factors[factor]
        vals = list(rv[o] for o in f.outcomes) if isinstance(rv, Mapping) else list(rv)
        coords = itertools.product(*(range(len(g)) for g in self.factors))
        return [vals[c[factor]] for c in coords]

    @property
    def lifts(self) -> tuple[Callable[[SigmaField], SigmaField], ...]:
        return tuple((lambda fld, i=i: self.lift(i, fld)) for i in range(len(self.factors)))


def product(*spaces: ProbSpace) -> Product:
    return Product(*spaces)

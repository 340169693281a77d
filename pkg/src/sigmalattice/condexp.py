"""Conditional expectation as an exact linear operator on the support.

Vectors are tuples of :class:`~fractions.Fraction` indexed by support
position. ``E[f | X]`` averages ``f`` over each block of ``X`` with the
space weights; since every block has positive mass no division by zero can
occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from . import kernels
from .core import ProbSpace, SigmaField, same_space, trivial
from .errors import CapExceeded, EquivalenceViolated, HypothesisFailed, SpaceMismatch
from .lattice import DEFAULT_TUPLE_CAP, independent, join, meet
from .report import LawReport, claim

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_vector(space: ProbSpace, values) -> Vector:
    """Coerce support-indexed values, outcome-indexed values or a mapping into a Vector."""
    if isinstance(values, Mapping):
        return tuple(Fraction(values[o]) for o in space.support)
    values = tuple(values)
    if len(values) == space.n:
        return tuple(Fraction(v) for v in values)
    if len(values) == len(space.outcomes):
        return tuple(Fraction(values[i]) for i in space.support_index)
    raise ValueError(f"vector of length {len(values)} fits neither the support nor the outcomes")


def indicator(space: ProbSpace, event: Iterable[Hashable]) -> Vector:
    event = set(event)
    for o in event:
        space.position(o)
    return tuple(_ONE if o in event else _ZERO for o in space.support)


def ones(space: ProbSpace) -> Vector:
    return (_ONE,) * space.n


def _check_space(space: ProbSpace, x: SigmaField) -> None:
    if x.space != space:
        raise SpaceMismatch("sigma-field does not live on the given space")


@dataclass(frozen=True)
class CondExpOperator:
    """Matrix of ``E[. | field]``: entry ``(i, j)`` is ``w_j / P(block(i))`` when i, j share a block."""

    field: SigmaField
    matrix: Matrix

    def apply(self, f: Sequence[Fraction]) -> Vector:
        return tuple(sum((a * b for a, b in zip(row, f) if a), _ZERO) for row in self.matrix)

    def __matmul__(self, other: "CondExpOperator | Matrix") -> Matrix:
        rhs = other.matrix if isinstance(other, CondExpOperator) else other
        return matmul(self.matrix, rhs)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), _ZERO) for col in cols)
        for row in a
    )


def condexp_operator(space: ProbSpace, x: SigmaField) -> CondExpOperator:
    _check_space(space, x)
    w = [space.weights[i] for i in space.support_index]
    bp = x.block_probs
    rows = []
    for i in range(space.n):
        bi = x.labels[i]
        rows.append(tuple(w[j] / bp[bi] if x.labels[j] == bi else _ZERO for j in range(space.n)))
    return CondExpOperator(x, tuple(rows))


def condexp(space: ProbSpace, x: SigmaField, f) -> Vector:
    """``E[f | x]`` by block averaging."""
    _check_space(space, x)
    f = as_vector(space, f)
    w = [space.weights[i] for i in space.support_index]
    num = [_ZERO] * x.nblocks
    for v, wi, fi in zip(x.labels, w, f):
        num[v] += wi * fi
    bp = x.block_probs
    avg = [n / p for n, p in zip(num, bp)]
    return tuple(avg[v] for v in x.labels)


def cond_prob(space: ProbSpace, x: SigmaField, event: Iterable[Hashable]) -> Vector:
    """``P[E | x]``; null outcomes of ``E`` are ignored."""
    return condexp(space, x, indicator(space, event))


def expectation(space: ProbSpace, f) -> Fraction:
    f = as_vector(space, f)
    return sum((space.weights[i] * v for i, v in zip(space.support_index, f)), _ZERO)


def commutes(x: SigmaField, y: SigmaField) -> bool:
    """``E_x E_y == E_y E_x`` as exact matrices."""
    space = same_space(x, y)
    ex, ey = condexp_operator(space, x), condexp_operator(space, y)
    return ex @ ey == ey @ ex


def product_is_trivial_projection(x: SigmaField, y: SigmaField) -> bool:
    """``E_x E_y == E_{0}``, the plain expectation operator."""
    space = same_space(x, y)
    ex, ey = condexp_operator(space, x), condexp_operator(space, y)
    return ex @ ey == condexp_operator(space, trivial(space)).matrix


def prop_independence_commutativity_check(x: SigmaField, y: SigmaField, strict: bool = True) -> LawReport:
    """Evaluate independence, (trivial meet and commuting), and ``E_x E_y = E_0``.

    The three statements are equivalent; with ``strict`` a disagreement
    raises :class:`EquivalenceViolated`, otherwise it shows up as a false
    conclusion in the report.
    """
    space = same_space(x, y)
    i = independent(x, y)
    ii = meet(x, y) == trivial(space) and commutes(x, y)
    iii = product_is_trivial_projection(x, y)
    agree = i == ii == iii
    if strict and not agree:
        raise EquivalenceViolated(f"independence={i}, meet-and-commute={ii}, trivial-product={iii}")
    return LawReport(
        "prop-indep-commute",
        (claim("equivalence", agree),),
        facts=(("independent", i), ("trivial_meet_and_commute", ii), ("trivial_product", iii)),
    )


def cond_independent(x: SigmaField, y: SigmaField, z: SigmaField) -> bool:
    """``x`` and ``y`` independent given ``z``, checked on atoms.

    For every block triple: ``P(A & B & C) P(C) == P(A & C) P(B & C)``.
    """
    space = same_space(x, y, z)
    return kernels.cond_independent(x.labels, y.labels, z.labels, space.masses, space.total)


def cond_independent_family(fields: Sequence[SigmaField], z: SigmaField, cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """Mutual conditional independence of ``fields`` given ``z``, per block of ``z``."""
    fields = list(fields)
    if not fields:
        return True
    space = same_space(*fields, z)
    size = math.prod(f.nblocks for f in fields)
    if size > cap:
        raise CapExceeded(f"{size} block tuples exceed the cap of {cap}")
    if len(fields) == 1:
        return True
    if len(fields) == 2:
        return cond_independent(fields[0], fields[1], z)
    k = len(fields)
    mc: dict[int, int] = {}
    marg: dict[tuple[int, int, int], int] = {}
    joint: dict[tuple, int] = {}
    cols = [f.labels for f in fields]
    for p, m in enumerate(space.masses):
        c = z.labels[p]
        key = tuple(col[p] for col in cols)
        mc[c] = mc.get(c, 0) + m
        joint[c, key] = joint.get((c, key), 0) + m
        for i, v in enumerate(key):
            marg[c, i, v] = marg.get((c, i, v), 0) + m
    meeting: dict[int, list[int]] = {c: [0] * k for c in mc}
    for c, i, _ in marg:
        meeting[c][i] += 1
    cells: dict[int, int] = {}
    for c, _ in joint:
        cells[c] = cells.get(c, 0) + 1
    for c in mc:
        if cells[c] != math.prod(meeting[c]):
            return False
    for (c, key), m in joint.items():
        lhs = m * mc[c] ** (k - 1)
        rhs = math.prod(marg[c, i, v] for i, v in enumerate(key))
        if lhs != rhs:
            return False
    return True


def measurable_wrt(f: Sequence[Fraction], x: SigmaField) -> bool:
    """``f`` is constant on every block of ``x``."""
    if len(f) != len(x.labels):
        raise ValueError("vector length does not match the support")
    seen: dict[int, Fraction] = {}
    for v, fi in zip(x.labels, f):
        if seen.setdefault(v, fi) != fi:
            return False
    return True


def atoms_measurable(given: SigmaField, atoms_of: SigmaField, target: SigmaField) -> bool:
    """Every ``P[A | given]`` for ``A`` an atom of ``atoms_of`` is ``target``-measurable.

    By linearity this is the same as requiring it for every event of ``atoms_of``.
    """
    space = same_space(given, atoms_of, target)
    for block in atoms_of.blocks:
        if not measurable_wrt(cond_prob(space, given, block), target):
            return False
    return True


def lemma_independent_conditioning_check(
    f,
    g,
    x: SigmaField,
    y: SigmaField,
    z: SigmaField | None = None,
    strict: bool = False,
) -> LawReport:
    """Check the independent-conditioning identities on non-negative ``f``, ``g``.

    Primary claim: if ``y v s(g)`` is independent of ``x v s(f)`` then
    ``E[fg | x v y] = E[f|x] E[g|y]``. Companion claims: ``y`` independent of
    ``x v z`` gives ``z`` and ``y`` independent given ``x`` (only when ``z``
    is supplied), and ``s(f)`` independent of ``y`` given ``x`` gives
    ``E[f | x v y] = E[f | x]``. With ``strict`` a false primary hypothesis
    raises :class:`HypothesisFailed`.
    """
    space = same_space(x, y)
    f = as_vector(space, f)
    g = as_vector(space, g)
    if any(v < 0 for v in f + g):
        raise ValueError("f and g must be non-negative")
    sf = SigmaField.from_labels(space, f)
    sg = SigmaField.from_labels(space, g)
    xy = join(x, y)
    hyp = independent(join(y, sg), join(x, sf))
    if strict and not hyp:
        raise HypothesisFailed("y v s(g) is not independent of x v s(f)")
    lhs = condexp(space, xy, tuple(a * b for a, b in zip(f, g)))
    ef, eg = condexp(space, x, f), condexp(space, y, g)
    rhs = tuple(a * b for a, b in zip(ef, eg))
    claims = [claim("product-identity", lhs == rhs, independent_enlargements=hyp)]
    if z is not None:
        same_space(x, z)
        claims.append(
            claim(
                "conditional-independence",
                cond_independent(z, y, x),
                y_indep_x_join_z=independent(y, join(x, z)),
            )
        )
    claims.append(
        claim(
            "redundant-conditioning",
            condexp(space, xy, f) == ef,
            f_indep_y_given_x=cond_independent(sf, y, x),
        )
    )
    return LawReport(
        "lemma-independent-conditioning",
        tuple(claims),
        facts=(("lhs", list(lhs)), ("rhs", list(rhs))),
    )

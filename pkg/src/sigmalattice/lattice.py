"""Meet, join, independence and the partial independent sum."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from . import kernels
from .core import ProbSpace, SigmaField, discrete, same_space, trivial
from .errors import CapExceeded, EmptyFamily, NotIndependent, SpaceMismatch
from .report import LawReport, claim

DEFAULT_TUPLE_CAP = 10**6


def join(x: SigmaField, y: SigmaField) -> SigmaField:
    """Smallest sigma-field containing both: the common refinement."""
    space = same_space(x, y)
    return SigmaField(space, kernels.join_labels(x.labels, y.labels))


def join_many(fields: Iterable[SigmaField], space: ProbSpace | None = None) -> SigmaField:
    """Join of a finite family; the empty join is ``0_Lambda`` of ``space``."""
    fields = list(fields)
    if not fields:
        if space is None:
            raise EmptyFamily("empty join needs the ambient space")
        return trivial(space)
    out = fields[0]
    for f in fields[1:]:
        out = join(out, f)
    return out


def meet(x: SigmaField, y: SigmaField) -> SigmaField:
    """Intersection of sigma-fields: the finest common coarsening.

    Blocks are the connected components of the graph linking two support
    points whenever they share a block of ``x`` or of ``y``.
    """
    space = same_space(x, y)
    return SigmaField(space, kernels.meet_labels(x.labels, y.labels))


def meet_many(fields: Iterable[SigmaField]) -> SigmaField:
    fields = list(fields)
    if not fields:
        raise EmptyFamily("the meet of an empty family is undefined")
    out = fields[0]
    for f in fields[1:]:
        out = meet(out, f)
    return out


def independent(x: SigmaField, y: SigmaField) -> bool:
    """Exact product rule ``P(A & B) == P(A) P(B)`` over all block pairs."""
    space = same_space(x, y)
    return kernels.independent(x.labels, y.labels, space.masses, space.total)


def independent_family(fields: Sequence[SigmaField], cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """Mutual independence: the product rule for every choice of one block per member."""
    fields = list(fields)
    if not fields:
        return True
    space = same_space(*fields)
    size = math.prod(f.nblocks for f in fields)
    if size > cap:
        raise CapExceeded(f"{size} block tuples exceed the cap of {cap}")
    if len(fields) == 1:
        return True
    if len(fields) == 2:
        return independent(fields[0], fields[1])
    joint: dict[tuple[int, ...], int] = {}
    cols = [f.labels for f in fields]
    for key, m in zip(zip(*cols), space.masses):
        joint[key] = joint.get(key, 0) + m
    # every block has positive mass, so a missing tuple already breaks the rule
    if len(joint) != size:
        return False
    margins = [f.block_masses for f in fields]
    scale = space.total ** (len(fields) - 1)
    for key, m in joint.items():
        if m * scale != math.prod(mg[k] for mg, k in zip(margins, key)):
            return False
    return True


def plus(x: SigmaField, y: SigmaField) -> SigmaField:
    """The independent sum ``x + y``; raises :class:`NotIndependent` when undefined."""
    if not independent(x, y):
        raise NotIndependent("x + y is undefined: the sigma-fields are not independent")
    return join(x, y)


def plus_many(fields: Sequence[SigmaField], space: ProbSpace | None = None) -> SigmaField:
    """``X1 + ... + Xk``, defined when the family is mutually independent."""
    if not independent_family(fields):
        raise NotIndependent("sum undefined: the family is not mutually independent")
    return join_many(fields, space)


def check_lattice_axioms(space: ProbSpace, x: SigmaField, y: SigmaField, z: SigmaField) -> LawReport:
    if same_space(x, y, z) != space:
        raise SpaceMismatch("fields do not live on the given space")
    bottom, top = trivial(space), discrete(space)
    axioms = (
        claim("meet-commutative", meet(x, y) == meet(y, x)),
        claim("join-commutative", join(x, y) == join(y, x)),
        claim("meet-associative", meet(meet(x, y), z) == meet(x, meet(y, z))),
        claim("join-associative", join(join(x, y), z) == join(x, join(y, z))),
        claim("absorption-meet-join", join(meet(x, y), x) == x),
        claim("absorption-join-meet", meet(join(x, y), x) == x),
        claim("meet-idempotent", meet(x, x) == x),
        claim("join-idempotent", join(x, x) == x),
        claim("bottom", all(join(bottom, f) == f for f in (x, y, z))),
        claim("top", all(meet(f, top) == f for f in (x, y, z))),
    )
    summary = claim("all-axioms", all(c.conclusion for c in axioms))
    return LawReport("lattice-axioms", (summary, *axioms))

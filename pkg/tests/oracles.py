"""Brute-force reference implementations.

Everything here works on plain Python sets of outcomes and never calls the
package's kernels: partitions are enumerated recursively, sigma-fields are
materialised as the full set of their events, and lattice bounds are found
by scanning every partition.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from sigmalattice.core import ProbSpace, SigmaField, sigma_from_blocks

Partition = frozenset  # frozenset of frozenset blocks


def partitions(items):
    """All set partitions of ``items`` as frozensets of frozensets."""
    items = list(items)
    if not items:
        yield frozenset()
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        blocks = list(p)
        yield frozenset([frozenset([first]), *blocks])
        for i, b in enumerate(blocks):
            yield frozenset([b | {first}, *blocks[:i], *blocks[i + 1 :]])


def to_partition(x: SigmaField) -> Partition:
    return frozenset(frozenset(b) for b in x.blocks)


def to_field(space: ProbSpace, p: Partition) -> SigmaField:
    return sigma_from_blocks(space, [sorted(b, key=space.outcomes.index) for b in p])


def finer(p: Partition, q: Partition) -> bool:
    """Every block of ``p`` sits inside a block of ``q``."""
    return all(any(b <= c for c in q) for b in p)


def events(p: Partition) -> set[frozenset]:
    blocks = list(p)
    out = set()
    for r in range(len(blocks) + 1):
        for combo in itertools.combinations(blocks, r):
            out.add(frozenset().union(*combo))
    return out


def glb(p: Partition, q: Partition, universe) -> Partition:
    """Finest partition coarser than both, by scanning every partition."""
    lower = [r for r in partitions(universe) if finer(p, r) and finer(q, r)]
    best = [r for r in lower if all(finer(r, s) for s in lower)]
    assert len(best) == 1
    return best[0]


def lub(p: Partition, q: Partition, universe) -> Partition:
    upper = [r for r in partitions(universe) if finer(r, p) and finer(r, q)]
    best = [r for r in upper if all(finer(s, r) for s in upper)]
    assert len(best) == 1
    return best[0]


def glb_by_events(p: Partition, q: Partition) -> Partition:
    """Atoms of the intersection of the two event sets."""
    common = events(p) & events(q)
    universe = frozenset().union(*p)
    atoms = set()
    for w in universe:
        atoms.add(frozenset.intersection(*(e for e in common if w in e)))
    return frozenset(atoms)


def prob(space: ProbSpace, event) -> Fraction:
    return sum((space.weight(o) for o in event), Fraction(0))


def independent(space: ProbSpace, p: Partition, q: Partition) -> bool:
    """Product rule over every pair of events, not only atoms."""
    return all(
        prob(space, a & b) == prob(space, a) * prob(space, b) for a in events(p) for b in events(q)
    )


def independent_family(space: ProbSpace, parts) -> bool:
    for combo in itertools.product(*(events(p) for p in parts)):
        inter = frozenset(space.support)
        expected = Fraction(1)
        for e in combo:
            inter &= e
            expected *= prob(space, e)
        if prob(space, inter) != expected:
            return False
    return True


def cond_independent(space: ProbSpace, p: Partition, q: Partition, r: Partition) -> bool:
    """``P(A B | C) = P(A | C) P(B | C)`` for all events A, B and atoms C."""
    for c in r:
        pc = prob(space, c)
        for a in events(p):
            for b in events(q):
                if prob(space, a & b & c) * pc != prob(space, a & c) * prob(space, b & c):
                    return False
    return True


def condexp(space: ProbSpace, p: Partition, f: dict) -> dict:
    """``E[f | p]`` as an outcome -> value map, via its defining averaging property."""
    out = {}
    for b in p:
        avg = sum((space.weight(o) * f[o] for o in b), Fraction(0)) / prob(space, b)
        for o in b:
            out[o] = avg
    return out


def complements(space: ProbSpace, x: Partition, z: Partition) -> list[Partition]:
    """Every partition of the support that is a complement of ``x`` in ``z``."""
    found = []
    for y in partitions(space.support):
        if independent(space, x, y) and lub(x, y, space.support) == z:
            found.append(y)
    return found

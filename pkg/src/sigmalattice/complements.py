"""Independent complements, the two-sided problem and innovations.

``Y`` is a complement of ``X`` in ``Z`` when ``Z = X + Y``. Any such ``Y``
is coarser than ``Z``, so the search space is the set of coarsenings of
``Z``; the kernel only visits coarsenings with the right block count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .condexp import atoms_measurable, cond_independent
from .core import SigmaField, is_sub, same_space, trivial
from .errors import CapExceeded, EquivalenceViolated, NotIndependent, NotSub, PreconditionFailed
from .lattice import independent, independent_family, join, join_many, meet
from .report import LawReport, claim, equality_witness

DEFAULT_ATOM_CAP = 10


def is_complement(y: SigmaField, x: SigmaField, z: SigmaField) -> bool:
    """``z == x + y``."""
    same_space(x, y, z)
    return independent(x, y) and join(x, y) == z


@dataclass(frozen=True)
class ComplementReport:
    subject: SigmaField
    ambient: SigmaField
    complements: tuple[SigmaField, ...]
    search_size: int

    @property
    def empty(self) -> bool:
        return not self.complements

    def to_dict(self) -> dict:
        return {
            "of": [[str(o) for o in b] for b in self.subject.blocks],
            "in": [[str(o) for o in b] for b in self.ambient.blocks],
            "complements": [[[str(o) for o in b] for b in c.blocks] for c in self.complements],
            "search_size": self.search_size,
            "empty": self.empty,
        }


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def enumerate_complements(x: SigmaField, z: SigmaField, cap: int = DEFAULT_ATOM_CAP) -> ComplementReport:
    """All complements of ``x`` in ``z``, in canonical (label-tuple) order.

    ``search_size`` is the number of coarsenings of ``z``, i.e. Bell(#atoms).
    """
    space = same_space(x, z)
    if not is_sub(x, z):
        raise NotSub("x is not contained in the ambient sigma-field")
    if z.nblocks > cap:
        raise CapExceeded(f"ambient has {z.nblocks} atoms, cap is {cap}")
    found = kernels.complement_scan(x.labels, z.labels, space.masses, space.total)
    return ComplementReport(x, z, tuple(SigmaField(space, c) for c in found), bell(z.nblocks))


def complements_II_check(x: SigmaField, y: SigmaField, z: SigmaField, strict: bool = True) -> LawReport:
    """Compare (i) ``z = (x & z) v (y & z)`` with (ii) conditional independence plus measurability.

    (ii) asks for ``x`` and ``y`` independent given ``z``, every ``P[B | z]``
    (``B`` an atom of ``y``) to be ``y``-measurable and symmetrically for
    ``x``. Requires ``x`` independent of ``y`` and ``z`` inside ``x v y``.
    """
    same_space(x, y, z)
    indep = independent(x, y)
    inside = is_sub(z, join(x, y))
    if strict and not (indep and inside):
        raise PreconditionFailed(
            "x and y are not independent" if not indep else "z is not contained in x + y"
        )
    rhs = join(meet(x, z), meet(y, z))
    i = rhs == z
    ci = cond_independent(x, y, z)
    my = atoms_measurable(z, y, y)
    mx = atoms_measurable(z, x, x)
    ii = ci and mx and my
    agree = i == ii
    if strict and not agree:
        raise EquivalenceViolated(f"(i)={i} but (ii)={ii}")
    return LawReport(
        "complements-ii",
        (claim("equivalence", agree, x_indep_y=indep, z_inside_sum=inside),),
        facts=(
            ("i", i),
            ("ii", ii),
            ("cond_independent", ci),
            ("x_atoms_measurable", mx),
            ("y_atoms_measurable", my),
        ),
        witness=equality_witness(rhs, z),
    )


def _sum_defined(a: SigmaField, b: SigmaField) -> bool:
    return independent(a, b)


def two_sided_candidate(a: SigmaField, b: SigmaField, a2: SigmaField, b2: SigmaField) -> SigmaField:
    """``a2 & b``, the only possible ``X`` with ``a + X = a2`` and ``b2 + X = b``."""
    same_space(a, b, a2, b2)
    _require_equal_sums(a, b, a2, b2)
    return meet(a2, b)


def _require_equal_sums(a, b, a2, b2) -> None:
    if not _sum_defined(a, b):
        raise PreconditionFailed("a + b is undefined")
    if not _sum_defined(a2, b2):
        raise PreconditionFailed("a' + b' is undefined")
    if join(a, b) != join(a2, b2):
        raise PreconditionFailed("a + b differs from a' + b'")


@dataclass(frozen=True)
class TwoSidedReport:
    """Conditions (a)-(e) of the two-sided complement problem.

    ``c`` is ``None`` and ``equivalent`` is ``None`` when no one-sided
    complements ``x``, ``y`` were supplied: the values are reported but not
    compared.
    """

    candidate: SigmaField
    a: bool
    b: bool
    c: bool | None
    d: bool
    e: bool
    equivalent: bool | None
    preconditions: tuple[tuple[str, bool], ...]
    unique: bool

    @property
    def conditions(self) -> dict[str, bool | None]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "e": self.e}

    def law_report(self) -> LawReport:
        hyps = dict(self.preconditions)
        claims = [
            claim("equivalence", bool(self.equivalent) if self.equivalent is not None else True, **hyps),
            claim("at-most-one", self.unique, sums_equal=hyps.get("sums_equal", True)),
        ]
        facts = [("candidate", self.candidate)] + [(k, v) for k, v in self.conditions.items()]
        return LawReport("two-sided", tuple(claims), facts=tuple(facts))


def _restricted_complement_exists(base, ambient, within, cap) -> bool:
    """Some complement of ``base`` in ``ambient`` is contained in ``within``."""
    try:
        rep = enumerate_complements(base, ambient, cap)
    except NotSub:
        return False
    return any(is_sub(c, within) for c in rep.complements)


def two_sided_check(
    a: SigmaField,
    b: SigmaField,
    a2: SigmaField,
    b2: SigmaField,
    x: SigmaField | None = None,
    y: SigmaField | None = None,
    strict: bool = True,
    cap: int = DEFAULT_ATOM_CAP,
) -> TwoSidedReport:
    """Evaluate the two-sided complement conditions for ``a + b = a2 + b2``.

    (a) ``a2 & b`` works on both sides; (b) ``a + (a2 & b) + b2 = a + b``
    with every sum defined; (c) ``x <= a v (a2 & b)`` and
    ``y <= b2 v (a2 & b)``; (d) ``a`` has a complement in ``a2`` inside
    ``b`` and ``b2`` has one in ``b`` inside ``a2``; (e) ``P[B | a2]`` is
    ``b``-measurable for atoms ``B`` of ``b`` and ``P[A | b]`` is
    ``a2``-measurable for atoms ``A`` of ``a2``.
    """
    same_space(a, b, a2, b2)
    if (x is None) != (y is None):
        raise ValueError("supply both x and y or neither")
    sums_defined = _sum_defined(a, b) and _sum_defined(a2, b2)
    sums_equal = sums_defined and join(a, b) == join(a2, b2)
    pre = [("sums_equal", sums_equal)]
    if x is not None:
        same_space(a, x, y)
        pre.append(("x_completes_a", is_complement(x, a, a2)))
        pre.append(("y_completes_b", is_complement(y, b2, b)))
    if strict and not all(v for _, v in pre):
        bad = next(k for k, v in pre if not v)
        raise PreconditionFailed(f"precondition {bad} fails")
    cand = meet(a2, b)
    cond_a = is_complement(cand, a, a2) and is_complement(cand, b2, b)
    cond_b = independent_family([a, cand, b2]) and join_many([a, cand, b2]) == join(a, b)
    cond_c = None
    if x is not None:
        cond_c = is_sub(x, join(a, cand)) and is_sub(y, join(b2, cand))
    cond_d = _restricted_complement_exists(a, a2, b, cap) and _restricted_complement_exists(b2, b, a2, cap)
    cond_e = atoms_measurable(a2, b, b) and atoms_measurable(b, a2, a2)
    # uniqueness: the fields satisfying both relations are exactly {cand} or none
    both = _two_sided_solutions(a, b, a2, b2, cap)
    unique = both == [] or both == [cand]
    equivalent = None
    if x is not None:
        values = [cond_a, cond_b, cond_c, cond_d, cond_e]
        equivalent = all(values) or not any(values)
        if strict and not equivalent:
            raise EquivalenceViolated(f"conditions disagree: {values}")
    if strict and sums_equal and not unique:
        raise EquivalenceViolated("more than one two-sided complement")
    return TwoSidedReport(cand, cond_a, cond_b, cond_c, cond_d, cond_e, equivalent, tuple(pre), unique)


def _two_sided_solutions(a, b, a2, b2, cap) -> list[SigmaField]:
    try:
        left = enumerate_complements(a, a2, cap).complements
        right = set(enumerate_complements(b2, b, cap).complements)
    except NotSub:
        return []
    return [c for c in left if c in right]


def innovation_check(
    f: Sequence[SigmaField],
    g: Sequence[SigmaField],
    h: Sequence[SigmaField],
    strict: bool = True,
) -> LawReport:
    """Check that ``h`` innovates ``(f, g)`` at finite horizon ``N``.

    ``f = [F_0..F_N]`` nonincreasing, ``g = [G_0..G_N]`` nondecreasing with
    ``G_0`` trivial and ``F_n v G_n = F_0``; ``h = [H_1..H_N]``. The primary
    claim is that the relations ``F_n = F_{n+1} + H_{n+1}`` and
    ``G_{n+1} = G_n + H_{n+1}`` force ``H_n = G_n & F_{n-1}`` and
    ``F_n = F_N v H_{n+1} v ... v H_N``.
    """
    f, g, h = list(f), list(g), list(h)
    if not f or len(g) != len(f) or len(h) != len(f) - 1:
        raise PreconditionFailed("expected F_0..F_N, G_0..G_N and H_1..H_N")
    space = same_space(*f, *g, *h)
    n_top = len(f) - 1
    f_dec = all(is_sub(f[k + 1], f[k]) for k in range(n_top))
    g_inc = all(is_sub(g[k], g[k + 1]) for k in range(n_top))
    g0 = g[0] == trivial(space)
    spans = all(join(f[k], g[k]) == f[0] for k in range(n_top + 1))
    pre_ok = f_dec and g_inc and g0 and spans
    if strict and not pre_ok:
        raise PreconditionFailed("F must decrease, G increase from 0 and F_n v G_n = F_0")

    f_rel = []
    g_rel = []
    for k in range(n_top):
        hk = h[k]  # H_{k+1}
        fd = independent(f[k + 1], hk)
        gd = independent(g[k], hk)
        if strict and not (fd and gd):
            raise NotIndependent(f"an innovation sum at step {k + 1} is undefined")
        f_rel.append(fd and join(f[k + 1], hk) == f[k])
        g_rel.append(gd and join(g[k], hk) == g[k + 1])
    h_id = [h[k - 1] == meet(g[k], f[k - 1]) for k in range(1, n_top + 1)]
    expansion = [join_many([f[n_top], *h[k:]], space) == f[k] for k in range(n_top + 1)]
    innovates = all(f_rel) and all(g_rel)
    return LawReport(
        "innovation",
        (
            claim(
                "innovation",
                all(h_id) and all(expansion),
                f_nonincreasing=f_dec,
                g_nondecreasing=g_inc,
                g0_trivial=g0,
                spans_f0=spans,
                innovates=innovates,
            ),
        ),
        facts=(
            ("f_relations", f_rel),
            ("g_relations", g_rel),
            ("h_identities", h_id),
            ("expansion", expansion),
        ),
    )

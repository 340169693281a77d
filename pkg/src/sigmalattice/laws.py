"""Checkers for the distributivity laws and a registry keyed by stable ids.

Every checker evaluates hypotheses and conclusion separately and returns a
:class:`~sigmalattice.report.LawReport`. Checkers never raise because a
hypothesis is false; genuine preconditions raise
:class:`PreconditionFailed` when ``strict`` is set and otherwise appear as
hypotheses, which is how the search engine calls them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .complements import complements_II_check, innovation_check, two_sided_check
from .condexp import atoms_measurable, cond_independent, cond_independent_family, prop_independence_commutativity_check
from .core import ProbSpace, SigmaField, is_sub, same_space
from .errors import CapExceeded, EmptyFamily, PreconditionFailed, UnknownLaw
from .lattice import independent, independent_family, join, join_many, meet, meet_many
from .report import LawReport, claim, equality_witness

DIST_V_CAP = 6


def _grid(family: Sequence[Sequence[SigmaField]]) -> list[list[SigmaField]]:
    rows = [list(r) for r in family]
    if not rows:
        raise EmptyFamily("the outer index set must be non-empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("family rows have different lengths")
    return rows


def dist_I_check(family: Sequence[Sequence[SigmaField]], space: ProbSpace | None = None) -> LawReport:
    """``meet_a join_b X[a][b]`` versus ``join_b meet_a X[a][b]``.

    ``family[a][b]`` is indexed by the outer (meet) index first. Hypothesis:
    the column joins ``Z_b = join_a X[a][b]`` are mutually independent.
    ``space`` is only needed when the inner index set is empty.
    """
    rows = _grid(family)
    flat = [x for r in rows for x in r]
    if flat:
        space = same_space(*flat)
    elif space is None:
        raise EmptyFamily("empty inner index set needs the ambient space")
    cols = [[r[b] for r in rows] for b in range(len(rows[0]))]
    zs = [join_many(c, space) for c in cols]
    hyp = independent_family(zs)
    lhs = meet_many([join_many(r, space) for r in rows])
    rhs = join_many([meet_many(c) for c in cols], space)
    return LawReport(
        "dist-i",
        (claim("distributivity", lhs == rhs, columns_independent=hyp),),
        witness=equality_witness(lhs, rhs),
    )


def dist_II_check_pairs(x1: SigmaField, x2: SigmaField, y1: SigmaField, y2: SigmaField) -> LawReport:
    """``(x1 v y1) & (x2 v y2) = (x1 & x2) v (y1 & y2)`` when ``x1 v x2`` is independent of ``y1 v y2``.

    Also evaluates the specialisation with ``X = x1``, ``A = x2``,
    ``Y = y1``: ``X <= A`` independent of ``Y`` gives ``(X v Y) & A = X``.
    """
    same_space(x1, x2, y1, y2)
    hyp = independent(join(x1, x2), join(y1, y2))
    lhs = meet(join(x1, y1), join(x2, y2))
    rhs = join(meet(x1, x2), meet(y1, y2))
    special = claim(
        "specialisation",
        meet(join(x1, y1), x2) == x1,
        x_inside_a=is_sub(x1, x2),
        a_indep_y=independent(x2, y1),
    )
    return LawReport(
        "dist-ii-pairs",
        (claim("pairs", lhs == rhs, independent_joins=hyp), special),
        witness=equality_witness(lhs, rhs),
    )


def dist_II_check_chain(chain: Sequence[SigmaField], y: SigmaField, strict: bool = True) -> LawReport:
    """``meet_n (X_n v y) = (meet_n X_n) v y`` for a nonincreasing finite chain independent of ``y``.

    Independence is tested against ``X_1``, the largest element.
    """
    chain = list(chain)
    if not chain:
        raise EmptyFamily("empty chain")
    same_space(*chain, y)
    monotone = all(is_sub(chain[k + 1], chain[k]) for k in range(len(chain) - 1))
    if strict and not monotone:
        raise PreconditionFailed("chain is not nonincreasing")
    hyp = independent(chain[0], y)
    lhs = meet_many([join(x, y) for x in chain])
    rhs = join(meet_many(chain), y)
    return LawReport(
        "dist-ii-chain",
        (claim("chain", lhs == rhs, nonincreasing=monotone, y_indep_chain=hyp),),
        witness=equality_witness(lhs, rhs),
    )


def dist_III_check(family: Sequence[SigmaField], z: SigmaField, strict: bool = True) -> LawReport:
    """``(join X_a) & z = join (X_a & z)`` given conditional independence and measurability."""
    family = list(family)
    if not family:
        raise EmptyFamily("empty family")
    space = same_space(*family, z)
    indep = independent_family(family)
    if strict and not indep:
        raise PreconditionFailed("the family is not independent")
    ci = cond_independent_family(family, z)
    meas = all(atoms_measurable(z, x, x) for x in family)
    lhs = meet(join_many(family, space), z)
    rhs = join_many([meet(x, z) for x in family], space)
    return LawReport(
        "dist-iii",
        (claim("distributivity", lhs == rhs, independent_family=indep, cond_independent=ci, measurable=meas),),
        witness=equality_witness(lhs, rhs),
    )


def dist_IV_check(family: Sequence[SigmaField], z: SigmaField, strict: bool = True) -> LawReport:
    """``z = meet_a (X_a v z)`` and ``meet_a X_a <= z`` when the ``X_a`` are independent given ``z``."""
    family = list(family)
    if len(family) < 2:
        if strict:
            raise PreconditionFailed("need at least two sigma-fields")
        if not family:
            raise EmptyFamily("empty family")
    same_space(*family, z)
    ci = cond_independent_family(family, z)
    lhs = meet_many([join(x, z) for x in family])
    inside = is_sub(meet_many(family), z)
    return LawReport(
        "dist-iv",
        (claim("recovery", lhs == z and inside, at_least_two=len(family) >= 2, cond_independent=ci),),
        facts=(("meet_of_joins_is_z", lhs == z), ("meet_inside_z", inside)),
        witness=equality_witness(lhs, z),
    )


def dist_V_check(col1: Sequence[SigmaField], col2: Sequence[SigmaField], cap: int = DIST_V_CAP) -> LawReport:
    """``meet_a (X_a1 v X_a2) = (meet_a X_a1) v (meet_a X_a2)``.

    Hypothesis: for every non-empty subset ``A`` of the index set,
    ``X_1 = join_a X_a1`` and ``X_2 = join_a X_a2`` are independent given
    ``meet_{a in A} X_a1`` and given ``meet_{a in A} X_a2``. The subset scan
    is exponential, hence the cap on the index set size.
    """
    col1, col2 = list(col1), list(col2)
    if not col1:
        raise EmptyFamily("empty index set")
    if len(col1) != len(col2):
        raise ValueError("columns have different lengths")
    if len(col1) > cap:
        raise CapExceeded(f"index set of size {len(col1)} exceeds the cap of {cap}")
    space = same_space(*col1, *col2)
    x1, x2 = join_many(col1, space), join_many(col2, space)
    subsets = (
        sub for r in range(1, len(col1) + 1) for sub in itertools.combinations(range(len(col1)), r)
    )
    hyp = all(
        cond_independent(x1, x2, meet_many([col[i] for i in sub])) for sub in subsets for col in (col1, col2)
    )
    lhs = meet_many([join(a, b) for a, b in zip(col1, col2)])
    rhs = join(meet_many(col1), meet_many(col2))
    return LawReport(
        "dist-v",
        (claim("distributivity", lhs == rhs, cond_independent_given_meets=hyp),),
        witness=equality_witness(lhs, rhs),
    )


def _remark_i(a, b, c):
    return claim(
        "remark-i",
        is_sub(a, b),
        a_inside_b_join_c=is_sub(a, join(b, c)),
        a_join_b_indep_c=independent(join(a, b), c),
    )


def _remark_ii(a, b, c):
    return claim(
        "remark-ii",
        a == b,
        a_inside_b_join_c=is_sub(a, join(b, c)),
        a_indep_c=independent(a, c),
        b_inside_a=is_sub(b, a),
    )


def remark_implications_check(a: SigmaField, b: SigmaField, c: SigmaField) -> LawReport:
    """(I) ``a <= b v c`` and ``a v b`` independent of ``c`` give ``a <= b``.
    (II) ``a <= b v c``, ``a`` independent of ``c`` and ``b <= a`` give ``a = b``.
    """
    same_space(a, b, c)
    return LawReport("remark-implications", (_remark_i(a, b, c), _remark_ii(a, b, c)))


# -- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class Role:
    """One argument slot of a law: a single field, a list of fields or a grid."""

    name: str
    kind: str  # "field" | "family" | "grid"
    min_size: int = 1

    def describe(self) -> str:
        if self.kind == "field":
            return self.name
        return f"{self.name}[{self.kind}>={self.min_size}]"


@dataclass(frozen=True)
class LawInstance:
    """A space plus role bindings for one law; values are fields, tuples of fields or tuples of tuples."""

    law: str
    space: ProbSpace
    bindings: tuple[tuple[str, Any], ...]

    def __getitem__(self, role: str):
        return dict(self.bindings)[role]

    def fields(self) -> list[SigmaField]:
        out = []
        for _, v in self.bindings:
            out.extend(_flatten(v))
        return out


def _flatten(v) -> list[SigmaField]:
    if isinstance(v, SigmaField):
        return [v]
    return [f for item in v for f in _flatten(item)]


@dataclass(frozen=True)
class LawDescriptor:
    id: str
    roles: tuple[Role, ...]
    check: Callable[..., LawReport]
    theorem: bool = True
    summary: str = ""

    @property
    def arity(self) -> dict[str, str]:
        return {r.name: r.kind if r.kind == "field" else f"{r.kind}>={r.min_size}" for r in self.roles}

    def run(self, instance: LawInstance) -> LawReport:
        """Evaluate in reporting mode: preconditions become hypotheses."""
        args = [instance[r.name] for r in self.roles]
        return self.check(*args)


def _two_sided(a, b, a2, b2, x, y):
    return two_sided_check(a, b, a2, b2, x, y, strict=False).law_report()


def _innovation(f, g, h):
    return innovation_check(f, g, h, strict=False)


def _single(report: LawReport, i: int) -> LawReport:
    c = report.claims[i]
    return LawReport(c.name, (c,))


_F = lambda name: Role(name, "field")  # noqa: E731

_REGISTRY: dict[str, LawDescriptor] = {
    d.id: d
    for d in (
        LawDescriptor(
            "dist-i",
            (Role("family", "grid", 1),),
            lambda fam: dist_I_check(fam),
            summary="meet of joins equals join of meets when column joins are independent",
        ),
        LawDescriptor(
            "dist-ii-pairs",
            (_F("x1"), _F("x2"), _F("y1"), _F("y2")),
            dist_II_check_pairs,
            summary="(X1 v Y1) & (X2 v Y2) = (X1 & X2) v (Y1 & Y2) under independence",
        ),
        LawDescriptor(
            "dist-ii-chain",
            (Role("chain", "family", 1), _F("y")),
            lambda chain, y: dist_II_check_chain(chain, y, strict=False),
            summary="meet of (X_n v Y) equals (meet X_n) v Y for chains independent of Y",
        ),
        LawDescriptor(
            "dist-iii",
            (Role("family", "family", 1), _F("z")),
            lambda fam, z: dist_III_check(fam, z, strict=False),
            summary="(join X_a) & Z = join (X_a & Z) under conditional independence and measurability",
        ),
        LawDescriptor(
            "dist-iv",
            (Role("family", "family", 2), _F("z")),
            lambda fam, z: dist_IV_check(fam, z, strict=False),
            summary="Z = meet (X_a v Z) when the X_a are independent given Z",
        ),
        LawDescriptor(
            "dist-v",
            (Role("col1", "family", 1), Role("col2", "family", 1)),
            dist_V_check,
            summary="meet (X_a1 v X_a2) = (meet X_a1) v (meet X_a2) under conditional independence",
        ),
        LawDescriptor(
            "remark-i",
            (_F("a"), _F("b"), _F("c")),
            lambda a, b, c: _single(remark_implications_check(a, b, c), 0),
            summary="A <= B v C and A v B independent of C give A <= B",
        ),
        LawDescriptor(
            "remark-ii",
            (_F("a"), _F("b"), _F("c")),
            lambda a, b, c: _single(remark_implications_check(a, b, c), 1),
            summary="A <= B v C, A independent of C and B <= A give A = B",
        ),
        LawDescriptor(
            "prop-indep-commute",
            (_F("x"), _F("y")),
            lambda x, y: prop_independence_commutativity_check(x, y, strict=False),
            summary="independence, trivial meet with commuting projections, and E_X E_Y = E_0 agree",
        ),
        LawDescriptor(
            "complements-ii",
            (_F("x"), _F("y"), _F("z")),
            lambda x, y, z: complements_II_check(x, y, z, strict=False),
            summary="X & Z complements Y & Z in Z iff conditional independence plus measurability",
        ),
        LawDescriptor(
            "two-sided",
            (_F("a"), _F("b"), _F("a2"), _F("b2"), _F("x"), _F("y")),
            _two_sided,
            summary="two-sided complement conditions (a)-(e) agree",
        ),
        LawDescriptor(
            "innovation",
            (Role("f", "family", 1), Role("g", "family", 1), Role("h", "family", 0)),
            _innovation,
            summary="an innovation H of (F, G) satisfies H_n = G_n & F_(n-1)",
        ),
    )
}


def law_registry() -> dict[str, LawDescriptor]:
    return dict(_REGISTRY)


def lookup(law_id: str) -> LawDescriptor:
    try:
        return _REGISTRY[law_id]
    except KeyError:
        raise UnknownLaw(f"unknown law id {law_id!r}") from None


def check(law_id: str, **roles) -> LawReport:
    """Run a registered law on keyword role bindings."""
    d = lookup(law_id)
    missing = [r.name for r in d.roles if r.name not in roles]
    if missing:
        raise ValueError(f"law {law_id} is missing role(s) {', '.join(missing)}")
    return d.check(*(roles[r.name] for r in d.roles))


__all__ = [
    "DIST_V_CAP",
    "LawDescriptor",
    "LawInstance",
    "Role",
    "check",
    "dist_I_check",
    "dist_II_check_chain",
    "dist_II_check_pairs",
    "dist_III_check",
    "dist_IV_check",
    "dist_V_check",
    "law_registry",
    "lookup",
    "remark_implications_check",
]

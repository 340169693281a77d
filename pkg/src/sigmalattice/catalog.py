"""Concrete examples with their expected facts.

Every entry is built on a space of equiprobable signs (or a small product)
and carries named sigma-fields, a list of machine-checkable facts and a few
CLI queries used by ``catalog --emit``. Sign outcomes are labelled by
strings such as ``"+-+"`` in lexicographic order with ``+`` first; the
four-point space uses ``o1..o4`` with ``o1=(+,+)``, ``o2=(+,-)``,
``o3=(-,+)``, ``o4=(-,-)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .complements import complements_II_check, enumerate_complements, innovation_check, two_sided_check
from .condexp import commutes, measurable_wrt, product_is_trivial_projection
from .core import (
    ProbSpace,
    SigmaField,
    discrete,
    is_sub,
    make_space,
    product,
    sigma_from_events,
    sigma_from_rv,
    sigma_from_rvs,
    trivial,
    uniform_space,
)
from .errors import LevelTooLarge, UnknownExample
from .laws import dist_II_check_chain
from .lattice import independent, independent_family, join, meet, meet_many, plus

MAX_LEVEL = 12


@dataclass(frozen=True)
class Fact:
    name: str
    check: Callable[[], bool]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    space: ProbSpace
    fields: tuple[tuple[str, SigmaField], ...]
    facts: tuple[Fact, ...]
    queries: tuple[dict, ...] = ()
    level: int | None = None
    rvs: tuple[tuple[str, tuple], ...] = field(default=(), compare=False)

    def __getitem__(self, name: str) -> SigmaField:
        return dict(self.fields)[name]

    def run_facts(self) -> list[tuple[str, bool]]:
        return [(f.name, bool(f.check())) for f in self.facts]

    def check(self) -> bool:
        return all(ok for _, ok in self.run_facts())


class Signs:
    """The uniform space of ``k`` independent equiprobable signs ``xi_1..xi_k``."""

    def __init__(self, k: int, labels=None):
        self.k = k
        self.points = list(itertools.product((1, -1), repeat=k))
        if labels is None:
            labels = ["".join("+" if v > 0 else "-" for v in p) for p in self.points]
        self.space = uniform_space(labels)

    def xi(self, *idx: int) -> tuple[int, ...]:
        """Product ``xi_i * xi_j * ...`` as an outcome-indexed tuple (1-based indices)."""
        out = []
        for p in self.points:
            v = 1
            for i in idx:
                v *= p[i - 1]
            out.append(v)
        return tuple(out)

    def sigma(self, *rvs) -> SigmaField:
        return sigma_from_rvs(self.space, *rvs)

    def event(self, pred) -> list:
        return [o for o, p in zip(self.space.outcomes, self.points) if pred(p)]


def q4() -> Signs:
    return Signs(2, labels=["o1", "o2", "o3", "o4"])


def _q(op: str, *args, name: str | None = None) -> dict:
    q = {"op": op, "args": list(args)}
    if name is not None:
        q["name"] = name
    return q


def _dist_fail(level):
    s = q4()
    x, y, z = s.sigma(s.xi(1)), s.sigma(s.xi(1, 2)), s.sigma(s.xi(2))
    top = discrete(s.space)
    lhs = lambda: meet(join(x, z), join(y, z))  # noqa: E731
    rhs = lambda: join(meet(x, y), z)  # noqa: E731
    facts = (
        Fact("pairwise independent", lambda: independent(x, y) and independent(x, z) and independent(y, z)),
        Fact("not mutually independent", lambda: not independent_family([x, y, z])),
        Fact("meet of joins is discrete", lambda: lhs() == top),
        Fact("join of meet is sigma(xi2)", lambda: rhs() == z),
        Fact("distributivity fails", lambda: lhs() != rhs()),
    )
    queries = (
        _q("meet", "X", "Y", name="XmY"),
        _q("join", "X", "Z", name="XvZ"),
        _q("join", "Y", "Z", name="YvZ"),
        _q("meet", "XvZ", "YvZ", name="lhs"),
        _q("join", "XmY", "Z", name="rhs"),
        _q("independent", "X", "Y"),
        _q("cond_independent", "X", "Y", "Z"),
        _q("law:dist-iv", ["X", "Y"], "Z"),
    )
    rvs = (("xi1", s.xi(1)), ("xi2", s.xi(2)), ("xi1xi2", s.xi(1, 2)))
    return s.space, (("X", x), ("Y", y), ("Z", z)), facts, queries, rvs


def _warning(n):
    # signs Y_0..Y_n are xi_1..xi_{n+1}; X_k = Y_0 ... Y_k
    s = Signs(n + 1)
    gens = [s.xi(*range(1, k + 2)) for k in range(1, n + 1)]
    chain = [s.sigma(*gens[k - 1 :]) for k in range(1, n + 1)]
    y = s.sigma(*(s.xi(i) for i in range(2, n + 2)))
    y0 = s.sigma(s.xi(1))
    partial = [meet_many(chain[:m]) for m in range(1, n + 1)]
    half = (Fraction(1, 2), Fraction(1, 2))
    facts = (
        Fact(
            "X generators are independent equiprobable signs",
            lambda: independent_family([s.sigma(g) for g in gens]) and all(s.sigma(g).block_probs == half for g in gens),
        ),
        Fact("chain is nonincreasing", lambda: all(is_sub(chain[k + 1], chain[k]) for k in range(n - 1))),
        Fact(
            "finite meets strictly decrease",
            lambda: all(is_sub(partial[m + 1], partial[m]) and partial[m + 1] != partial[m] for m in range(n - 1)),
        ),
        Fact("Y_0 independent of Y", lambda: independent(y0, y)),
        Fact("Y_0 nontrivial", lambda: not y0.is_trivial()),
        # at level 1 the chain is sigma(Y_0 Y_1) alone, which is independent of Y
        Fact("Y independent of X_1 only at level 1", lambda: dist_II_check_chain(chain, y).hypotheses_hold == (n == 1)),
    )
    fields = tuple((f"X{k}", c) for k, c in enumerate(chain, 1)) + (("Y", y), ("Y0", y0))
    queries = (
        _q("law:dist-ii-chain", [f"X{k}" for k in range(1, n + 1)], "Y"),
        _q("independent", "Y0", "Y"),
    )
    return s.space, fields, facts, queries, ()


def _no_complement(level):
    s = q4()
    x = sigma_from_events(s.space, [["o1", "o2", "o3"]])
    top = discrete(s.space)
    facts = (
        Fact("block probabilities 3/4 and 1/4", lambda: x.block_probs == (Fraction(3, 4), Fraction(1, 4))),
        Fact("no complement in the discrete field", lambda: enumerate_complements(x, top).empty),
        Fact("sigma(xi1) does have complements", lambda: not enumerate_complements(s.sigma(s.xi(1)), top).empty),
    )
    queries = (_q("complement_enum", "X", "Top"),)
    return s.space, (("X", x), ("Top", top)), facts, queries, ()


def _non_unique(level):
    s = q4()
    x, x2, x12 = s.sigma(s.xi(1)), s.sigma(s.xi(2)), s.sigma(s.xi(1, 2))
    top = discrete(s.space)
    facts = (
        Fact("exactly two complements", lambda: enumerate_complements(x, top).complements == (x2, x12)),
        Fact("sigma(xi1) + sigma(xi2) is discrete", lambda: plus(x, x2) == top),
        Fact("sigma(xi1) + sigma(xi1 xi2) is discrete", lambda: plus(x, x12) == top),
    )
    queries = (_q("complement_enum", "X", "Top"), _q("plus", "X", "X2"), _q("plus", "X", "X12"))
    return s.space, (("X", x), ("X2", x2), ("X12", x12), ("Top", top)), facts, queries, ()


def vanishing_fields(n: int):
    """``(signs, F, G, H)`` with ``F = [F_0..F_n]``, ``G = [G_0..G_n]``, ``H = [H_1..H_n]``."""
    s = Signs(n + 1)
    f = [s.sigma(*(s.xi(j) for j in range(k + 1, n + 2))) for k in range(n + 1)]
    g = [s.sigma(*(s.xi(j, j + 1) for j in range(1, k + 1))) for k in range(n + 1)]
    h = [s.sigma(s.xi(k, k + 1)) for k in range(1, n + 1)]
    return s, f, g, h


def _vanishing(n):
    s, f, g, h = vanishing_fields(n)
    top = discrete(s.space)
    xi1 = s.sigma(s.xi(1))
    facts = (
        Fact("G_k + F_k is the full field", lambda: all(plus(g[k], f[k]) == top for k in range(n + 1))),
        Fact(
            "H_k = G_k & F_(k-1) = sigma(xi_k xi_(k+1))",
            lambda: all(meet(g[k], f[k - 1]) == h[k - 1] == s.sigma(s.xi(k, k + 1)) for k in range(1, n + 1)),
        ),
        Fact("innovation check passes", lambda: _passes(innovation_check(f, g, h))),
        Fact("xi1 independent of G_n", lambda: independent(xi1, g[n])),
        Fact("G_n v sigma(xi1) is the full field", lambda: join(g[n], xi1) == top),
    )
    fields = (
        tuple((f"F{k}", x) for k, x in enumerate(f))
        + tuple((f"G{k}", x) for k, x in enumerate(g))
        + tuple((f"H{k}", x) for k, x in enumerate(h, 1))
        + (("Xi1", xi1),)
    )
    queries = (
        _q("law:innovation", [f"F{k}" for k in range(n + 1)], [f"G{k}" for k in range(n + 1)], [f"H{k}" for k in range(1, n + 1)]),
        _q("meet", f"G{n}", f"F{n - 1}", name="Hn"),
        _q("independent", "Xi1", f"G{n}"),
    )
    return s.space, fields, facts, queries, ()


def _commute_fail(level):
    s = q4()
    x = sigma_from_events(s.space, [["o1"]])
    y = s.sigma(s.xi(1))
    facts = (
        Fact("meet is trivial", lambda: meet(x, y) == trivial(s.space)),
        Fact("not independent", lambda: not independent(x, y)),
        Fact("projections do not commute", lambda: not commutes(x, y)),
        Fact("product of projections is not E_0", lambda: not product_is_trivial_projection(x, y)),
    )
    queries = (_q("meet", "X", "Y"), _q("independent", "X", "Y"), _q("law:prop-indep-commute", "X", "Y"))
    return s.space, (("X", x), ("Y", y)), facts, queries, ()


def _tweak(level):
    s = Signs(4)
    a = s.sigma(s.xi(1), s.xi(2))
    b = s.sigma(s.xi(3), s.xi(4))
    gen = tuple(u + v for u, v in zip(s.xi(1, 3), s.xi(2, 4)))
    x = sigma_from_rv(s.space, gen)
    core = s.sigma(s.xi(3, 4))
    gen_vec = s.space.rv_on_support(gen)
    facts = (
        Fact("X has three blocks", lambda: x.nblocks == 3),
        Fact("A, B, X pairwise independent", lambda: independent(a, b) and independent(a, x) and independent(b, x)),
        Fact("(X v A) & B = sigma(xi3 xi4)", lambda: meet(join(x, a), b) == core),
        Fact("generator not measurable w.r.t. A v sigma(xi3 xi4)", lambda: not measurable_wrt(gen_vec, join(a, core))),
    )
    queries = (
        _q("join", "X", "A", name="XvA"),
        _q("meet", "XvA", "B", name="core"),
        _q("join", "A", "core", name="Avcore"),
        _q("is_sub", "X", "Avcore"),
    )
    rvs = (("gen", gen),)
    return s.space, (("A", a), ("B", b), ("X", x), ("Core", core)), facts, queries, rvs


def nudge_fields():
    s = Signs(3)
    a = s.sigma(s.xi(1))
    b2 = s.sigma(s.xi(2))
    x = s.sigma(s.xi(3))
    event = s.event(lambda p: (p[0] == 1 and p[2] == 1) or (p[0] == -1 and p[1] * p[2] == -1))
    y = sigma_from_events(s.space, [event])
    a2 = plus(a, x)
    b = plus(b2, y)
    return s, a, b, a2, b2, x, y


def _nudge(level):
    s, a, b, a2, b2, x, y = nudge_fields()
    top = discrete(s.space)
    facts = (
        Fact("A + B = A' + B' = full", lambda: plus(a, b) == plus(a2, b2) == top),
        Fact("A' & B is trivial", lambda: meet(a2, b) == trivial(s.space)),
        Fact(
            "every two-sided condition is false",
            lambda: not any(two_sided_check(a, b, a2, b2, x, y).conditions.values()),
        ),
    )
    fields = (("A", a), ("B", b), ("A2", a2), ("B2", b2), ("X", x), ("Y", y))
    queries = (
        _q("plus", "A", "B"),
        _q("plus", "A2", "B2"),
        _q("meet", "A2", "B"),
        _q("law:two-sided", "A", "B", "A2", "B2", "X", "Y"),
    )
    return s.space, fields, facts, queries, ()


_FACTOR_WEIGHTS = ((1, 3), (1, 4), (1, 2), (2, 5))


def _complements_ii_a(level):
    factors = []
    for name, (p, q) in zip("abcd", _FACTOR_WEIGHTS):
        w = Fraction(p, q)
        factors.append(make_space([f"{name}0", f"{name}1"], [w, 1 - w]))
    prod = product(*factors)
    lifted = [prod.lift(i, discrete(f)) for i, f in enumerate(factors)]
    a, b, c, d = lifted
    x, y, z = join(a, b), join(c, d), join(b, c)
    facts = (
        Fact("A, B, C, D independent", lambda: independent_family(lifted)),
        Fact("(i) and (ii) both hold", lambda: _both(complements_II_check(x, y, z))),
    )
    fields = (("A", a), ("B", b), ("C", c), ("D", d), ("X", x), ("Y", y), ("Z", z))
    queries = (_q("law:complements-ii", "X", "Y", "Z"),)
    return prod.space, fields, facts, queries, ()


def _complements_ii_c(level):
    s = Signs(4)
    x = sigma_from_events(s.space, [s.event(lambda p: p[0] == 1), s.event(lambda p: p[0] == p[1] == 1)])
    y = sigma_from_events(s.space, [s.event(lambda p: p[2] == 1), s.event(lambda p: p[2] == p[3] == 1)])
    z = s.sigma(s.xi(1), s.xi(3))
    x1, x3 = s.sigma(s.xi(1)), s.sigma(s.xi(3))
    facts = (
        Fact("(i) and (ii) both hold", lambda: _both(complements_II_check(x, y, z))),
        Fact("Z & X = sigma(xi1)", lambda: meet(z, x) == x1),
        Fact("Z & Y = sigma(xi3)", lambda: meet(z, y) == x3),
        Fact("sigma(xi1) has no complement in X", lambda: enumerate_complements(x1, x).empty),
        Fact("sigma(xi3) has no complement in Y", lambda: enumerate_complements(x3, y).empty),
    )
    fields = (("X", x), ("Y", y), ("Z", z), ("Xi1", x1), ("Xi3", x3))
    queries = (_q("law:complements-ii", "X", "Y", "Z"), _q("complement_enum", "Xi1", "X"))
    return s.space, fields, facts, queries, ()


def _passes(report) -> bool:
    return report.hypotheses_hold and report.conclusion and report.holds


def _both(report) -> bool:
    return report.fact("i") and report.fact("ii")


_BUILDERS = {
    "dist-fail": (_dist_fail, False),
    "warning-4-12": (_warning, True),
    "no-complement": (_no_complement, False),
    "non-unique": (_non_unique, False),
    "vanishing": (_vanishing, True),
    "commute-fail": (_commute_fail, False),
    "tweak-discrete": (_tweak, False),
    "nudge": (_nudge, False),
    "complements-ii-a": (_complements_ii_a, False),
    "complements-ii-c": (_complements_ii_c, False),
}

DEFAULT_LEVEL = 3


def catalog_ids() -> list[str]:
    return list(_BUILDERS)


def catalog(entry_id: str, n: int | None = None) -> CatalogEntry:
    """Build the example ``entry_id``; levelled examples take ``1 <= n <= 12``."""
    try:
        build, levelled = _BUILDERS[entry_id]
    except KeyError:
        raise UnknownExample(f"unknown example id {entry_id!r}") from None
    level = None
    if levelled:
        level = DEFAULT_LEVEL if n is None else int(n)
        if level < 1:
            raise ValueError("level must be at least 1")
        if level > MAX_LEVEL:
            raise LevelTooLarge(f"level {level} exceeds the cap of {MAX_LEVEL}")
    space, fields, facts, queries, rvs = build(level)
    return CatalogEntry(entry_id, space, tuple(fields), tuple(facts), tuple(queries), level, tuple(rvs))

import itertools

import pytest

import oracles
from sigmalattice.catalog import Signs, nudge_fields, vanishing_fields
from sigmalattice.complements import (
    bell,
    complements_II_check,
    enumerate_complements,
    innovation_check,
    is_complement,
    two_sided_candidate,
    two_sided_check,
)
from sigmalattice.core import discrete, make_space, sigma_from_events, trivial, uniform_space
from sigmalattice.errors import CapExceeded, NotIndependent, NotSub, PreconditionFailed
from sigmalattice.lattice import join, meet


def test_bell_numbers():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert bell(10) == 115975


def test_is_complement(Q4, xi):
    top = discrete(Q4)
    assert is_complement(xi(2), xi(1), top)
    assert is_complement(trivial(Q4), top, top)
    assert not is_complement(xi(1), xi(1), top)


def test_no_complement(Q4):
    x = sigma_from_events(Q4, [["o1", "o2", "o3"]])
    rep = enumerate_complements(x, discrete(Q4))
    assert rep.empty and rep.search_size == 15


def test_two_complements_in_order(Q4, xi):
    rep = enumerate_complements(xi(1), discrete(Q4))
    assert rep.complements == (xi(2), xi(1, 2))


def test_self_complement_is_bottom(Q4, xi):
    assert enumerate_complements(xi(1), xi(1)).complements == (trivial(Q4),)


def test_not_sub(Q4, xi):
    with pytest.raises(NotSub):
        enumerate_complements(xi(1), xi(2))


def test_cap():
    s = uniform_space(range(11))
    with pytest.raises(CapExceeded):
        enumerate_complements(trivial(s), discrete(s))


def test_enumeration_matches_oracle():
    for s in (uniform_space("abcd"), make_space("abcd", ["1/8", "3/8", "1/8", "3/8"]), uniform_space("abcde")):
        parts = list(oracles.partitions(s.support))
        zs = parts if s.n < 5 else parts[::7]
        for zp in zs:
            z = oracles.to_field(s, zp)
            for xp in parts:
                if not oracles.finer(zp, xp):
                    continue
                got = enumerate_complements(oracles.to_field(s, xp), z).complements
                want = {oracles.to_field(s, y) for y in oracles.complements(s, xp, zp)}
                assert set(got) == want and len(got) == len(want)
                assert list(got) == sorted(got, key=lambda f: f.labels)


def test_complements_ii_trivial_z(Q4, xi):
    rep = complements_II_check(xi(1), xi(2), trivial(Q4))
    assert rep.fact("i") and rep.fact("ii") and rep.holds


def test_complements_ii_precondition(Q4, xi):
    with pytest.raises(PreconditionFailed):
        complements_II_check(xi(1), xi(1), trivial(Q4))
    rep = complements_II_check(xi(1), xi(1), trivial(Q4), strict=False)
    assert not rep.hypotheses_hold


def test_complements_ii_exhaustive_small():
    s = make_space("abcd", ["1/6", "1/3", "1/6", "1/3"])
    fields = [oracles.to_field(s, p) for p in oracles.partitions(s.support)]
    seen = 0
    for x, y, z in itertools.product(fields, repeat=3):
        rep = complements_II_check(x, y, z, strict=False)
        if rep.hypotheses_hold:
            seen += 1
            assert rep.conclusion
    assert seen > 0


def test_two_sided_candidate_examples():
    s, a, b, a2, b2, x, y = nudge_fields()
    assert two_sided_candidate(a, b, a2, b2) == trivial(s.space)
    sig = Signs(2)
    p, q = sig.sigma(sig.xi(1)), sig.sigma(sig.xi(2))
    assert two_sided_candidate(p, q, p, q) == trivial(sig.space)
    with pytest.raises(PreconditionFailed):
        two_sided_candidate(p, p, p, q)


def test_nudge_all_false():
    s, a, b, a2, b2, x, y = nudge_fields()
    rep = two_sided_check(a, b, a2, b2, x, y)
    assert rep.conditions == {"a": False, "b": False, "c": False, "d": False, "e": False}
    assert rep.equivalent and rep.unique
    assert join(a, join(rep.candidate, b2)) == s.sigma(s.xi(1), s.xi(2))


@pytest.mark.parametrize("n", [1, 2])
def test_vanishing_consecutive_pairs_all_true(n):
    s, f, g, h = vanishing_fields(n)
    for k in range(n):
        rep = two_sided_check(f[k + 1], g[k + 1], f[k], g[k], h[k], h[k])
        assert all(rep.conditions.values())
        assert rep.candidate == h[k] == s.sigma(s.xi(k + 1, k + 2))


def test_two_sided_bottom_case(Q4, xi):
    b = trivial(Q4)
    rep = two_sided_check(b, xi(1), b, xi(1), b, b)
    assert all(rep.conditions.values()) and rep.candidate == b


def test_two_sided_without_xy_reports_values_only():
    s, a, b, a2, b2, x, y = nudge_fields()
    rep = two_sided_check(a, b, a2, b2)
    assert rep.c is None and rep.equivalent is None


def test_two_sided_uniqueness_exhaustive():
    s = uniform_space("abcd")
    fields = [oracles.to_field(s, p) for p in oracles.partitions(s.support)]
    for a, b, a2, b2 in itertools.product(fields[::2], fields[1::2], fields[::3], fields[::2]):
        rep = two_sided_check(a, b, a2, b2, strict=False)
        if rep.a:
            sols = [c for c in fields if is_complement(c, a, a2) and is_complement(c, b2, b)]
            assert sols == [meet(a2, b)]


@pytest.mark.parametrize("n", range(1, 7))
def test_innovation_vanishing(n):
    s, f, g, h = vanishing_fields(n)
    rep = innovation_check(f, g, h)
    assert rep.hypotheses_hold and rep.conclusion


def test_innovation_constant(Q4, xi):
    b = trivial(Q4)
    rep = innovation_check([xi(1)] * 3, [b] * 3, [b] * 2)
    assert rep.holds and rep.conclusion


def test_innovation_perturbed():
    s, f, g, h = vanishing_fields(3)
    bad = list(h)
    bad[1] = s.sigma(s.xi(1, 3))
    rep = innovation_check(f, g, bad)
    assert rep.fact("h_identities") == [True, False, True]
    assert not rep.conclusion


def test_innovation_undefined_sum(Q4, xi):
    with pytest.raises(NotIndependent):
        innovation_check([discrete(Q4), xi(1)], [trivial(Q4), xi(2)], [xi(1)])


def test_innovation_bad_shapes(Q4, xi):
    with pytest.raises(PreconditionFailed):
        innovation_check([xi(1)], [trivial(Q4), trivial(Q4)], [])
    with pytest.raises(PreconditionFailed):
        innovation_check([xi(1), discrete(Q4)], [trivial(Q4)] * 2, [trivial(Q4)])

import itertools
import random
from fractions import Fraction

import pytest

import oracles
from sigmalattice.catalog import Signs
from sigmalattice.condexp import (
    as_vector,
    atoms_measurable,
    commutes,
    cond_independent,
    cond_independent_family,
    cond_prob,
    condexp,
    condexp_operator,
    expectation,
    indicator,
    lemma_independent_conditioning_check,
    measurable_wrt,
    ones,
    product_is_trivial_projection,
    prop_independence_commutativity_check,
)
from sigmalattice.core import discrete, make_space, product, sigma_from_events, trivial, uniform_space
from sigmalattice.errors import HypothesisFailed
from sigmalattice.lattice import independent, meet_many

F = Fraction
Q = F(1, 4)
H = F(1, 2)


def test_operator_examples(Q4, xi):
    e0 = condexp_operator(Q4, trivial(Q4))
    assert all(row == (Q, Q, Q, Q) for row in e0.matrix)
    ed = condexp_operator(Q4, discrete(Q4))
    assert ed.matrix == tuple(tuple(F(int(i == j)) for j in range(4)) for i in range(4))
    assert condexp(Q4, xi(1), indicator(Q4, ["o1"])) == (H, H, 0, 0)


def test_operator_entries_nonuniform():
    s = make_space(["a", "b", "c"], ["1/6", "1/3", "1/2"])
    x = sigma_from_events(s, [["a", "b"]])
    m = condexp_operator(s, x).matrix
    assert m[0] == (F(1, 3), F(2, 3), 0)
    assert m[2] == (0, 0, 1)


def test_cond_prob_examples(Q4, xi):
    assert cond_prob(Q4, xi(1), ["o1", "o3"]) == (H,) * 4
    f = (F(3), F(-1), F(0), F(5, 7))
    assert condexp(Q4, discrete(Q4), f) == f
    x = sigma_from_events(Q4, [["o1", "o2", "o3"]])
    assert cond_prob(Q4, x, ["o4"]) == (0, 0, 0, 1)


def test_as_vector_forms(Q4):
    assert as_vector(Q4, {"o1": 1, "o2": 2, "o3": 3, "o4": 4}) == (1, 2, 3, 4)
    s = make_space(["a", "b", "c"], ["1/2", "1/2", "0"])
    assert as_vector(s, [1, 2, 99]) == (1, 2)
    assert as_vector(s, [1, 2]) == (1, 2)


def test_condexp_matches_oracle():
    s = make_space(["a", "b", "c", "d", "e"], ["1/10", "1/5", "3/10", "1/5", "1/5"])
    f = {"a": F(1), "b": F(-2), "c": F(3, 2), "d": F(0), "e": F(7)}
    for p in oracles.partitions(s.support):
        x = oracles.to_field(s, p)
        want = oracles.condexp(s, p, f)
        assert condexp(s, x, [f[o] for o in s.outcomes]) == tuple(want[o] for o in s.support)


def test_commutation_examples(Q4, xi):
    assert commutes(xi(1), xi(1, 2)) and product_is_trivial_projection(xi(1), xi(1, 2))
    assert commutes(xi(1), xi(1)) and not product_is_trivial_projection(xi(1), xi(1))
    point = sigma_from_events(Q4, [["o1"]])
    assert not product_is_trivial_projection(point, xi(1))


def test_prop_examples(Q4, xi):
    rep = prop_independence_commutativity_check(xi(1), xi(2))
    assert [rep.fact(k) for k in ("independent", "trivial_meet_and_commute", "trivial_product")] == [True] * 3
    rep = prop_independence_commutativity_check(sigma_from_events(Q4, [["o1"]]), xi(1))
    assert [rep.fact(k) for k in ("independent", "trivial_meet_and_commute", "trivial_product")] == [False] * 3
    assert rep.conclusion


def test_prop_exhaustive_nonuniform():
    s = make_space(["a", "b", "c", "d"], ["1/8", "3/8", "1/8", "3/8"])
    fields = [oracles.to_field(s, p) for p in oracles.partitions(s.support)]
    for x, y in itertools.product(fields, repeat=2):
        assert prop_independence_commutativity_check(x, y).conclusion


def test_cond_independent_examples(Q4, xi):
    x, y = xi(1), xi(2)
    assert cond_independent(x, y, trivial(Q4)) == independent(x, y)
    assert cond_independent(x, xi(1, 2), x)
    # given xi1 xi2, xi1 determines xi2: not conditionally independent
    assert not cond_independent(xi(1), xi(2), xi(1, 2))
    parts = [oracles.to_partition(f) for f in (xi(1), xi(2), xi(1, 2))]
    assert not oracles.cond_independent(Q4, *parts)
    assert cond_independent(xi(1), xi(2), trivial(Q4))


def test_cond_independent_matches_all_events_oracle():
    s = make_space(["a", "b", "c", "d"], ["1/6", "1/3", "1/6", "1/3"])
    parts = list(oracles.partitions(s.support))
    for p, q, r in itertools.product(parts[::2], parts[1::2], parts[::3]):
        got = cond_independent(*(oracles.to_field(s, t) for t in (p, q, r)))
        assert got == oracles.cond_independent(s, p, q, r)


def test_cond_independent_family():
    s = Signs(3)
    x1, x2, x3 = (s.sigma(s.xi(i)) for i in (1, 2, 3))
    assert cond_independent_family([x1, x2, x3], trivial(s.space))
    z = s.sigma(s.xi(1, 2, 3))
    assert not cond_independent_family([x1, x2, x3], z)
    assert cond_independent_family([x1, x2], z)


def test_measurable_wrt(Q4, xi):
    assert measurable_wrt((F(1), F(2), F(3), F(4)), discrete(Q4))
    assert not measurable_wrt(indicator(Q4, ["o1"]), xi(1))
    assert measurable_wrt(cond_prob(Q4, xi(1), ["o1", "o3"]), trivial(Q4))


def test_atoms_measurable_equals_all_events():
    s = make_space(["a", "b", "c", "d"], ["1/6", "1/3", "1/6", "1/3"])
    parts = list(oracles.partitions(s.support))
    for g, t in itertools.product(parts[::2], parts[::3]):
        given, target = oracles.to_field(s, g), oracles.to_field(s, t)
        every = all(measurable_wrt(cond_prob(s, given, e), target) for e in oracles.events(t))
        assert atoms_measurable(given, target, target) == every


def test_expectation_and_ones(Q4):
    assert expectation(Q4, (1, 2, 3, 4)) == F(5, 2)
    assert condexp(Q4, trivial(Q4), ones(Q4)) == ones(Q4)


def test_finite_chain_martingale():
    s = Signs(3)
    chain = [discrete(s.space), s.sigma(s.xi(1), s.xi(2)), s.sigma(s.xi(1))]
    f = tuple(F(i) for i in range(8))
    assert condexp(s.space, chain[-1], f) == condexp(s.space, meet_many(chain), f)


def _product_instance(rng):
    a = make_space(["a0", "a1", "a2"], _norm(rng, 3))
    b = make_space(["b0", "b1"], _norm(rng, 2))
    prod = product(a, b)
    fa = [F(rng.randint(0, 4)) for _ in range(3)]
    gb = [F(rng.randint(0, 4)) for _ in range(2)]
    x = prod.lift(0, sigma_from_events(a, [["a0"]]) if rng.random() < 0.5 else discrete(a))
    y = prod.lift(1, discrete(b) if rng.random() < 0.5 else trivial(b))
    # F must be measurable w.r.t. the first factor, G w.r.t. the second
    return prod, prod.lift_rv(0, fa), prod.lift_rv(1, gb), x, y


def _norm(rng, k):
    w = [rng.randint(1, 6) for _ in range(k)]
    return [F(v, sum(w)) for v in w]


def test_lemma_on_product_instances():
    rng = random.Random(11)
    for _ in range(100):
        prod, f, g, x, y = _product_instance(rng)
        rep = lemma_independent_conditioning_check(f, g, x, y)
        assert rep.hypotheses_hold and rep.holds


def test_lemma_constant_functions(Q4, xi):
    rep = lemma_independent_conditioning_check([1] * 4, [1] * 4, xi(1), xi(2))
    assert rep.holds and rep.fact("lhs") == [1] * 4


def test_lemma_with_third_field():
    s = Signs(3)
    x, y, z = (s.sigma(s.xi(i)) for i in (1, 2, 3))
    rep = lemma_independent_conditioning_check([1] * 8, [1] * 8, x, y, z)
    assert [c.name for c in rep.claims] == ["product-identity", "conditional-independence", "redundant-conditioning"]
    assert rep.holds and rep.claims[1].hypotheses_hold


def test_lemma_strict_and_negative(Q4, xi):
    with pytest.raises(HypothesisFailed):
        lemma_independent_conditioning_check([1, 0, 0, 0], [1, 0, 0, 0], xi(1), xi(1), strict=True)
    with pytest.raises(ValueError):
        lemma_independent_conditioning_check([-1, 0, 0, 0], [1] * 4, xi(1), xi(2))
    rep = lemma_independent_conditioning_check([1, 0, 0, 0], [1, 0, 0, 0], xi(1), xi(1))
    assert not rep.hypotheses_hold


def test_uniform_space_operator_rows_sum_to_one():
    s = uniform_space("abcde")
    for p in list(oracles.partitions(s.support))[::5]:
        m = condexp_operator(s, oracles.to_field(s, p)).matrix
        assert all(sum(row) == 1 for row in m)

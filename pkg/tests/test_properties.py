"""Property tests for the invariants of the core, lattice, condexp and complements modules."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sigmalattice.complements import enumerate_complements, is_complement
from sigmalattice.condexp import (
    cond_independent,
    condexp,
    condexp_operator,
    matmul,
    prop_independence_commutativity_check,
)
from sigmalattice.core import (
    ProbSpace,
    SigmaField,
    discrete,
    is_sub,
    sigma_from_blocks,
    sigma_from_events,
    sigma_from_rv,
    trivial,
)
from sigmalattice.lattice import independent, join, meet, meet_many, plus


@st.composite
def spaces(draw, max_n=6, nulls=False):
    n = draw(st.integers(1, max_n))
    w = draw(st.lists(st.integers(1, 8), min_size=n, max_size=n))
    if nulls:
        w = w + [0] * draw(st.integers(0, 2))
    total = sum(w)
    return ProbSpace([f"w{i}" for i in range(len(w))], [Fraction(v, total) for v in w])


def fields_on(space, k=1):
    labels = st.lists(st.integers(0, space.n - 1), min_size=space.n, max_size=space.n)
    return st.lists(labels.map(lambda ls: SigmaField.from_labels(space, ls)), min_size=k, max_size=k)


@st.composite
def space_and_fields(draw, k=2, max_n=6):
    s = draw(spaces(max_n))
    return (s, *draw(fields_on(s, k)))


@given(space_and_fields(k=1))
def test_canonical_idempotent(data):
    s, x = data
    assert sigma_from_blocks(s, x.blocks) == x
    assert sigma_from_blocks(s, x.blocks).labels == x.labels


@given(spaces(nulls=True), st.data())
def test_null_invariance(s, data):
    nulls = [o for o, w in zip(s.outcomes, s.weights) if w == 0]
    x = data.draw(fields_on(s))[0]
    blocks = [list(b) for b in x.blocks]
    if nulls:
        blocks[0] += nulls
    assert sigma_from_blocks(s, blocks) == x


@given(spaces(), st.data())
def test_rv_equals_level_set_events(s, data):
    rv = data.draw(st.lists(st.integers(0, 3), min_size=len(s.outcomes), max_size=len(s.outcomes)))
    levels = [[o for o, v in zip(s.outcomes, rv) if v == c] for c in sorted(set(rv))]
    assert sigma_from_rv(s, rv) == sigma_from_events(s, levels)


@given(space_and_fields(k=3))
def test_meet_join_bounds(data):
    s, x, y, z = data
    m, j = meet(x, y), join(x, y)
    assert is_sub(m, x) and is_sub(m, y)
    assert is_sub(x, j) and is_sub(y, j)
    if is_sub(z, x) and is_sub(z, y):
        assert is_sub(z, m)
    if is_sub(x, z) and is_sub(y, z):
        assert is_sub(j, z)


@given(space_and_fields(k=3))
def test_lattice_laws(data):
    s, x, y, z = data
    assert meet(x, y) == meet(y, x) and join(x, y) == join(y, x)
    assert join(join(x, y), z) == join(x, join(y, z))
    assert meet(meet(x, y), z) == meet(x, meet(y, z))
    assert join(meet(x, y), x) == x and meet(join(x, y), x) == x
    assert join(trivial(s), x) == x and meet(x, discrete(s)) == x


@given(space_and_fields(k=2))
def test_plus_is_join_when_defined(data):
    s, x, y = data
    if independent(x, y):
        assert plus(x, y) == join(x, y)


@given(space_and_fields(k=2, max_n=5))
@settings(max_examples=60)
def test_projection_laws(data):
    s, x, y = data
    e = condexp_operator(s, x).matrix
    assert matmul(e, e) == e
    assert all(sum(row) == 1 for row in e)
    w = [s.weights[i] for i in s.support_index]
    assert all(w[i] * e[i][j] == w[j] * e[j][i] for i in range(s.n) for j in range(s.n))
    if is_sub(x, y):
        ey = condexp_operator(s, y).matrix
        assert matmul(e, ey) == e


@given(space_and_fields(k=1), st.data())
def test_expectation_preserved(data, more):
    s, x = data
    f = more.draw(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=s.n, max_size=s.n))
    w = [s.weights[i] for i in s.support_index]
    g = condexp(s, x, f)
    assert sum(a * b for a, b in zip(w, g)) == sum(a * b for a, b in zip(w, f))


@given(space_and_fields(k=3))
def test_cond_independence_symmetric(data):
    s, x, y, z = data
    assert cond_independent(x, y, z) == cond_independent(y, x, z)
    assert cond_independent(x, y, trivial(s)) == independent(x, y)


@given(space_and_fields(k=2))
def test_independence_commutation_equivalence(data):
    s, x, y = data
    assert prop_independence_commutativity_check(x, y).conclusion


@given(space_and_fields(k=2, max_n=5))
@settings(max_examples=60)
def test_enumerated_complements_are_complements(data):
    s, x, z = data
    x = meet(x, z)
    for c in enumerate_complements(x, z).complements:
        assert is_complement(c, x, z)


@given(space_and_fields(k=3), st.data())
def test_decreasing_chain_condexp(data, more):
    s, x, y, z = data
    chain = [x, meet(x, y), meet(meet(x, y), z)]
    f = more.draw(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=s.n, max_size=s.n))
    assert condexp(s, chain[-1], f) == condexp(s, meet_many(chain), f)

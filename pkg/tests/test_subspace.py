import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_vectors, brute_subspaces, closure, dim_of
from symsets.errors import DimensionMismatchError, InputError, ParseError
from symsets.gfcore import field_of_order
from symsets.subspace import (
    contains,
    enumerate_grassmannian,
    gaussian_binomial,
    incident_planes,
    intersect,
    parse_block,
    span,
    span_sum,
    sum_all,
    unit_vector,
    whole_space,
    zero_space,
)


def e(n, i):
    return unit_vector(n, i)


def vecset(s):
    return frozenset(s.vectors())


# ---------------------------------------------------------------------------
# span / intersect / sum / contains
# ---------------------------------------------------------------------------


def test_span_examples(gf2):
    s = span(gf2, [e(4, 0), e(4, 0)])
    assert s.dim == 1 and s.rows == (e(4, 0),)
    assert span(gf2, [], 4).dim == 0
    s = span(gf2, [(1, 1, 0, 0), (0, 1, 1, 0)])
    assert s.rows == ((1, 0, 1, 0), (0, 1, 1, 0))


def test_span_rejects_mixed_lengths(gf2):
    with pytest.raises(DimensionMismatchError):
        span(gf2, [(1, 0), (1, 0, 0)])


def test_intersect_examples(gf2):
    a = span(gf2, [e(4, 0), e(4, 1)])
    assert intersect(a, a) == a
    b = span(gf2, [e(4, 2), e(4, 3)])
    assert intersect(a, b).dim == 0
    h1 = span(gf2, [e(4, 0), e(4, 1), e(4, 2)])
    h2 = span(gf2, [e(4, 1), e(4, 2), e(4, 3)])
    meet = intersect(h1, h2)
    assert meet.dim == 2
    brute = frozenset(v for v in all_vectors(gf2, 4) if v in vecset(h1) and v in vecset(h2))
    assert vecset(meet) == brute


def test_sum_examples(gf2):
    a = span(gf2, [(1, 1, 0, 0)])
    assert span_sum(a, zero_space(gf2, 4)) == a
    assert span_sum(span(gf2, [e(4, 0)]), span(gf2, [e(4, 1)])) == span(gf2, [e(4, 0), e(4, 1)])


def test_contains_examples(gf2):
    a = span(gf2, [e(4, 0), e(4, 2)])
    assert contains(a, a)
    assert not contains(zero_space(gf2, 4), span(gf2, [e(4, 0)]))
    assert contains(span(gf2, [e(4, 0), e(4, 1), e(4, 2)]), span(gf2, [(1, 1, 0, 0)]))


def test_ambient_mismatch(gf2, gf3):
    with pytest.raises(DimensionMismatchError):
        intersect(whole_space(gf2, 3), whole_space(gf2, 4))
    with pytest.raises(DimensionMismatchError):
        contains(whole_space(gf2, 3), whole_space(gf3, 3))


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (4, 3), (2, 6), (5, 3)])
def test_lattice_ops_match_vector_sets(q, n):
    F = field_of_order(q)
    rnd = random.Random(q * 10 + n)
    vecs = all_vectors(F, n)
    for _ in range(60 if q**n <= 256 else 20):
        a = span(F, rnd.sample(vecs, rnd.randint(0, n)), n)
        b = span(F, rnd.sample(vecs, rnd.randint(0, n)), n)
        va, vb = vecset(a), vecset(b)
        assert len(va) == q**a.dim
        assert vecset(intersect(a, b)) == va & vb
        assert vecset(span_sum(a, b)) == closure(F, list(va | vb), n)
        assert contains(a, b) == (vb <= va)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (4, 4), (2, 6)])
def test_modular_law_random(q, n):
    F = field_of_order(q)
    rnd = random.Random(7)
    for _ in range(500):
        a = span(F, [tuple(rnd.randrange(q) for _ in range(n)) for _ in range(rnd.randint(0, n))], n)
        b = span(F, [tuple(rnd.randrange(q) for _ in range(n)) for _ in range(rnd.randint(0, n))], n)
        assert intersect(a, b).dim + span_sum(a, b).dim == a.dim + b.dim


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 5), st.data())
def test_span_of_own_basis_is_canonical(q, n, data):
    F = field_of_order(q)
    vecs = data.draw(st.lists(st.tuples(*[st.integers(0, q - 1)] * n), max_size=n + 1))
    s = span(F, vecs, n)
    assert span(F, s.rows, n) == s
    # any other spanning family gives the identical value
    assert span(F, list(vecs) + list(s.rows), n) == s


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 1, 2) == 15
    assert gaussian_binomial(6, 4, 2) == 651  # = [6 choose 2]_2 = 63*62/(3*2)
    assert gaussian_binomial(6, 3, 2) == 1395
    assert gaussian_binomial(7, 0, 5) == 1
    assert gaussian_binomial(4, 2, 3) == 130
    with pytest.raises(InputError):
        gaussian_binomial(3, 4, 2)


def test_enumeration_examples(gf2, small_field):
    assert len(list(enumerate_grassmannian(gf2, 4, 2))) == 35
    assert len(list(enumerate_grassmannian(gf2, 4, 1))) == 15
    zero = list(enumerate_grassmannian(small_field, 3, 0))
    assert zero == [zero_space(small_field, 3)]


@pytest.mark.parametrize("q,n,k", [(2, 4, 2), (2, 4, 1), (3, 3, 1), (3, 4, 2), (4, 3, 2), (2, 5, 3), (2, 6, 4)])
def test_enumeration_matches_brute_force(q, n, k):
    F = field_of_order(q)
    enumerated = [vecset(s) for s in enumerate_grassmannian(F, n, k)]
    assert len(set(enumerated)) == len(enumerated)
    assert set(enumerated) == brute_subspaces(F, n, k)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_enumeration_counts(q):
    F = field_of_order(q)
    for n in range(2, 7):
        if q**n > 1024:
            continue
        for k in range(n + 1):
            items = list(enumerate_grassmannian(F, n, k))
            assert len(items) == gaussian_binomial(n, k, q)
            assert len(set(items)) == len(items)


def test_enumeration_order_is_stable_and_sorted(gf3):
    first = list(enumerate_grassmannian(gf3, 4, 2))
    assert first == list(enumerate_grassmannian(gf3, 4, 2))
    keys = [s.order_key() for s in first]
    assert keys == sorted(keys)
    for s in first:
        assert span(gf3, s.rows, 4) == s
    assert first[0].rows == ((1, 0, 0, 0), (0, 1, 0, 0))


# ---------------------------------------------------------------------------
# incident planes
# ---------------------------------------------------------------------------


def test_incident_planes_examples(gf2):
    h = span(gf2, [e(4, 0), e(4, 1), e(4, 2)])
    assert len(list(incident_planes(h, 2))) == gaussian_binomial(3, 2, 2) == 7
    line = span(gf2, [e(4, 0)])
    assert len(list(incident_planes(line, 2))) == gaussian_binomial(3, 1, 2) == 7
    with pytest.raises(InputError):
        list(incident_planes(whole_space(gf2, 4), 4))


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (4, 3), (2, 5)])
def test_incident_planes_duality(q, n):
    F = field_of_order(q)
    for d in range(n + 1):
        for s in list(enumerate_grassmannian(F, n, d))[:12]:
            for k in range(n + 1):
                if k == d:
                    continue
                got = list(incident_planes(s, k))
                assert len(set(got)) == len(got)
                if d > k:
                    expected = {l for l in enumerate_grassmannian(F, n, k) if contains(s, l)}
                else:
                    expected = {l for l in enumerate_grassmannian(F, n, k) if contains(l, s)}
                assert set(got) == expected


def test_sum_all_matches_stack(gf2):
    line = span(gf2, [e(4, 0)])
    planes = list(incident_planes(line, 2))
    assert sum_all(gf2, 4, planes) == whole_space(gf2, 4)
    rows = [r for p in planes for r in p.rows]
    assert sum_all(gf2, 4, planes) == span(gf2, rows, 4)


# ---------------------------------------------------------------------------
# text blocks
# ---------------------------------------------------------------------------


def test_block_round_trip(gf3):
    for s in enumerate_grassmannian(gf3, 3, 2):
        assert parse_block(gf3, 3, s.to_text().splitlines()) == s


@pytest.mark.parametrize("lines", [["2 0 1"], ["0 1 0", "1 0 0"], ["1 0"], ["1 x 0"], ["1 0 3"], ["1 0 0", "1 0 0"]])
def test_block_rejects_non_canonical(gf3, lines):
    with pytest.raises(ParseError):
        parse_block(gf3, 3, lines)


def test_dim_oracle_agrees(gf3):
    for s in enumerate_grassmannian(gf3, 3, 2):
        assert dim_of(gf3, vecset(s)) == 2

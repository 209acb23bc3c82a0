import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclicbound.field import (
    NEG_INF,
    FieldElement,
    FiniteField,
    Poly,
    embedding,
    factorize,
    gf,
    is_irreducible,
    minimal_splitting_degree,
    nth_root_of_unity,
    poly_eea,
    poly_eea_steps,
    poly_roots,
)

FIELDS = [(2, 1), (2, 4), (2, 8), (3, 1), (3, 2), (3, 5), (5, 2), (7, 1), (2, 21)]


@pytest.mark.parametrize("n,q,s", [(17, 2, 8), (15, 2, 4), (1, 2, 1), (1, 3, 1), (11, 3, 5), (20, 3, 4)])
def test_minimal_splitting_degree(n, q, s):
    assert minimal_splitting_degree(n, q) == s


def test_minimal_splitting_degree_rejects_shared_factor():
    with pytest.raises(ValueError, match="shares factor"):
        minimal_splitting_degree(6, 2)


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms_sample(p, m):
    F = gf(p, m)
    rng = random.Random(p * 100 + m)
    assert is_irreducible(F.modulus, p)
    assert F.element_order(F.primitive) == F.order - 1
    for _ in range(200):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.order - 1) == 1


@pytest.mark.parametrize("p,m", [(2, 3), (2, 5), (3, 2), (3, 3), (5, 2)])
def test_every_nonzero_element_is_root_of_x_to_order_minus_one(p, m):
    F = gf(p, m)
    xq = Poly(F, [F.neg(1)] + [0] * (F.order - 2) + [1])
    assert all(xq(a) == 0 for a in range(1, F.order))


def test_table_and_schoolbook_arithmetic_agree():
    F = gf(3, 4)
    rng = random.Random(3)
    for _ in range(300):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == F._mul_slow(a, b)
        assert F.add(a, b) == F._add_digits(a, b)


def test_custom_modulus_is_checked():
    FiniteField(2, 4, (1, 0, 0, 1, 1))  # x^4 + x^3 + 1
    with pytest.raises(ValueError, match="irreducible"):
        FiniteField(2, 4, (1, 0, 1, 0, 1))  # (x^2+x+1)^2


def test_non_primitive_modulus_still_finds_primitive_element():
    F = FiniteField(2, 4, (1, 1, 1, 1, 1))  # x has order 5 here
    assert F.element_order(2) == 5
    assert F.element_order(F.primitive) == 15


def test_large_field_uses_schoolbook_arithmetic():
    F = gf(2, 21)
    assert not F.has_tables
    a = nth_root_of_unity(F, 7)
    assert F.pow(a, 7) == 1 and F.pow(a, 1) != 1


@pytest.mark.parametrize("p,m,n", [(2, 8, 17), (3, 2, 4), (2, 4, 15), (2, 4, 5), (3, 5, 11)])
def test_nth_root_of_unity_order(p, m, n):
    F = gf(p, m)
    a = nth_root_of_unity(F, n)
    assert F.pow(a, n) == 1
    assert all(F.pow(a, i) != 1 for i in range(1, n))


def test_nth_root_of_unity_full_order_is_primitive():
    F = gf(2, 5)
    assert nth_root_of_unity(F, 31) == F.primitive


def test_nth_root_of_unity_rejects_non_divisor():
    with pytest.raises(ValueError, match="no primitive"):
        nth_root_of_unity(gf(2, 4), 7)


def test_field_element_wrapper():
    F = gf(3, 2)
    a, b = F(4), F(7)
    assert (a + b).value == F.add(4, 7)
    assert (a * b / b) == a
    assert a ** 8 == 1
    assert len(a.coords) == 2
    with pytest.raises(ValueError):
        FieldElement(F, 9)


def test_poly_degree_and_zero_sentinel():
    F = gf(2)
    assert Poly(F).degree == NEG_INF
    assert Poly(F, [1, 0, 0]).degree == 0
    a, b = Poly(F, [1, 1]), Poly(F, [1, 0, 1])
    assert (a * b).degree == a.degree + b.degree


def test_poly_eea_hand_example():
    F = gf(2)
    r, u, w = poly_eea(Poly.monomial(F, 5), Poly(F, [1, 0, 1]), 1)
    assert r == Poly(F, [0, 1])
    assert w == Poly(F, [0, 1, 0, 1])
    assert u * Poly.monomial(F, 5) + w * Poly(F, [1, 0, 1]) == r


def test_poly_eea_equal_inputs():
    F = gf(3)
    a = Poly(F, [1, 2, 0, 1])
    r, u, w = poly_eea(a, a, 10)
    assert r.is_zero()


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(2, 1), (2, 4), (3, 1), (3, 2)]),
    st.lists(st.integers(0, 80), min_size=1, max_size=9),
    st.lists(st.integers(0, 80), min_size=1, max_size=7),
)
def test_eea_cofactor_identity_every_step(fm, ca, cb):
    F = gf(*fm)
    a = Poly(F, [c % F.order for c in ca] + [1])
    b = Poly(F, [c % F.order for c in cb] + [1])
    if a.degree < b.degree:
        a, b = b, a
    for r, u, w in poly_eea_steps(a, b):
        assert u * a + w * b == r


def test_poly_roots_examples():
    F = gf(2, 8)
    roots = poly_roots(Poly(F, [1, 1, 1]))
    assert len(roots) == 2 and all(F.element_order(x) == 3 for x in roots)
    assert poly_roots(Poly(gf(2), [1, 1, 1])) == set()
    for p, m in [(2, 3), (3, 2)]:
        G = gf(p, m)
        assert poly_roots(Poly(G, [G.neg(1), 1])) == {1}


def test_poly_roots_large_field_subfield_scan():
    F = gf(2, 24)
    roots = poly_roots(Poly(F, [1, 1, 1]))  # roots live in GF(4)
    assert len(roots) == 2 and all(F.element_order(x) == 3 for x in roots)
    roots = poly_roots(Poly(F, [1, 1, 0, 1]))  # GF(8) is a subfield of GF(2^24)
    assert len(roots) == 3


@pytest.mark.parametrize("small,big", [((2, 4), (2, 8)), ((2, 2), (2, 16)), ((3, 2), (3, 4)), ((3, 1), (3, 5))])
def test_embedding_is_ring_homomorphism(small, big):
    S, B = gf(*small), gf(*big)
    e = embedding(S, B)
    rng = random.Random(0)
    for _ in range(1000):
        a, b = rng.randrange(S.order), rng.randrange(S.order)
        assert e(S.mul(a, b)) == B.mul(e(a), e(b))
        assert e(S.add(a, b)) == B.add(e(a), e(b))
    assert e.preimage(e(S.primitive)) == S.primitive


def test_embedding_rejects_non_subfield():
    with pytest.raises(ValueError):
        embedding(gf(2, 3), gf(2, 8))


def test_derivative_characteristic_p():
    F = gf(2)
    assert Poly(F, [1, 1, 1]).derivative() == Poly(F, [1])
    assert Poly(F, [1, 0, 1]).derivative().is_zero()
    G = gf(3)
    assert Poly(G, [0, 0, 0, 1]).derivative().is_zero()
    assert math.isinf(Poly(G).degree)


def test_factorize_large_and_small():
    for n in list(range(1, 3000)) + [2**112 - 1, 3**60 - 1, 41 * 43 * 10007]:
        f = factorize(n)
        assert math.prod(p**e for p, e in f.items()) == n
        assert all(all(p % d for d in range(2, min(p, 2000))) for p in f)

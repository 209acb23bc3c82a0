import numpy as np
import pytest

from cyclicbound.code import (
    NOT_REVERSIBLE,
    REVERSIBLE,
    SYMMETRIC_REVERSIBLE_LENGTH,
    CodeSpecError,
    build_code,
    classify_reversible,
    code_fields,
    cyclotomic_coset,
    cyclotomic_cosets,
    enumerate_codes,
    minimal_polynomial,
    parse_code_spec,
    symmetric_reversible_degree,
)
from cyclicbound.field import Poly, minimal_splitting_degree


def test_coset_examples():
    assert cyclotomic_coset(17, 2, 1).members == (1, 2, 4, 8, 16, 15, 13, 9)
    assert cyclotomic_coset(23, 2, 0).members == (0,)
    assert set(cyclotomic_coset(15, 2, 3).members) == {3, 6, 12, 9}


def test_minimal_polynomials():
    base, ext, alpha = code_fields(15, 2)
    assert minimal_polynomial(cyclotomic_coset(15, 2, 0), alpha, ext, base) == Poly(base, [1, 1])
    m1 = minimal_polynomial(cyclotomic_coset(15, 2, 1), alpha, ext, base)
    assert m1.coeffs in {(1, 1, 0, 0, 1), (1, 0, 0, 1, 1)}
    base, ext, alpha = code_fields(17, 2)
    for c in cyclotomic_cosets(17, 2):
        assert minimal_polynomial(c, alpha, ext, base).degree == len(c)


def test_build_code_examples():
    c = build_code(17, 2, [1])
    assert (c.k, c.generator.degree) == (9, 8)
    whole = build_code(9, 2, [])
    assert whole.k == 9 and whole.generator == Poly.one(whole.base)
    c45 = build_code(45, 2, [-5, -3, 3, 5])
    assert c45.defining_set == (3, 5, 6, 10, 12, 20, 21, 24, 25, 33, 35, 39, 40, 42)
    assert c45.k == 31


def test_build_code_merges_duplicates_and_negative_reps():
    assert build_code(17, 2, [1, 2, -1, 16]).representatives == (1,)


def test_build_code_rejects_shared_factor():
    with pytest.raises(ValueError, match="shares factor"):
        build_code(10, 2, [1])


@pytest.mark.parametrize("n,q,count", [(15, 2, 32), (17, 2, 8), (8, 3, 32), (13, 3, 32)])
def test_enumeration_counts(n, q, count):
    assert sum(1 for _ in enumerate_codes(n, q)) == count


@pytest.mark.parametrize("n,q", [(15, 2), (17, 2), (21, 2), (8, 3), (10, 3), (7, 4), (13, 3)])
def test_generator_divides_and_vanishes_exactly_on_defining_set(n, q):
    for code in enumerate_codes(n, q):
        F = code.base
        xn1 = Poly(F, [F.neg(1)] + [0] * (n - 1) + [1])
        assert (xn1 % code.generator).is_zero()
        assert code.generator.degree == len(code.defining_set) or code.k == n
        g = code.generator
        ext = code.ext
        from cyclicbound.field import embedding

        ge = embedding(F, ext).poly(g)
        zeros = {i for i in range(n) if ge(ext.pow(code.alpha, i)) == 0}
        assert zeros == set(code.defining_set)


@pytest.mark.parametrize("n,q", [(17, 2), (31, 2), (41, 2), (11, 3), (20, 3), (13, 3)])
def test_coset_cardinality_lemmas(n, q):
    s = minimal_splitting_degree(n, q)
    m = symmetric_reversible_degree(n, q)
    for r in range(1, n):
        if np.gcd(r, n) == 1:
            size = len(cyclotomic_coset(n, q, r))
            assert size == s
            if m is not None and n > 2:
                assert size == 2 * m


def test_codeword_membership():
    rng = np.random.default_rng(5)
    code = build_code(21, 2, [1, 3])
    for _ in range(100):
        c = code.random_codeword(rng)
        assert code.contains(c)
        assert all(code.evaluate(c, i) == 0 for i in code.defining_set)


def test_reversibility_classes():
    assert classify_reversible(17, 2, build_code(17, 2, [1])) == SYMMETRIC_REVERSIBLE_LENGTH
    assert classify_reversible(7, 2, build_code(7, 2, [1])) == NOT_REVERSIBLE
    assert classify_reversible(7, 2, build_code(7, 2, [0])) == REVERSIBLE
    assert classify_reversible(7, 2, build_code(7, 2, [1, 3])) == REVERSIBLE


def test_symmetric_reversible_lengths_include_printed_stars():
    starred = {n for n in range(15, 64, 2) if symmetric_reversible_degree(n, 2) is not None}
    assert {17, 25, 33, 41, 43, 57} <= starred
    assert symmetric_reversible_degree(17, 2) == 4


def test_parse_code_spec():
    assert parse_code_spec("q=2 n=17 cosets=1") == (2, 17, [1])
    assert parse_code_spec("q=2 n=45 cosets=-5,-3,3,5") == (2, 45, [40, 42, 3, 5])
    assert parse_code_spec("q=3 n=8") == (3, 8, [])
    for bad in ["q=2 n=17 cosets=a", "q=6 n=5", "q=2 n=10", "q=2 m=3", "n=5"]:
        with pytest.raises(CodeSpecError):
            parse_code_spec(bad)


def test_generator_matrix_rows_are_codewords():
    code = build_code(15, 2, [1, 3])
    G = code.generator_matrix()
    assert G.shape == (code.k, 15)
    assert all(code.contains(list(row)) for row in G)

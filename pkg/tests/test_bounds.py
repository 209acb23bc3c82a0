import json

import numpy as np
import pytest

from cyclicbound.bounds import (
    BoundCertificate,
    all_bounds,
    bch_bound,
    boston_bounds,
    boston_question_bound,
    ht_bound,
    optimal_rational_witnesses,
    rational_bound,
    rational_value,
    replay,
)
from cyclicbound.code import DefiningSet, build_code, enumerate_codes
from cyclicbound.harness import true_distance


def test_rational_value_formula():
    assert rational_value(9, 1, 2, 17) == 5
    assert rational_value(10, 2, 3, 45) == 4
    assert rational_value(0, 1, 2, 10) == 1  # clamped below
    assert rational_value(100, 0, 1, 10) == 10  # clamped above


def test_empty_defining_set():
    code = DefiningSet(9, 2, 0, (), ())
    assert bch_bound(code).value == 1
    assert ht_bound(code).value == 1


def test_table_column_symmetric_length_41():
    code = build_code(41, 2, [1, 5])  # {+-1, +-5} inside D
    cert = rational_bound(code)
    assert cert.value >= 7
    assert replay(code, cert)


def test_ht_table_class_length_45():
    code = build_code(45, 2, [-11, -6, -5, -3, 3, 5, 6, 11])
    cert = ht_bound(code)
    assert cert.value >= 5
    assert replay(code, cert)


def test_tampered_certificates_fail_replay():
    code = build_code(17, 2, [1])
    rat = rational_bound(code)
    bad = BoundCertificate.from_dict(rat.to_dict())
    bad.witness["mu"] += 1
    assert not replay(code, bad)
    ht = ht_bound(code)
    bad = BoundCertificate.from_dict(ht.to_dict())
    bad.witness["b"] = (bad.witness["b"] + 1) % 17
    assert not replay(code, bad)


def test_certificate_json_round_trip():
    code = build_code(20, 3, [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 16, 18])
    for cert in all_bounds(code):
        again = BoundCertificate.from_json(cert.to_json())
        assert again == cert
        assert json.loads(again.to_json()) == cert.to_dict()


def test_optimal_witnesses_all_replay():
    code = build_code(45, 2, [-5, -3, 3, 5])
    opt = optimal_rational_witnesses(code)
    assert opt and all(replay(code, c) and c.value == 4 for c in opt)
    assert rational_bound(code).to_dict() == opt[0].to_dict()


def test_boston_question_examples():
    code = build_code(20, 3, [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 16, 18])
    assert boston_question_bound(code) == 8
    assert boston_question_bound(DefiningSet(7, 2, 0, (), (0, 1))) == 2
    assert boston_question_bound(DefiningSet(11, 2, 0, (), (0, 1, 3, 4))) == 4
    assert boston_question_bound(DefiningSet(9, 2, 0, (), (0, 1, 3, 4))) is None
    assert boston_question_bound(DefiningSet(11, 2, 0, (), (1, 2))) is None


def test_boston_side_conditions():
    full15 = boston_bounds(DefiningSet(15, 2, 0, (), tuple(range(15))))
    assert {c.witness["bound"] for c in full15} == {2, 6}  # 3 | 15 rules out the others
    certs = boston_bounds(DefiningSet(12, 3, 0, (), tuple(range(11))))
    assert {c.witness["bound"] for c in certs} == {2}
    assert certs[0].witness["d_f"] is None  # period of 1/(x^2+1) shares a factor with 12


@pytest.mark.parametrize("n,q", [(15, 2), (21, 2), (23, 2), (11, 3), (16, 3), (10, 3), (13, 4), (7, 2)])
def test_soundness_dominance_replay(n, q):
    for code in enumerate_codes(n, q):
        if not 1 <= code.k < n:
            continue
        d = true_distance(code, method="auto")
        certs = all_bounds(code)
        bch, ht, rat = certs[:3]
        assert rat.value >= bch.value and ht.value >= bch.value
        for c in certs:
            assert c.value <= d
            assert replay(code, c)
            if c.kind == "BOSTON" and c.witness.get("d_f") is not None:
                assert c.witness["d_f"] <= d


def test_zero_sequence_identity_on_codewords():
    rng = np.random.default_rng(11)
    for reps in ([1], [1, 3], [0, 1]):
        code = build_code(17, 2, reps)
        cert = rational_bound(code)
        w = cert.witness
        for _ in range(50):
            c = code.random_codeword(rng)
            for j in range(w["mu"] - 1):
                if w["a"][j % w["p"]]:
                    assert code.evaluate(c, w["b"] + j * w["z1"]) == 0

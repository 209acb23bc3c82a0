import numpy as np
import pytest

from cyclicbound.bounds import optimal_rational_witnesses, rational_bound
from cyclicbound.code import build_code
from cyclicbound.decoder import (
    FAILURE,
    DecodingResult,
    ambient_alpha,
    chien_search,
    decode,
    evaluate_errors,
    make_context,
    precompute_betas,
    solve_key_equation,
    solve_key_equation_linear,
    syndrome,
)
from cyclicbound.field import Poly, embedding, gf
from cyclicbound.harness import exhaustive_decode_test
from cyclicbound.series import default_registry


@pytest.fixture(scope="module")
def c17():
    code = build_code(17, 2, [1])
    return code, make_context(code)


def _flip(word, positions, code, values=None):
    r = list(word)
    for k, i in enumerate(positions):
        r[i] = code.base.add(r[i], 1 if values is None else values[k])
    return r


def test_context_invariants(c17):
    code, ctx = c17
    F = ctx.field
    assert (ctx.mu, ctx.t_max, ctx.u, ctx.v) == (10, 2, 2, 1)
    assert F.order == 2**16
    for i, beta in enumerate(ctx.betas):
        for j in range(code.n):
            val = ctx.f(F.mul(ctx.alpha_pows[j], beta))
            assert (val == 0) == (i == j)
    assert ctx.radius_chain_holds


def test_betas_for_bch_candidate_are_inverse_powers():
    code = build_code(15, 2, [1, 3])
    bch = default_registry(2)[0]
    betas = precompute_betas(code, bch)
    G = gf(2, code.ext.m)  # u = 1, so the ambient field is the splitting field
    alpha = ambient_alpha(code, G)
    assert embedding(code.base, G).poly(code.generator)(alpha) == 0
    assert betas == [G.inv(G.pow(alpha, i)) for i in range(15)]


def test_single_position_length():
    code = build_code(1, 2, [])
    assert len(precompute_betas(code, default_registry(2)[0])) == 1


def test_syndrome_slots_and_series(c17):
    code, ctx = c17
    rng = np.random.default_rng(0)
    cw = code.random_codeword(rng)
    assert syndrome(cw, ctx).is_zero()
    S = syndrome(_flip(cw, [3], code), ctx)
    assert {j for j, c in enumerate(S.coeffs) if c} == {0, 2, 3, 5, 6, 8}
    # a single error at position i gives alpha^{13 i} + alpha^{15 i} x^2 + ...
    F, a = ctx.field, ctx.alpha
    for i in (0, 3, 11):
        S = syndrome(_flip(cw, [i], code), ctx)
        expected = {0: 13, 2: 15, 3: 16, 5: 1, 6: 2, 8: 4}
        for j, e in expected.items():
            assert S[j] == F.pow(a, e * i)


def test_key_equation_two_errors(c17):
    code, ctx = c17
    S = syndrome(_flip([0] * 17, [3, 10], code), ctx)
    lam, omega, method = solve_key_equation(S, ctx)
    assert lam.degree == 4 and method == "eea"
    assert lam == ctx.f_shifted[3] * ctx.f_shifted[10]
    assert chien_search(lam, ctx) == [3, 10]
    assert evaluate_errors(omega, lam, [3, 10], ctx) == [1, 1]


def test_key_equation_one_error(c17):
    code, ctx = c17
    S = syndrome(_flip([0] * 17, [3], code), ctx)
    lam, _, _ = solve_key_equation(S, ctx)
    assert lam == ctx.f_shifted[3]


def test_zero_syndrome(c17):
    _, ctx = c17
    lam, omega, _ = solve_key_equation(Poly(ctx.field), ctx)
    assert lam == Poly.one(ctx.field) and omega.is_zero()
    assert chien_search(Poly.one(ctx.field), ctx) == []
    assert chien_search(ctx.f_shifted[0], ctx) == [0]


def test_linear_system_matches_eea(c17):
    code, ctx = c17
    S = syndrome(_flip([0] * 17, [1, 7], code), ctx)
    lam, omega, _ = solve_key_equation(S, ctx)
    lin = solve_key_equation_linear(S, ctx, 2)
    assert lin is not None and lin[0] == lam and lin[1] == omega


def test_weight_three_never_returns_non_codeword(c17):
    code, ctx = c17
    rng = np.random.default_rng(1)
    seen_failure = False
    for _ in range(1000):
        cw = code.random_codeword(rng)
        res = decode(_flip(cw, rng.choice(17, 3, replace=False), code), ctx)
        if res.ok:
            assert code.contains(res.codeword)
        else:
            seen_failure = True
            assert res.codeword is None
    assert seen_failure


def test_ternary_error_value_recovered():
    code = build_code(11, 3, [0, 1])
    ctx = make_context(code)
    rng = np.random.default_rng(2)
    cw = code.random_codeword(rng)
    res = decode(_flip(cw, [3], code, [2]), ctx)
    assert res.ok and res.positions == [3] and res.values == [2] and res.codeword == cw


def test_classical_forney_for_bch_candidate():
    code = build_code(15, 2, [1, 3])  # BCH design distance 5
    ctx = make_context(code)
    assert ctx.candidate.is_bch
    rep = exhaustive_decode_test(code, ctx)
    assert rep.failures == 0 and rep.t_max == 2


def test_spacing_two_witness_decodes():
    code = build_code(45, 2, [-5, -3, 3, 5])
    cert = next(c for c in optimal_rational_witnesses(code) if c.witness["z1"] == 2)
    ctx = make_context(code, cert)
    rng = np.random.default_rng(3)
    for pos in (0, 7, 44):
        cw = code.random_codeword(rng)
        res = decode(_flip(cw, [pos], code), ctx)
        assert res.ok and res.codeword == cw and res.positions == [pos]


@pytest.mark.parametrize(
    "n,q,reps",
    [(17, 2, [0, 1]), (21, 2, [1, 3, 7]), (23, 2, [1]), (8, 3, [1, 2]), (13, 3, [1, 2]), (16, 3, [0, 1, 2, 5])],
)
def test_round_trip_all_patterns(n, q, reps):
    code = build_code(n, q, reps)
    ctx = make_context(code)
    rep = exhaustive_decode_test(code, ctx, codeword_limit=0, sample=3, seed=n)
    assert rep.failures == 0, rep.examples


def test_zero_radius_context_passes_codewords():
    code = build_code(7, 2, [0])  # even-weight code, d_f = 2
    ctx = make_context(code)
    assert ctx.t_max == 0
    rep = exhaustive_decode_test(code, ctx)
    assert rep.patterns == 0 and rep.failures == 0


def test_rejects_bad_word(c17):
    code, ctx = c17
    with pytest.raises(ValueError):
        decode([0] * 16, ctx)
    with pytest.raises(ValueError):
        decode([2] * 17, ctx)


def test_result_serialization(c17):
    code, ctx = c17
    res = decode(_flip([0] * 17, [2], code), ctx)
    d = res.to_dict()
    assert d["status"] == "ok" and d["positions"] == [2]
    assert DecodingResult(FAILURE).to_dict()["codeword"] is None

"""Key-equation decoder for rational-function certificates.

A context fixes a code, a candidate ``h/f`` and a witness ``(b, z1, mu)``.
All arithmetic happens in the ambient field GF(q^(s u)), which holds the
roots of every ``f(alpha^i x)``.  A witness with spacing ``z1 > 1`` is handled
by decoding with the root of unity ``alpha^z1`` and start ``b / z1 mod n``:
the syndrome points are the same and positions need no relabelling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .bounds import BoundCertificate, candidate_from_witness, rational_bound
from .code import CyclicCode, code_fields, coset_minimal_polynomial
from .field import FiniteField, Poly, embedding, gf, nth_root_of_unity, poly_eea, poly_roots
from .series import Registry, RationalCandidate, validate_candidate

OK = "ok"
FAILURE = "decoding-failure"


class DecodingError(ValueError):
    pass


class _Vec:
    """Array arithmetic for fields with log tables."""

    def __init__(self, F: FiniteField):
        self.F = F
        self.exp = F.exp_table()
        self.log = F.log_table()
        self.n1 = F.order - 1
        if F.p != 2:
            self.place = F.p ** np.arange(F.m, dtype=np.int64)
            self.digits = (np.arange(F.order, dtype=np.int64)[:, None] // self.place) % F.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = self.exp[(self.log[a] + self.log[b]) % self.n1]
        out[(a == 0) | (b == 0)] = 0
        return out

    def sum(self, a: np.ndarray, axis: int) -> np.ndarray:
        if self.F.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        return (self.digits[a].sum(axis=axis) % self.F.p) @ self.place


@dataclass(eq=False)
class DecoderContext:
    code: CyclicCode
    candidate: RationalCandidate
    certificate: BoundCertificate
    field: FiniteField
    alpha: int  # root of unity actually used (alpha^z1, embedded)
    b: int  # start relative to ``alpha``
    mu: int
    d_f: int
    t_max: int
    betas: list[int]
    series: list[int]  # a_0 .. a_{mu-2} embedded in the ambient field
    h: Poly
    f: Poly
    f_shifted: list[Poly]
    alpha_pows: list[int]
    _vec: _Vec | None = field(default=None, repr=False)
    _syn_matrix: np.ndarray | list | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def u(self) -> int:
        return self.candidate.u

    @property
    def v(self) -> int:
        return self.candidate.v

    @property
    def syndrome_length(self) -> int:
        return self.mu - 1

    @property
    def eea_stop(self) -> int:
        return self.syndrome_length - self.t_max * self.u - 1

    @property
    def radius_chain_holds(self) -> bool:
        """Whether ``t_max u <= floor((mu-1)/2)``."""
        return self.t_max * self.u <= (self.mu - 1) // 2

    def embed(self, a: int) -> int:
        return embedding(self.code.base, self.field)(a)


@dataclass
class DecodingResult:
    status: str
    syndrome: Poly | None = None
    locator: Poly | None = None
    evaluator: Poly | None = None
    positions: list[int] = field(default_factory=list)
    values: list[int] = field(default_factory=list)
    codeword: list[int] | None = None
    method: str | None = None
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self) -> dict:
        def coeffs(p):
            return None if p is None else list(p.coeffs)

        return {
            "status": self.status,
            "syndrome": coeffs(self.syndrome),
            "locator": coeffs(self.locator),
            "evaluator": coeffs(self.evaluator),
            "positions": list(self.positions),
            "values": list(self.values),
            "codeword": None if self.codeword is None else list(self.codeword),
            "method": self.method,
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def ambient_field(code: CyclicCode, cand: RationalCandidate) -> FiniteField:
    return gf(code.base.p, code.ext.m * cand.u)


def ambient_alpha(code: CyclicCode, F: FiniteField) -> int:
    """An image of the code's ``alpha`` in ``F``: a root of its minimal polynomial.

    Any conjugate ``alpha^(q^i)`` serves, since defining sets are unions of
    cyclotomic cosets.  Scanning ``zeta^j`` for an ``n``-th root ``zeta`` avoids
    embedding the whole splitting field.
    """
    return _ambient_alpha(code.n, code.q, F.p, F.m)


@lru_cache(maxsize=None)
def _ambient_alpha(n: int, q: int, p: int, m: int) -> int:
    F = gf(p, m)
    base = code_fields(n, q)[0]
    minpoly = embedding(base, F).poly(coset_minimal_polynomial(n, q, 1 % n))
    zeta = nth_root_of_unity(F, n)
    for j in range(n):
        if math.gcd(j, n) == 1 or n == 1:
            a = F.pow(zeta, j)
            if minpoly(a) == 0:
                return a
    raise DecodingError("no conjugate of alpha in the ambient field")  # pragma: no cover


def precompute_betas(code: CyclicCode, candidate: RationalCandidate, z1: int = 1) -> list[int]:
    """Smallest root of ``f(alpha'^i x)`` for each position ``i``, ``alpha' = alpha^z1``."""
    if not validate_candidate(code.n, candidate):
        raise DecodingError("candidate invalid for n")
    F = ambient_field(code, candidate)
    alpha = F.pow(ambient_alpha(code, F), z1)
    fF = embedding(code.base, F).poly(candidate.f)
    roots = sorted(poly_roots(fF, F))
    if not roots:
        raise DecodingError("f has no root in the ambient field")  # pragma: no cover
    n = code.n
    for rho in roots:
        a = rho
        for _ in range(1, n):
            a = F.mul(a, alpha)
            if fF(a) == 0:
                raise DecodingError("candidate invalid for n")
    inv = F.inv(alpha)
    betas = []
    scale = 1
    for _ in range(n):
        betas.append(min(F.mul(rho, scale) for rho in roots))
        scale = F.mul(scale, inv)
    if len(set(betas)) != n:
        raise DecodingError("candidate invalid for n")
    return betas


def make_context(
    code: CyclicCode,
    certificate: BoundCertificate | None = None,
    registry: Registry | None = None,
) -> DecoderContext:
    """Precompute everything a decode needs for one rational certificate."""
    if certificate is None:
        certificate = rational_bound(code, registry)
    w = certificate.witness
    cand = candidate_from_witness(code, certificate, registry)
    n = code.n
    z1 = w["z1"] % n if n > 1 else 1
    b = w["b"] * pow(z1, -1, n) % n if n > 1 else 0
    mu = min(w["mu"], n * cand.period + 1)
    F = ambient_field(code, cand)
    emb = embedding(code.base, F)
    alpha = F.pow(ambient_alpha(code, F), z1)
    betas = precompute_betas(code, cand, z1)
    fF, hF = emb.poly(cand.f), emb.poly(cand.h)
    alpha_pows = [F.pow(alpha, i) for i in range(n)]
    N = mu - 1
    series = [emb(cand.coeffs[j % cand.period]) for j in range(N)]
    ctx = DecoderContext(
        code=code,
        candidate=cand,
        certificate=certificate,
        field=F,
        alpha=alpha,
        b=b,
        mu=mu,
        d_f=certificate.value,
        t_max=(certificate.value - 1) // 2,
        betas=betas,
        series=series,
        h=hF,
        f=fF,
        f_shifted=[fF.scale_variable(alpha_pows[i]) for i in range(n)],
        alpha_pows=alpha_pows,
    )
    M = [[F.mul(series[j], F.pow(alpha, (j + b) * i)) for i in range(n)] for j in range(N)]
    if F.has_tables:
        ctx._vec = _Vec(F)
        ctx._syn_matrix = np.array(M, dtype=np.int64).reshape(N, n)
    else:
        ctx._syn_matrix = M
    return ctx


def syndrome(received: Sequence[int], ctx: DecoderContext) -> Poly:
    """``S(x) = sum_j a_j r(alpha^(b+j)) x^j`` for ``j < mu - 1``."""
    n = ctx.n
    if len(received) != n:
        raise ValueError(f"received word must have {n} symbols")
    F = ctx.field
    N = ctx.syndrome_length
    if N == 0:
        return Poly(F)
    base = ctx.code.base
    if ctx._vec is not None:
        r = np.asarray(received, dtype=np.int64)
        M = ctx._syn_matrix
        if base.order == 2:
            cols = M[:, r != 0]
            S = np.bitwise_xor.reduce(cols, axis=1) if cols.shape[1] else np.zeros(N, dtype=np.int64)
        else:
            emb = embedding(base, F)
            re = np.array([emb(int(c)) for c in r], dtype=np.int64)
            S = ctx._vec.sum(ctx._vec.mul(M, re[None, :]), axis=1)
        return Poly(F, [int(x) for x in S])
    emb = embedding(base, F)
    re = [emb(int(c)) for c in received]
    out = []
    for row in ctx._syn_matrix:
        acc = 0
        for x, y in zip(row, re):
            if y:
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return Poly(F, out)


def _normalize(lam: Poly, omega: Poly, ctx: DecoderContext, t: int) -> tuple[Poly, Poly]:
    F = ctx.field
    target = F.pow(ctx.f[0], t)
    c = F.div(target, lam[0])
    return lam * c, omega * c


def _contract(lam: Poly, omega: Poly, ctx: DecoderContext) -> int | None:
    """Return ``t`` when ``(lam, omega)`` satisfies the degree contract."""
    if lam.is_zero() or lam[0] == 0:
        return None
    u, v = ctx.u, ctx.v
    d = int(lam.degree)
    if d % u:
        return None
    t = d // u
    if t > ctx.t_max:
        return None
    if t == 0:
        return 0 if omega.is_zero() else None
    if omega.degree > (t - 1) * u + v:
        return None
    return t


def solve_key_equation_eea(S: Poly, ctx: DecoderContext) -> tuple[Poly, Poly] | None:
    F = ctx.field
    N = ctx.syndrome_length
    if S.is_zero():
        return Poly.one(F), Poly(F)
    r, _, w = poly_eea(Poly.monomial(F, N), S, ctx.eea_stop)
    t = _contract(w, r, ctx)
    if t is None:
        return None
    return _normalize(w, r, ctx, t)


def solve_key_equation_linear(S: Poly, ctx: DecoderContext, t: int) -> tuple[Poly, Poly] | None:
    """Solve ``sum_i Lambda_i S_(k-i) = 0`` for the rows where Omega must vanish.

    ``Lambda_0`` is fixed to ``f(0)^t``; the system must have full column
    rank ``t u``.
    """
    F = ctx.field
    u, v, N = ctx.u, ctx.v, ctx.syndrome_length
    L = t * u
    lam0 = F.pow(ctx.f[0], t)
    if t == 0:
        return (Poly.one(F), Poly(F)) if S.is_zero() else None
    rows = []
    for k in range((t - 1) * u + v + 1, N):
        row = [S[k - i] if k - i >= 0 else 0 for i in range(1, L + 1)]
        rows.append(row + [F.neg(F.mul(lam0, S[k]))])
    sol = _solve(F, rows, L)
    if sol is None:
        return None
    lam = Poly(F, [lam0] + sol)
    omega = (lam * S).truncate(N)
    if _contract(lam, omega, ctx) != t:
        return None
    return lam, omega


def _solve(F: FiniteField, rows: list[list[int]], ncols: int) -> list[int] | None:
    """Unique solution of an augmented system, or ``None``."""
    A = [list(r) for r in rows]
    piv_row = 0
    pivots = []
    for col in range(ncols):
        sel = next((r for r in range(piv_row, len(A)) if A[r][col]), None)
        if sel is None:
            return None  # rank deficient
        A[piv_row], A[sel] = A[sel], A[piv_row]
        inv = F.inv(A[piv_row][col])
        A[piv_row] = [F.mul(x, inv) for x in A[piv_row]]
        for r in range(len(A)):
            if r != piv_row and A[r][col]:
                c = A[r][col]
                A[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(A[r], A[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, len(A)):
        if A[r][ncols]:
            return None  # inconsistent
    return [A[i][ncols] for i in range(ncols)]


def solve_key_equation(S: Poly, ctx: DecoderContext) -> tuple[Poly, Poly, str] | None:
    """``(Lambda, Omega, method)``: EEA first, linear system as fallback."""
    res = solve_key_equation_eea(S, ctx)
    if res is not None and _factorizes(res[0], ctx) is not None:
        return res[0], res[1], "eea"
    for t in range(ctx.t_max, 0, -1):
        res = solve_key_equation_linear(S, ctx, t)
        if res is not None:
            return res[0], res[1], "linear"
    return None


def chien_search(lam: Poly, ctx: DecoderContext) -> list[int]:
    """Positions ``i`` with ``Lambda(beta_i) = 0``."""
    if lam.is_zero():
        raise ValueError("locator must be nonzero")
    if lam.degree == 0:
        return []
    F = ctx.field
    if ctx._vec is not None:
        vec = ctx._vec
        logb = vec.log[np.asarray(ctx.betas, dtype=np.int64)]
        k = np.arange(len(lam.coeffs), dtype=np.int64)
        coeffs = np.asarray(lam.coeffs, dtype=np.int64)
        terms = vec.exp[(vec.log[coeffs][:, None] + k[:, None] * logb[None, :]) % vec.n1]
        terms[coeffs == 0, :] = 0
        vals = vec.sum(terms, axis=0)
        return [int(i) for i in np.nonzero(vals == 0)[0]]
    return [i for i, beta in enumerate(ctx.betas) if lam(beta) == 0]


def _factorizes(lam: Poly, ctx: DecoderContext) -> list[int] | None:
    positions = chien_search(lam, ctx)
    if len(positions) * ctx.u != lam.degree:
        return None
    prod = Poly.one(ctx.field)
    for i in positions:
        prod = prod * ctx.f_shifted[i]
    return positions if prod == lam else None


def evaluate_errors(omega: Poly, lam: Poly, positions: Sequence[int], ctx: DecoderContext) -> list[int] | None:
    """Error values in the ambient field, or ``None`` on a zero denominator or value."""
    F = ctx.field
    dlam = lam.derivative()
    dfx = ctx.f.derivative()
    out = []
    for l in positions:
        beta = ctx.betas[l]
        al = ctx.alpha_pows[l]
        x = F.mul(al, beta)
        scale = F.mul(F.pow(ctx.alpha, l * ctx.b), ctx.h(x))
        denom = scale
        for j in positions:
            if j != l:
                denom = F.mul(denom, ctx.f(F.mul(ctx.alpha_pows[j], beta)))
        if denom == 0:
            return None
        e = F.div(omega(beta), denom)
        if e == 0:
            return None
        num2 = dfx(x)
        den2 = dlam(beta)
        if num2 and den2:
            e2 = F.div(F.mul(F.mul(omega(beta), al), num2), F.mul(den2, scale))
            if e2 != e:
                raise ArithmeticError("error-value formulas disagree")
        out.append(e)
    return out


def forney_forms(omega: Poly, lam: Poly, positions: Sequence[int], ctx: DecoderContext) -> list[tuple[int, int | None]]:
    """``(product form, derivative form)`` per position; ``None`` where the derivative form is undefined."""
    F = ctx.field
    dlam = lam.derivative()
    dfx = ctx.f.derivative()
    out = []
    for l in positions:
        beta = ctx.betas[l]
        al = ctx.alpha_pows[l]
        x = F.mul(al, beta)
        scale = F.mul(F.pow(ctx.alpha, l * ctx.b), ctx.h(x))
        denom = scale
        for j in positions:
            if j != l:
                denom = F.mul(denom, ctx.f(F.mul(ctx.alpha_pows[j], beta)))
        e1 = F.div(omega(beta), denom)
        num2, den2 = dfx(x), dlam(beta)
        e2 = F.div(F.mul(F.mul(omega(beta), al), num2), F.mul(den2, scale)) if num2 and den2 else None
        out.append((e1, e2))
    return out


def decode(received: Sequence[int], ctx: DecoderContext) -> DecodingResult:
    """Correct up to ``t_max`` symbol errors; never returns a non-codeword."""
    code = ctx.code
    received = [int(c) for c in received]
    if len(received) != code.n or any(not 0 <= c < code.q for c in received):
        raise ValueError(f"received word must have {code.n} symbols in range({code.q})")
    S = syndrome(received, ctx)
    if S.is_zero():
        F = ctx.field
        return DecodingResult(OK, S, Poly.one(F), Poly(F), [], [], list(received), "none")
    solved = solve_key_equation(S, ctx)
    if solved is None:
        return DecodingResult(FAILURE, S, reason="key equation has no admissible solution")
    lam, omega, method = solved
    positions = _factorizes(lam, ctx)
    if positions is None:
        return DecodingResult(FAILURE, S, lam, omega, method=method, reason="locator does not factor over the beta table")
    values_F = evaluate_errors(omega, lam, positions, ctx)
    if values_F is None:
        return DecodingResult(FAILURE, S, lam, omega, positions, method=method, reason="zero denominator or error value")
    emb = embedding(code.base, ctx.field)
    values = []
    for e in values_F:
        c = emb.preimage(e)
        if c is None:
            return DecodingResult(FAILURE, S, lam, omega, positions, method=method, reason="error value outside GF(q)")
        values.append(c)
    base = code.base
    word = list(received)
    for i, e in zip(positions, values):
        word[i] = base.sub(word[i], e)
    if not code.contains(word):
        return DecodingResult(FAILURE, S, lam, omega, positions, values, method=method, reason="output is not a codeword")
    return DecodingResult(OK, S, lam, omega, positions, values, word, method)

"""BCH, Hartmann-Tzeng, rational-function and Boston distance bounds.

Each bound comes with a ``BoundCertificate`` whose witness can be replayed
against the defining set without touching the search kernels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import kernels
from .series import Registry, RationalCandidate, default_registry, validate_candidate

BCH = "BCH"
HT = "HT"
RATIONAL = "RATIONAL"
BOSTON = "BOSTON"


@dataclass
class BoundCertificate:
    kind: str
    value: int
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "value": self.value, "witness": dict(self.witness)}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BoundCertificate":
        return cls(kind=d["kind"], value=int(d["value"]), witness=dict(d["witness"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BoundCertificate":
        return cls.from_dict(json.loads(text))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def rational_value(run: int, v: int, u: int, n: int) -> int:
    """``ceil((run - v)/u + 1)`` clamped to ``[1, n]``."""
    return max(1, min(n, _ceil_div(run - v, u) + 1))


def coprime_residues(n: int) -> list[int]:
    return [z for z in range(1, n) if math.gcd(z, n) == 1] or [1]


def _mask(code) -> np.ndarray:
    m = np.zeros(code.n, dtype=np.uint8)
    m[list(code.defining_set)] = 1
    return m


# --- BCH ---


def bch_bound(code) -> BoundCertificate:
    """Longest arithmetic progression ``b, b+m1, ...`` in D with ``gcd(m1, n) = 1``."""
    n = code.n
    spacings = coprime_residues(n)
    runs = kernels.zero_runs(
        _mask(code), np.ones((1, 1), dtype=np.uint8), np.array([1]), np.array(spacings)
    )[0]
    flat = int(np.argmax(runs))  # first maximum in (m1, b) order
    zi, b = divmod(flat, n)
    run = int(runs[zi, b])
    d0 = max(1, min(n, run + 1))
    return BoundCertificate(BCH, d0, {"b": b, "m1": spacings[zi], "d0": d0})


def replay_bch(code, cert: BoundCertificate) -> bool:
    n, w = code.n, cert.witness
    ds = set(code.defining_set)
    if math.gcd(w["m1"], n) != 1 or cert.value != w["d0"]:
        return False
    return all((w["b"] + i * w["m1"]) % n in ds for i in range(min(w["d0"] - 1, n)))


# --- HT ---


def ht_bound(code) -> BoundCertificate:
    """Largest ``d0 + nu`` over grids ``{b + i1 m1 + i2 m2}`` contained in D."""
    val, d0, b, m1, m2, nu = (int(x) for x in kernels.ht_search(_mask(code), np.array(coprime_residues(code.n))))
    if d0 < 2:
        b, m1, m2, nu = 0, 1, 0, 0
    return BoundCertificate(HT, val, {"b": b, "m1": m1, "m2": m2, "d0": d0, "nu": nu})


def replay_ht(code, cert: BoundCertificate) -> bool:
    n, w = code.n, cert.witness
    ds = set(code.defining_set)
    if math.gcd(w["m1"], n) != 1 or (w["nu"] > 0 and math.gcd(w["m2"], n) != 1):
        return False
    if cert.value != max(1, min(n, w["d0"] + w["nu"])):
        return False
    for i1 in range(w["d0"] - 1):
        for i2 in range(w["nu"] + 1):
            if (w["b"] + i1 * w["m1"] + i2 * w["m2"]) % n not in ds:
                return False
    return True


# --- rational ---


def _rational_witness(code, cand: RationalCandidate, z1: int, b: int, run: int) -> dict[str, Any]:
    n = code.n
    return {
        "candidate": cand.label,
        "h": list(cand.h.coeffs),
        "f": list(cand.f.coeffs),
        "a": list(cand.signed_coeffs()),
        "p": cand.period,
        "u": cand.u,
        "v": cand.v,
        "b": b,
        "z1": z1,
        "mu": run + 1,
        "degenerate": run >= n * cand.period,
    }


def _rational_runs(code, registry: Registry):
    cands = registry.valid_for(code.n)
    spacings = coprime_residues(code.n)
    pmax = max(c.period for c in cands)
    pattern = np.zeros((len(cands), pmax), dtype=np.uint8)
    for i, c in enumerate(cands):
        pattern[i, : c.period] = c.nonzero_pattern
    runs = kernels.zero_runs(_mask(code), pattern, np.array([c.period for c in cands]), np.array(spacings))
    return cands, spacings, runs


def _key(run: int, cand: RationalCandidate, n: int) -> tuple[int, Fraction, int]:
    return (rational_value(run, cand.v, cand.u, n), Fraction(run - cand.v, cand.u), run)


def rational_bound(code, registry: Registry | None = None) -> BoundCertificate:
    """Best ``ceil((mu - 1 - v)/u + 1)`` over valid candidates, spacings and starts.

    Preference: larger bound, then larger exact ratio ``(mu-1-v)/u``, then
    longer run; remaining ties go to the first hit in registry, ``z1``, ``b``
    order.
    """
    registry = registry or default_registry(code.q)
    n = code.n
    cands, spacings, runs = _rational_runs(code, registry)
    best_key = None
    best = None
    for ci, cand in enumerate(cands):
        flat = int(np.argmax(runs[ci]))
        zi, b = divmod(flat, n)
        run = int(runs[ci, zi, b])
        key = _key(run, cand, n)
        if best_key is None or key > best_key:
            best_key, best = key, (cand, spacings[zi], b, run)
    cand, z1, b, run = best
    return BoundCertificate(RATIONAL, best_key[0], _rational_witness(code, cand, z1, b, run))


def optimal_rational_witnesses(code, registry: Registry | None = None) -> list[BoundCertificate]:
    """Every ``(candidate, z1, b)`` reaching the preferred key of ``rational_bound``."""
    registry = registry or default_registry(code.q)
    n = code.n
    cands, spacings, runs = _rational_runs(code, registry)
    best_key = max(_key(int(runs[ci].max()), c, n) for ci, c in enumerate(cands))
    out = []
    for ci, cand in enumerate(cands):
        for zi, b in zip(*np.nonzero(runs[ci] == runs[ci].max())):
            run = int(runs[ci, zi, b])
            if _key(run, cand, n) == best_key:
                out.append(
                    BoundCertificate(RATIONAL, best_key[0], _rational_witness(code, cand, spacings[zi], int(b), run))
                )
    return out


def replay_rational(code, cert: BoundCertificate) -> bool:
    n, w = code.n, cert.witness
    ds = set(code.defining_set)
    p, z1, b, run = w["p"], w["z1"], w["b"], w["mu"] - 1
    a = w["a"]
    if math.gcd(p, n) != 1 or math.gcd(z1, n) != 1 or len(a) != p:
        return False
    for j in range(run):
        if a[j % p] != 0 and (b + j * z1) % n not in ds:
            return False
    if w["degenerate"]:
        if run != n * p:
            return False
    elif a[run % p] == 0 or (b + run * z1) % n in ds:
        return False  # run could be extended
    return cert.value == rational_value(run, w["v"], w["u"], n)


def replay(code, cert: BoundCertificate) -> bool:
    """Independent check of a certificate against the code's defining set."""
    if cert.kind == BCH:
        return replay_bch(code, cert)
    if cert.kind == HT:
        return replay_ht(code, cert)
    if cert.kind == RATIONAL:
        return replay_rational(code, cert)
    if cert.kind == BOSTON:
        return replay_boston(code, cert)
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


def candidate_from_witness(code, cert: BoundCertificate, registry: Registry | None = None) -> RationalCandidate:
    registry = registry or default_registry(code.q)
    for c in registry:
        if list(c.h.coeffs) == cert.witness["h"] and list(c.f.coeffs) == cert.witness["f"]:
            return c
    raise KeyError(f"candidate {cert.witness['candidate']!r} is not in the registry")


# --- Boston ---


@dataclass(frozen=True)
class BostonPattern:
    ident: int
    pattern: tuple[int, ...]
    d_boston: int
    f: tuple[int, ...]  # constant term first
    interval: tuple[int, int]
    forbidden_divisor: int | None  # pattern applies only when this does not divide n


# All rational values use h = x on the listed index interval with z1 = 1.
BOSTON_PATTERNS = (
    BostonPattern(1, (0, 1, 3, 4), 4, (1, 1, 1), (-1, 5), 3),
    BostonPattern(2, (0, 1, 3, 5), 4, (1, 0, 1), (0, 6), None),
    BostonPattern(5, (0, 1, 3, 4, 6), 5, (1, 1, 1), (-1, 6), 3),
    BostonPattern(6, (0, 1, 2, 4, 5, 6, 8), 6, (1, 0, 1), (-1, 8), 4),
    BostonPattern(7, (0, 1, 3, 4, 6, 7), 6, (1, 1, 1), (-1, 8), 3),
    BostonPattern(10, (0, 1, 3, 4, 6, 7, 9), 7, (1, 1, 1), (-1, 9), 3),
)


def _boston_candidate(q: int, f_ints: Sequence[int]) -> RationalCandidate:
    from .field import Poly, gf_q
    from .series import make_candidate

    base = gf_q(q)
    return make_candidate(Poly.x(base), Poly.from_ints(base, f_ints))


def _interval_run(code, cand: RationalCandidate, start: int, stop: int) -> int:
    ds = set(code.defining_set)
    n, p = code.n, cand.period
    run = 0
    for j in range(stop - start + 1):
        if cand.coeffs[j % p] != 0 and (start + j) % n not in ds:
            break
        run += 1
    return run


def boston_bounds(code) -> list[BoundCertificate]:
    """Boston patterns contained in D, each with the matching rational value.

    The rational value is ``None`` when the denominator's period is not
    coprime to ``n``.
    """
    n = code.n
    ds = set(code.defining_set)
    out = []
    for pat in BOSTON_PATTERNS:
        if pat.forbidden_divisor and n % pat.forbidden_divisor == 0:
            continue
        if max(pat.pattern) >= n or not all(i in ds for i in pat.pattern):
            continue
        cand = _boston_candidate(code.q, pat.f)
        d_f = None
        run = None
        if math.gcd(n, cand.period) == 1:
            run = _interval_run(code, cand, *pat.interval)
            d_f = rational_value(run, cand.v, cand.u, n)
        out.append(
            BoundCertificate(
                BOSTON,
                pat.d_boston,
                {
                    "bound": pat.ident,
                    "pattern": list(pat.pattern),
                    "d_f": d_f,
                    "f": list(cand.f.coeffs),
                    "h": list(cand.h.coeffs),
                    "a": list(cand.signed_coeffs()),
                    "interval": list(pat.interval),
                    "mu": None if run is None else run + 1,
                },
            )
        )
    return out


def replay_boston(code, cert: BoundCertificate) -> bool:
    w = cert.witness
    ds = set(code.defining_set)
    if w["bound"] == "question":
        r = w["r"]
        return (
            code.n % 3 != 0
            and r % 3 != 2
            and cert.value == (r + 4) // 2
            and all(i in ds for i in range(r + 1) if i % 3 != 2)
        )
    pats = {p.ident: p for p in BOSTON_PATTERNS}
    pat = pats.get(w["bound"])
    if pat is None or cert.value != pat.d_boston:
        return False
    if pat.forbidden_divisor and code.n % pat.forbidden_divisor == 0:
        return False
    return all(i in ds for i in pat.pattern)


def boston_question_bound(code) -> int | None:
    """``ceil((r+1)/2 + 1)`` for the largest ``r`` with ``{i <= r : i mod 3 != 2}`` inside D."""
    r = boston_question_r(code)
    return None if r is None else (r + 4) // 2


def boston_question_r(code) -> int | None:
    n = code.n
    if n % 3 == 0:
        return None
    ds = set(code.defining_set)
    best = None
    for r in range(1, n):
        if r % 3 == 2:
            continue
        if all(i in ds for i in range(r + 1) if i % 3 != 2):
            best = r
        else:
            break
    return best


def all_bounds(code, registry: Registry | None = None) -> list[BoundCertificate]:
    certs = [bch_bound(code), ht_bound(code), rational_bound(code, registry)]
    certs.extend(boston_bounds(code))
    q = boston_question_bound(code)
    if q is not None:
        certs.append(BoundCertificate(BOSTON, q, {"bound": "question", "r": boston_question_r(code)}))
    return certs

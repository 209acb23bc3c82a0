"""Rational power series h(x)/f(x): expansion, period, shifts and candidates."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .field import FiniteField, Poly, embedding, gf_q, poly_gcd


def _check_denominator(f: Poly) -> None:
    if f.is_zero() or f[0] == 0:
        raise ValueError("no power-series expansion: f(0) = 0")


def expand_series(h: Poly, f: Poly, length: int) -> list[int]:
    """First ``length`` coefficients of the formal power series ``h/f``."""
    _check_denominator(f)
    F = f.field
    inv0 = F.inv(f[0])
    fc = f.coeffs
    u = len(fc) - 1
    out: list[int] = []
    for j in range(length):
        acc = h[j]
        for i in range(1, min(j, u) + 1):
            if fc[i]:
                acc = F.sub(acc, F.mul(fc[i], out[j - i]))
        out.append(F.mul(acc, inv0))
    return out


def series_period(h: Poly, f: Poly) -> int:
    """Smallest ``p`` with ``h (1 - x^p) = 0 mod f``."""
    _check_denominator(f)
    F = f.field
    g = poly_gcd(h, f) if h else f.monic()
    f_red = f // g  # h/f == (h/g)/(f/g) with coprime parts
    if f_red.degree == 0:
        return 1
    x = Poly.x(F)
    one = Poly.one(F)
    cur = x % f_red
    bound = F.order ** f_red.degree
    for p in range(1, bound + 1):
        if cur == one:
            return p
        cur = (cur * x) % f_red
    raise ArithmeticError("series is not periodic")  # pragma: no cover


def shift_numerator(f: Poly, t: int) -> Poly:
    """Numerator ``h = x^t mod f``: ``h/f`` is ``1/f`` rotated right by ``t`` places."""
    _check_denominator(f)
    if t < 0:
        raise ValueError("shift must be nonnegative")
    return Poly.monomial(f.field, t) % f


@dataclass(frozen=True, eq=False)
class RationalCandidate:
    """A rational function ``h/f`` with its periodic coefficient sequence."""

    h: Poly
    f: Poly
    period: int
    coeffs: tuple[int, ...]
    label: str

    @property
    def v(self) -> int:
        return 0 if self.h.is_zero() else int(self.h.degree)

    @property
    def u(self) -> int:
        return int(self.f.degree)

    @property
    def q(self) -> int:
        return self.f.field.order

    @property
    def nonzero_pattern(self) -> tuple[int, ...]:
        return tuple(int(c != 0) for c in self.coeffs)

    @property
    def is_bch(self) -> bool:
        return self.u == 1 and self.period == 1

    def signed_coeffs(self) -> tuple[int, ...]:
        """Coefficients with ``p - c`` written as ``-c`` for prime fields."""
        F = self.f.field
        if F.m != 1:
            return self.coeffs
        p = F.p
        return tuple(c - p if c > p // 2 else c for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalCandidate) and (self.h, self.f) == (other.h, other.f)

    def __hash__(self) -> int:
        return hash((self.h, self.f))

    def __repr__(self) -> str:
        return f"RationalCandidate({self.label!r}, p={self.period}, a={self.signed_coeffs()})"


def make_candidate(h: Poly, f: Poly, label: str | None = None) -> RationalCandidate:
    """Validate and package ``h/f``; raises ``ValueError`` on a malformed pair."""
    if h.field != f.field:
        raise ValueError("h and f must share a field")
    _check_denominator(f)
    if f.degree < 1:
        raise ValueError("denominator must have positive degree")
    if h.is_zero():
        raise ValueError("numerator must be nonzero")
    if h.degree >= f.degree:
        raise ValueError("numerator degree must be below denominator degree")
    if poly_gcd(h, f).degree != 0:
        raise ValueError("h and f must be coprime")
    p = series_period(h, f)
    coeffs = tuple(expand_series(h, f, p))
    if label is None:
        label = f"({_fmt(h)})/({_fmt(f)})"
    return RationalCandidate(h=h, f=f, period=p, coeffs=coeffs, label=label)


def _fmt(g: Poly) -> str:
    F = g.field
    terms = []
    for i, c in enumerate(g.coeffs):
        if not c:
            continue
        if F.m == 1 and c == F.p - 1 and F.p > 2:
            sign, mag = "-", 1
        else:
            sign, mag = "+", c
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}{mono}")
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f"{sign}{body}"
    return s


@dataclass(frozen=True)
class Validity:
    valid: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


@lru_cache(maxsize=4096)
def _lemma_cross_check(n: int, cand: RationalCandidate) -> bool:
    """Directly check that ``f(x)`` and ``f(alpha^d x)`` are coprime for ``0 < d < n``."""
    from .code import code_fields

    base = cand.f.field
    _, ext, alpha = code_fields(n, base.order)
    fe = embedding(base, ext).poly(cand.f)
    for d in range(1, n):
        if poly_gcd(fe, fe.scale_variable(ext.pow(alpha, d))).degree > 0:
            return False
    return True


def validate_candidate(n: int, cand: RationalCandidate) -> Validity:
    """A candidate is usable at length ``n`` iff its period is coprime to ``n``."""
    if math.gcd(n, cand.period) != 1:
        return Validity(False, f"period {cand.period} shares a factor with n = {n}")
    if poly_gcd(cand.h, cand.f).degree != 0:
        return Validity(False, "h and f are not coprime")
    if n <= 64 and not _lemma_cross_check(n, cand):
        return Validity(False, "f(alpha^i x) factors are not pairwise coprime")
    return Validity(True)


# --- registry ---


def bch_candidate(base: FiniteField) -> RationalCandidate:
    return make_candidate(Poly.one(base), Poly.from_ints(base, [1, -1]), "bch 1/(1-x)")


def _family(base: FiniteField, f_ints: Sequence[int], name: str) -> list[RationalCandidate]:
    f = Poly.from_ints(base, f_ints)
    p = series_period(Poly.one(base), f)
    return [make_candidate(shift_numerator(f, t), f, f"1/({name}) shift {t}") for t in range(p)]


FAMILIES = {
    "x^2+x+1": (1, 1, 1),
    "x^3+x^2+x+1": (1, 1, 1, 1),
    "x^3+x+1": (1, 1, 0, 1),
    "x^4+x+1": (1, 1, 0, 0, 1),
}


class Registry:
    """Ordered, immutable collection of candidates for one alphabet size."""

    def __init__(
        self,
        q: int,
        candidates: Iterable[RationalCandidate],
        rejected: Iterable[tuple[int, str]] = (),
    ):
        self.q = q
        self.candidates = tuple(candidates)
        self.rejected = tuple(rejected)

    def __iter__(self) -> Iterator[RationalCandidate]:
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, i: int) -> RationalCandidate:
        return self.candidates[i]

    def valid_for(self, n: int) -> list[RationalCandidate]:
        return [c for c in self.candidates if validate_candidate(n, c)]

    def find(self, label: str) -> RationalCandidate:
        for c in self.candidates:
            if c.label == label:
                return c
        raise KeyError(label)


@lru_cache(maxsize=None)
def default_registry(q: int) -> Registry:
    """BCH, then ``1/(x^2+x+1)`` and ``1/(x^3+x^2+x+1)`` with every shift;
    for ``q = 2`` also ``1/(x^3+x+1)`` and ``1/(x^4+x+1)`` with every shift."""
    base = gf_q(q)
    cands = [bch_candidate(base)]
    names = ["x^2+x+1", "x^3+x^2+x+1"]
    if q == 2:
        names += ["x^3+x+1", "x^4+x+1"]
    for name in names:
        cands.extend(_family(base, FAMILIES[name], name))
    return Registry(q, cands)


@lru_cache(maxsize=None)
def table_registry(q: int, n: int | None = None) -> Registry:
    """Registry for the table statistics: BCH plus the period 3 and 4 families.

    With ``n`` given only one family is kept, ``1/(x^2+x+1)`` when its period
    is coprime to ``n`` and ``1/(x^3+x^2+x+1)`` otherwise.
    """
    base = gf_q(q)
    cands = [bch_candidate(base)]
    names = ("x^2+x+1", "x^3+x^2+x+1")
    if n is not None:
        names = names[:1] if math.gcd(n, 3) == 1 else names[1:]
    for name in names:
        cands.extend(_family(base, FAMILIES[name], name))
    return Registry(q, cands)


_LINE = re.compile(r"(\w+)=(\S+)")


def _parse_coeffs(text: str, base: FiniteField) -> Poly:
    vals = [int(t) for t in text.strip("()[]").split(",") if t.strip()]
    out = []
    for k in vals:
        if 0 <= k < base.order:
            out.append(k)
        elif k < 0 and -k < base.p:
            out.append(base.neg(-k))
        else:
            raise ValueError(f"coefficient {k} is not an element of GF({base.order})")
    return Poly(base, out)


def parse_registry(text: str, q: int, include_bch: bool = True) -> Registry:
    """Parse registry lines ``q=<int> f=<c0,c1,...> h=<c0,c1,...> [label=<name>]``.

    Blank lines and ``#`` comments are ignored, lines for another ``q`` are
    skipped, and malformed lines are collected in ``rejected`` as
    ``(line_number, reason)``.
    """
    base = gf_q(q)
    cands = [bch_candidate(base)] if include_bch else []
    rejected: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = dict(_LINE.findall(line))
        try:
            leftover = _LINE.sub("", line).strip()
            if leftover:
                raise ValueError(f"unexpected text {leftover!r}")
            if "q" not in fields or "f" not in fields:
                raise ValueError("entries need q= and f=")
            if int(fields["q"]) != q:
                continue
            f = _parse_coeffs(fields["f"], base)
            h = _parse_coeffs(fields.get("h", "1"), base)
            cand = make_candidate(h, f, fields.get("label"))
        except ValueError as exc:
            rejected.append((lineno, str(exc)))
            continue
        if cand not in cands:
            cands.append(cand)
    return Registry(q, cands, rejected)


def load_registry(path: str | Path, q: int) -> Registry:
    return parse_registry(Path(path).read_text(), q)

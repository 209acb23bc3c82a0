"""Cyclotomic cosets, defining sets and cyclic codes over GF(q)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .field import (
    FiniteField,
    Poly,
    embedding,
    gf_q,
    minimal_splitting_degree,
    nth_root_of_unity,
    prime_power,
)

NOT_REVERSIBLE = "not-reversible"
REVERSIBLE = "reversible"
SYMMETRIC_REVERSIBLE_LENGTH = "symmetric-reversible-length"


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit of ``representative`` under multiplication by ``q`` modulo ``n``.

    ``members`` keeps orbit order: ``r, rq, rq^2, ...``.
    """

    representative: int
    n: int
    q: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i % self.n in self.members

    def __iter__(self):
        return iter(self.members)

    @property
    def leader(self) -> int:
        return min(self.members)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


def cyclotomic_coset(n: int, q: int, r: int) -> CyclotomicCoset:
    r %= n
    members = [r]
    x = r * q % n
    while x != r:
        members.append(x)
        x = x * q % n
    return CyclotomicCoset(r, n, q, tuple(members))


@lru_cache(maxsize=None)
def cyclotomic_cosets(n: int, q: int) -> tuple[CyclotomicCoset, ...]:
    """All cosets modulo ``n``, ordered by their smallest element."""
    if math.gcd(n, q) != 1:
        raise ValueError("length shares factor with characteristic")
    seen = [False] * n
    out = []
    for r in range(n):
        if not seen[r]:
            c = cyclotomic_coset(n, q, r)
            for i in c.members:
                seen[i] = True
            out.append(c)
    return tuple(out)


@lru_cache(maxsize=None)
def code_fields(n: int, q: int) -> tuple[FiniteField, FiniteField, int]:
    """``(GF(q), GF(q^s), alpha)`` for length ``n``."""
    s = minimal_splitting_degree(n, q)
    base = gf_q(q)
    ext = gf_q(q, s)
    return base, ext, nth_root_of_unity(ext, n)


def minimal_polynomial(coset: CyclotomicCoset, alpha: int, ext: FiniteField, base: FiniteField) -> Poly:
    """``prod_{i in coset} (x - alpha^i)`` mapped back to the base field."""
    f = Poly.one(ext)
    for i in coset.members:
        f = f * Poly(ext, (ext.neg(ext.pow(alpha, i)), 1))
    g = embedding(base, ext).poly_preimage(f)
    if g is None:
        raise ArithmeticError("minimal polynomial has coefficients outside the base field")
    return g


@lru_cache(maxsize=None)
def coset_minimal_polynomial(n: int, q: int, leader: int) -> Poly:
    """Minimal polynomial over GF(q) of ``alpha^leader``."""
    base, ext, alpha = code_fields(n, q)
    return minimal_polynomial(cyclotomic_coset(n, q, leader), alpha, ext, base)


@dataclass(frozen=True, eq=False)
class CyclicCode:
    """A cyclic code of length ``n`` over GF(q) given by its defining set."""

    q: int
    n: int
    representatives: tuple[int, ...]
    defining_set: tuple[int, ...]
    generator: Poly
    base: FiniteField = dc_field(repr=False)
    ext: FiniteField = dc_field(repr=False)
    alpha: int = dc_field(repr=False)

    @property
    def k(self) -> int:
        return self.n - len(self.defining_set)

    @property
    def cosets(self) -> tuple[CyclotomicCoset, ...]:
        return tuple(cyclotomic_coset(self.n, self.q, r) for r in self.representatives)

    @property
    def defining_mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=np.uint8)
        m[list(self.defining_set)] = 1
        return m

    def __contains__(self, i: int) -> bool:  # membership of an index in D_C
        return i % self.n in self._dset

    @property
    def _dset(self) -> frozenset[int]:
        return frozenset(self.defining_set)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicCode) and (self.q, self.n, self.defining_set) == (
            other.q,
            other.n,
            other.defining_set,
        )

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.defining_set))

    def __repr__(self) -> str:
        return f"CyclicCode(q={self.q}, n={self.n}, k={self.k}, cosets={list(self.representatives)})"

    @property
    def spec(self) -> str:
        return f"q={self.q} n={self.n} cosets={','.join(map(str, self.representatives))}"

    # -- codewords --

    def parity_polynomial(self) -> Poly:
        """``(x^n - 1) / g(x)``."""
        F = self.base
        xn1 = Poly(F, [F.neg(1)] + [0] * (self.n - 1) + [1])
        return xn1 // self.generator

    def encode(self, message: Sequence[int]) -> list[int]:
        """Non-systematic encoding ``m(x) g(x)``; returns ``n`` symbols."""
        if len(message) > self.k:
            raise ValueError(f"message longer than k = {self.k}")
        c = Poly(self.base, message) * self.generator
        return list(c.coeffs) + [0] * (self.n - len(c.coeffs))

    def syndrome_poly(self, word: Sequence[int]) -> Poly:
        return Poly(self.base, word) % self.generator

    def contains(self, word: Sequence[int]) -> bool:
        if len(word) != self.n:
            raise ValueError(f"word must have length {self.n}")
        return self.syndrome_poly(word).is_zero()

    def generator_matrix(self) -> np.ndarray:
        """``k x n`` matrix whose rows are the shifts ``x^i g(x)``."""
        g = self.generator.coeffs
        G = np.zeros((self.k, self.n), dtype=np.int64)
        for i in range(self.k):
            G[i, i : i + len(g)] = g
        return G

    def random_codeword(self, rng: np.random.Generator) -> list[int]:
        msg = [int(x) for x in rng.integers(0, self.q, size=self.k)]
        return self.encode(msg)

    def evaluate(self, word: Sequence[int], i: int) -> int:
        """``word(alpha^i)`` in the splitting field."""
        emb = embedding(self.base, self.ext)
        return Poly(self.ext, [emb(c) for c in word])(self.ext.pow(self.alpha, i))


def build_code(n: int, q: int, coset_representatives: Sequence[int]) -> CyclicCode:
    """Cyclic code whose defining set is the union of the given cosets.

    Representatives may be negative; they are reduced modulo ``n`` and
    duplicate cosets are merged.  Each coset is reported by its smallest
    element.
    """
    if n < 1:
        raise ValueError("length must be positive")
    prime_power(q)
    if math.gcd(n, q) != 1:
        raise ValueError("length shares factor with characteristic")
    base, ext, alpha = code_fields(n, q)
    leaders: set[int] = set()
    dset: set[int] = set()
    for r in coset_representatives:
        c = cyclotomic_coset(n, q, int(r))
        if c.leader not in leaders:
            leaders.add(c.leader)
            dset.update(c.members)
    g = Poly.one(base)
    for lead in sorted(leaders):
        g = g * coset_minimal_polynomial(n, q, lead)
    return CyclicCode(
        q=q,
        n=n,
        representatives=tuple(sorted(leaders)),
        defining_set=tuple(sorted(dset)),
        generator=g,
        base=base,
        ext=ext,
        alpha=alpha,
    )


@dataclass(frozen=True)
class DefiningSet:
    """Lightweight description of one coset union, used by the tabulator."""

    n: int
    q: int
    mask: int
    representatives: tuple[int, ...]
    defining_set: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.n - len(self.defining_set)

    def __contains__(self, i: int) -> bool:
        return i % self.n in set(self.defining_set)

    def build(self) -> CyclicCode:
        return build_code(self.n, self.q, self.representatives)


def enumerate_defining_sets(n: int, q: int) -> Iterator[DefiningSet]:
    """All ``2^c`` unions of the ``c`` cosets, by ascending bitmask.

    Bit ``i`` of the mask selects the coset with the ``i``-th smallest leader.
    """
    cosets = cyclotomic_cosets(n, q)
    for mask in range(1 << len(cosets)):
        reps = []
        ds: list[int] = []
        for i, c in enumerate(cosets):
            if mask >> i & 1:
                reps.append(c.leader)
                ds.extend(c.members)
        yield DefiningSet(n, q, mask, tuple(reps), tuple(sorted(ds)))


def enumerate_codes(n: int, q: int) -> Iterator[CyclicCode]:
    for d in enumerate_defining_sets(n, q):
        yield d.build()


def symmetric_reversible_degree(n: int, q: int) -> int | None:
    """Smallest ``m >= 1`` with ``n | q^m + 1``, or ``None``."""
    if math.gcd(n, q) != 1:
        return None
    if n <= 2:
        return 1 if (q + 1) % n == 0 else None
    x = q % n
    for m in range(1, n + 1):
        if x == n - 1:
            return m
        if x == 1:
            return None
        x = x * q % n
    return None


def is_reversible(n: int, defining_set: Sequence[int]) -> bool:
    ds = {i % n for i in defining_set}
    return all((-i) % n in ds for i in ds)


def classify_reversible(n: int, q: int, code: CyclicCode | DefiningSet | Sequence[int]) -> str:
    """Reversibility class of a code (a symmetric-reversible length dominates)."""
    if symmetric_reversible_degree(n, q) is not None:
        return SYMMETRIC_REVERSIBLE_LENGTH
    ds = code.defining_set if hasattr(code, "defining_set") else code
    return REVERSIBLE if is_reversible(n, ds) else NOT_REVERSIBLE


_SPEC_TOKEN = re.compile(r"^(q|n|cosets)=(.*)$")


class CodeSpecError(ValueError):
    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


def parse_code_spec(text: str | Sequence[str]) -> tuple[int, int, list[int]]:
    """Parse ``q=<int> n=<int> cosets=<r1,r2,...>`` into ``(q, n, reps)``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    values: dict[str, str] = {}
    for tok in tokens:
        m = _SPEC_TOKEN.match(tok)
        if not m:
            raise CodeSpecError("unrecognized code spec token", tok)
        if m.group(1) in values:
            raise CodeSpecError("repeated code spec key", tok)
        values[m.group(1)] = m.group(2)
    for key in ("q", "n"):
        if key not in values:
            raise CodeSpecError("missing code spec key", key)
    try:
        q = int(values["q"])
    except ValueError:
        raise CodeSpecError("q must be an integer", f"q={values['q']}") from None
    try:
        n = int(values["n"])
    except ValueError:
        raise CodeSpecError("n must be an integer", f"n={values['n']}") from None
    if n < 1:
        raise CodeSpecError("n must be positive", f"n={values['n']}")
    try:
        prime_power(q)
    except ValueError:
        raise CodeSpecError("q must be a prime power", f"q={values['q']}") from None
    if math.gcd(n, q) != 1:
        raise CodeSpecError("length shares factor with characteristic", f"n={n}")
    reps: list[int] = []
    raw = values.get("cosets", "").strip().strip("{}")
    if raw:
        for part in raw.split(","):
            try:
                reps.append(int(part) % n)
            except ValueError:
                raise CodeSpecError("coset representative must be an integer", part) from None
    return q, n, reps


def code_from_spec(text: str | Sequence[str]) -> CyclicCode:
    q, n, reps = parse_code_spec(text)
    return build_code(n, q, reps)

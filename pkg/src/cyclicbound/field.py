"""Finite fields GF(p^m) and dense polynomials over them.

Elements are plain ``int`` values: the coordinate vector over GF(p) in the
polynomial basis, packed base p with the constant coordinate as the least
significant digit.  The prime subfield is therefore ``range(p)`` in every
field, which makes prime-field constants interchangeable across fields.

Fields with at most ``TABLE_LIMIT`` elements carry exponent/logarithm tables
(and Zech logarithms for odd characteristic); larger fields fall back to
schoolbook arithmetic in the polynomial basis.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

TABLE_LIMIT = 1 << 20

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # these bases are deterministic below 3.3e24; beyond that the test is probabilistic
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    """A nontrivial factor of the odd composite ``n`` (Pollard-Brent)."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"no factor found for {n}")  # pragma: no cover


@lru_cache(maxsize=None)
def _factor_tuple(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for d in (2, 3, 5, 7, 11, 13):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    d = 17
    while d * d <= n and d < 1 << 12:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        k = stack.pop()
        if _is_probable_prime(k):
            out[k] = out.get(k, 0) + 1
        else:
            f = _rho(k)
            stack += [f, k // f]
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization: trial division, then Pollard-Brent for large cofactors."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    return dict(_factor_tuple(n))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q = p**e``; raise ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def minimal_splitting_degree(n: int, q: int) -> int:
    """Smallest ``s`` with ``n | q**s - 1``."""
    if n < 1:
        raise ValueError("length must be positive")
    if math.gcd(n, q) != 1:
        raise ValueError("length shares factor with characteristic")
    return multiplicative_order(q, n)


# --- polynomials over GF(p) as coefficient lists (modulus handling only) ---


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pl_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pl_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pl_mod(a, b, p)
    return a


# --- the same over GF(2), packed as bit masks ---


def _b2_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _b2_mulmod(a: int, b: int, m: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
    return _b2_mod(out, m)


def _b2_powmod(a: int, e: int, m: int) -> int:
    result, base = 1, _b2_mod(a, m)
    while e:
        if e & 1:
            result = _b2_mulmod(result, base, m)
        base = _b2_mulmod(base, base, m)
        e >>= 1
    return result


def _b2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _b2_mod(a, b)
    return a


def _pack2(f: Sequence[int]) -> int:
    return sum(1 << i for i, c in enumerate(f) if c)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(p)."""
    f = _trim([int(c) % p for c in modulus])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if p == 2:
        fb = _pack2(f)
        h = 2
        for _ in range(m):
            h = _b2_mulmod(h, h, fb)
        if h != 2:
            return False
        for r in factorize(m):
            h = 2
            for _ in range(m // r):
                h = _b2_mulmod(h, h, fb)
            if _b2_gcd(fb, h ^ 2) != 1:
                return False
        return True
    ring = _QuotientRing(f, p)
    x = ring.x()
    h = x
    for _ in range(m):
        h = ring.powmod(h, p)
    if not np.array_equal(h, x):
        return False
    for r in factorize(m):
        h = x
        for _ in range(m // r):
            h = ring.powmod(h, p)
        h[1] = (h[1] - 1) % p
        g = _pl_gcd(f, h.tolist(), p)
        if len(g) > 1:
            return False
    return True


class _QuotientRing:
    """GF(p)[x] / (f) for monic ``f``, elements as length-``m`` int64 arrays.

    The products are reduced with the precomputed rows ``x^(m+i) mod f``.
    """

    def __init__(self, f: Sequence[int], p: int):
        self.p = p
        self.m = m = len(f) - 1
        rows = []
        cur = [(-c) % p for c in f[:m]]  # x^m mod f
        for _ in range(m - 1):
            rows.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * fc) % p for c, fc in zip(cur, f[:m])]
        self.red = np.array(rows, dtype=np.int64).reshape(m - 1, m)

    def x(self) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.int64)
        out[1 % self.m] += 1
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        c = np.convolve(a, b) % self.p
        m = self.m
        return (c[:m] + c[m:] @ self.red) % self.p

    def powmod(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.zeros(self.m, dtype=np.int64)
        result[0] = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result


def _x_is_primitive(f: list[int], p: int) -> bool:
    m = len(f) - 1
    order = p**m - 1
    for r in factorize(order):
        if p == 2:
            if _b2_powmod(2, order // r, _pack2(f)) == 1:
                return False
        else:
            ring = _QuotientRing(f, p)
            h = ring.powmod(ring.x(), order // r)
            if h[0] == 1 and not h[1:].any():
                return False
    return True


def _smallest_primitive_polynomial(p: int, m: int) -> tuple[int, ...]:
    for code in range(1, p**m):
        low = [(code // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        f = low + [1]
        if is_irreducible(f, p) and _x_is_primitive(f, p):
            return tuple(f)
    raise RuntimeError(f"no primitive polynomial of degree {m} over GF({p})")


class FiniteField:
    """The field GF(p^m) with elements encoded as integers in ``range(p**m)``.

    ``modulus`` (constant term first, monic) defaults to the smallest
    primitive polynomial of degree ``m``; a user-supplied modulus is checked
    for irreducibility.  ``primitive`` is the smallest element (in integer
    order) of multiplicative order ``order - 1``.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if p < 2 or len(factorize(p)) != 1 or factorize(p).get(p) != 1:
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.m = m
        self.order = p**m
        if m == 1:
            self.modulus = (0, 1)
        elif modulus is None:
            self.modulus = _smallest_primitive_polynomial(p, m)
        else:
            f = [int(c) % p for c in modulus]
            _trim(f)
            if len(f) - 1 != m or f[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not is_irreducible(f, p):
                raise ValueError("modulus is not irreducible")
            self.modulus = tuple(f)
        self._modint = sum(c * p**i for i, c in enumerate(self.modulus))
        self._top = p ** (m - 1)
        self.has_tables = self.order <= TABLE_LIMIT
        if p != 2 and m > 1:
            self._ring = _QuotientRing(self.modulus, p)
            self._chunk = max(1, int(62 / math.log2(p)))
            while p**self._chunk >= 1 << 62:
                self._chunk -= 1
            self._chunk_value = p**self._chunk
            self._chunk_place = p ** np.arange(self._chunk, dtype=np.int64)
            self._nchunks = -(-m // self._chunk)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        self.primitive = self._find_primitive()
        if self.has_tables:
            self._build_tables()

    # -- construction helpers --

    def _find_primitive(self) -> int:
        if self.order == 2:
            return 1
        n1 = self.order - 1
        primes = list(factorize(n1))
        for g in range(2, self.order):
            if all(self._pow_slow(g, n1 // r) != 1 for r in primes):
                return g
        raise RuntimeError("no primitive element found")  # unreachable for a field

    def _build_tables(self) -> None:
        from .kernels import power_coords

        n1 = self.order - 1
        g = self.primitive
        mat = np.array([self.coords(self._mul_slow(self.p**j, g)) for j in range(self.m)], dtype=np.int64)
        place = self.p ** np.arange(self.m, dtype=np.int64)
        powers = power_coords(mat, self.p, n1) @ place
        log = np.zeros(self.order, dtype=np.int64)
        log[powers] = np.arange(n1, dtype=np.int64)
        self._exp = np.concatenate([powers, powers, powers[:1]]).tolist()
        self._log = log.tolist()
        if self.p != 2:
            p = self.p
            # Zech logarithm: alpha^zech[k] = alpha^k + 1, or -1 when that sum is 0
            s = np.where(powers % p == p - 1, powers - (p - 1), powers + 1)
            self._zech = np.where(s == 0, -1, log[s]).tolist()

    # -- digit helpers --

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinate vector over GF(p), constant coordinate first."""
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return tuple(out)

    def from_coords(self, coords: Iterable[int]) -> int:
        p = self.p
        v = 0
        for i, c in enumerate(coords):
            v += (int(c) % p) * p**i
        return v

    def from_int(self, k: int) -> int:
        """The prime-subfield element ``k mod p``."""
        return k % self.p

    # -- schoolbook arithmetic --

    def _add_digits(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + sign * (b % p)) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        m = self.m
        if self.p == 2:
            r = 0
            mod = self._modint
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> m) & 1:
                    a ^= mod
            return r
        if m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._pack(self._ring.mul(self._unpack(a), self._unpack(b)))

    # odd characteristic without tables: digits travel as numpy arrays, split
    # into int64-sized chunks of ``_chunk`` base-p digits

    def _unpack(self, a: int) -> np.ndarray:
        parts = []
        big = self._chunk_value
        while a:
            a, r = divmod(a, big)
            parts.append(r)
        out = np.zeros(self._nchunks * self._chunk, dtype=np.int64)
        if parts:
            digits = (np.array(parts, dtype=np.int64)[:, None] // self._chunk_place) % self.p
            out[: digits.size] = digits.ravel()
        return out[: self.m]

    def _pack(self, digits: np.ndarray) -> int:
        padded = np.zeros(self._nchunks * self._chunk, dtype=np.int64)
        padded[: self.m] = digits
        out = 0
        for c in reversed((padded.reshape(-1, self._chunk) @ self._chunk_place).tolist()):
            out = out * self._chunk_value + c
        return out

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    # -- public arithmetic on ints --

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            log = self._log
            la = log[a]
            z = self._zech[(log[b] - la) % (self.order - 1)]
            if z < 0:
                return 0
            return self._exp[la + z]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        if self._exp is not None:
            if a == 0:
                return 0
            return self._exp[self._log[a] + (self.order - 1) // 2]
        return self._add_digits(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            log = self._log
            return self._exp[log[a] + log[b]]
        if self.m == 1:
            return a * b % self.p
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if a == 1:
            return 1
        if self.p == 2:
            return self._inv_binary(a)
        return self._inv_odd(a)

    def _inv_odd(self, a: int) -> int:
        # extended Euclid on GF(p)[x], coefficient lists constant term first
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.coords(a)))
        s0, s1 = [0], [1]
        while len(r1) > 1:
            inv = pow(r1[-1], p - 2, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = r0[:]
            for i in range(len(r) - len(r1), -1, -1):
                c = r[i + len(r1) - 1] * inv % p
                q[i] = c
                if c:
                    for j, y in enumerate(r1):
                        r[i + j] = (r[i + j] - c * y) % p
            _trim(r)
            qs = [0] * (len(q) + len(s1) - 1)
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(s1):
                        qs[i + j] += x * y
            n = max(len(s0), len(qs))
            s2 = [((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p for i in range(n)]
            r0, r1, s0, s1 = r1, r, s1, _trim(s2)
        c = pow(r1[0], p - 2, p)
        return self.from_coords([x * c % p for x in s1])

    def _inv_binary(self, a: int) -> int:
        # extended Euclid on GF(2)[x] with polynomials packed as bit masks
        r0, r1 = self._modint, a
        s0, s1 = 0, 1
        while r1 != 1:
            shift = r0.bit_length() - r1.bit_length()
            if shift < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << shift
            s0 ^= s1 << shift
            if r0.bit_length() < r1.bit_length():
                r0, r1, s0, s1 = r1, r0, s1, s0
        return s1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse in a field")
            return 1 if e == 0 else 0
        n1 = self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % n1]
        e %= n1
        if self.m == 1:
            return pow(a, e, self.p)
        return self._pow_slow(a, e)

    def log(self, a: int) -> int:
        """Discrete logarithm to the base ``primitive`` (table fields only)."""
        if a == 0:
            raise ValueError("log of zero")
        if self._log is None:
            raise ValueError("discrete log is only tabulated for small fields")
        return self._log[a]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n1 = self.order - 1
        order = n1
        for r, e in factorize(n1).items():
            for _ in range(e):
                if self.pow(a, order // r) == 1:
                    order //= r
                else:
                    break
        return order

    # -- structure --

    def elements(self) -> range:
        return range(self.order)

    def subfield_elements(self, d: int) -> list[int]:
        """Elements of the unique subfield GF(p^d); requires ``d | m``."""
        if self.m % d:
            raise ValueError(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.m})")
        size = self.p**d
        w = self.pow(self.primitive, (self.order - 1) // (size - 1))
        out = [0]
        a = 1
        for _ in range(size - 1):
            out.append(a)
            a = self.mul(a, w)
        return out

    def subfield_degree(self, a: int) -> int:
        """Degree over GF(p) of the smallest subfield containing ``a``."""
        for d in _divisors(self.m):
            if self.pow(a, self.p**d) == a:
                return d
        return self.m  # pragma: no cover - every element lies in GF(p^m)

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.order))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (gf, (self.p, self.m))

    def exp_table(self) -> np.ndarray:
        if self._exp is None:
            raise ValueError("field has no tables")
        return np.asarray(self._exp, dtype=np.int64)

    def log_table(self) -> np.ndarray:
        if self._log is None:
            raise ValueError("field has no tables")
        return np.asarray(self._log, dtype=np.int64)

    def add_table(self) -> np.ndarray:
        """Full addition table; intended for small base fields."""
        q = self.order
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                t[a, b] = self.add(a, b)
        return t


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def gf(p: int, m: int = 1) -> FiniteField:
    """Cached ``FiniteField(p, m)`` with the default modulus."""
    return FiniteField(p, m)


def gf_q(q: int, s: int = 1) -> FiniteField:
    """GF(q^s) for a prime power ``q``."""
    p, e = prime_power(q)
    return gf(p, e * s)


class FieldElement:
    """Operator-friendly wrapper around an ``int`` element of a field."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        if not 0 <= value < field.order:
            raise ValueError(f"{value} is not an element of {field!r}")
        self.field = field
        self.value = int(value)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field!r}({self.value})"


class FieldEmbedding:
    """Ring embedding GF(p^a) -> GF(p^b) for ``a | b``.

    The image of the small field's generator ``x`` is the smallest root of the
    small field's modulus inside the big field.
    """

    def __init__(self, small: FiniteField, big: FiniteField):
        if small.p != big.p or big.m % small.m:
            raise ValueError(f"{small!r} does not embed in {big!r}")
        self.small = small
        self.big = big
        if small.m == 1:
            self.theta = None
            self._table = list(range(small.order))
        else:
            theta = min(poly_roots(Poly(big, small.modulus), big))
            self.theta = theta
            powers = [1]
            for _ in range(small.m - 1):
                powers.append(big.mul(powers[-1], theta))
            # multiples[i][c] = c * theta^i, so an image is a sum of table lookups
            self._multiples = []
            for w in powers:
                row = [0, w]
                for _ in range(small.p - 2):
                    row.append(big.add(row[-1], w))
                self._multiples.append(row)
            self._table = [self._image(a) for a in range(small.order)] if small.order <= 1 << 12 else None
            self._cache: dict[int, int] = {}
        self._inverse: dict[int, int] | None = None

    def _image(self, a: int) -> int:
        big = self.big
        out = 0
        for c, row in zip(self.small.coords(a), self._multiples):
            if c:
                out = out ^ row[c] if big.p == 2 else big.add(out, row[c])
        return out

    def __call__(self, a: int) -> int:
        if self._table is not None:
            return self._table[a]
        out = self._cache.get(a)
        if out is None:
            out = self._cache[a] = self._image(a)
        return out

    def preimage(self, b: int) -> int | None:
        """Inverse map on the image; ``None`` for elements outside the subfield."""
        if self._inverse is None:
            self._inverse = {self(a): a for a in range(self.small.order)}
        return self._inverse.get(b)

    def poly(self, f: "Poly") -> "Poly":
        return Poly(self.big, [self(c) for c in f.coeffs])

    def poly_preimage(self, f: "Poly") -> "Poly | None":
        out = []
        for c in f.coeffs:
            a = self.preimage(c)
            if a is None:
                return None
            out.append(a)
        return Poly(self.small, out)


@lru_cache(maxsize=None)
def embedding(small: FiniteField, big: FiniteField) -> FieldEmbedding:
    return FieldEmbedding(small, big)


def nth_root_of_unity(field: FiniteField, n: int) -> int:
    """``primitive ** ((order-1)/n)``, an element of multiplicative order exactly ``n``."""
    if n < 1 or (field.order - 1) % n:
        raise ValueError(f"no primitive {n}th root of unity in {field!r}")
    return field.pow(field.primitive, (field.order - 1) // n)


class Poly:
    """Dense polynomial over a ``FiniteField``, constant coefficient first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Iterable[int]) -> "Poly":
        """Build from prime-field integers; negative entries are reduced mod p."""
        return cls(field, [field.from_int(k) for k in ints])

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def one(cls, field: FiniteField) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: FiniteField, k: int, c: int = 1) -> "Poly":
        return cls(field, [0] * k + [c])

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{'*' if mono else ''}{mono}" if c != 1 or not mono else mono)
        return "Poly(" + " + ".join(terms) + ")"

    def _check(self, other: "Poly") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly | int") -> "Poly":
        F = self.field
        if isinstance(other, int):
            return Poly(F, [F.mul(c, other) for c in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv = F.inv(other.coeffs[-1])
        if len(rem) - 1 < d:
            return Poly(F), Poly(F, rem)
        quo = [0] * (len(rem) - d)
        oc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c = F.mul(c, inv)
            quo[i - d] = c
            for j in range(d + 1):
                if oc[j]:
                    rem[i - d + j] = F.sub(rem[i - d + j], F.mul(c, oc[j]))
        return Poly(F, quo), Poly(F, rem[:d])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        add, mul = F.add, F.mul
        for c in reversed(self.coeffs):
            acc = add(mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def scale_variable(self, c: int) -> "Poly":
        """The polynomial ``f(c*x)``."""
        F = self.field
        out = []
        w = 1
        for a in self.coeffs:
            out.append(F.mul(a, w))
            w = F.mul(w, c)
        return Poly(F, out)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead)

    def truncate(self, k: int) -> "Poly":
        """Reduce modulo ``x**k``."""
        return Poly(self.field, self.coeffs[:k])

    def reciprocal(self) -> "Poly":
        return Poly(self.field, reversed(self.coeffs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_eea_steps(a: Poly, b: Poly) -> Iterator[tuple[Poly, Poly, Poly]]:
    """Yield ``(r_i, u_i, w_i)`` with ``r_i = u_i*a + w_i*b`` for each division step."""
    F = a.field
    r0, r1 = a, b
    u0, u1 = Poly.one(F), Poly(F)
    w0, w1 = Poly(F), Poly.one(F)
    while r1:
        quo, r2 = divmod(r0, r1)
        u2 = u0 - quo * u1
        w2 = w0 - quo * w1
        yield r2, u2, w2
        r0, r1, u0, u1, w0, w1 = r1, r2, u1, u2, w1, w2


def poly_eea(a: Poly, b: Poly, stop_degree: int) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid on ``(a, b)`` stopped at the first remainder of degree ``<= stop_degree``.

    Returns ``(r, u, w)`` with ``r == u*a + w*b``.  The zero remainder always
    satisfies the stop rule, so the loop terminates.
    """
    if b.is_zero():
        raise ValueError("second EEA argument must be nonzero")
    for r, u, w in poly_eea_steps(a, b):
        if r.degree <= stop_degree:
            return r, u, w
    raise AssertionError("unreachable: the final remainder is zero")  # pragma: no cover


def poly_roots(f: Poly, field: FiniteField | None = None) -> set[int]:
    """All roots of ``f`` in ``field`` (defaults to the coefficient field).

    Small fields are scanned exhaustively.  Larger ones take
    ``gcd(f, x^Q - x)`` and split it with a fixed-seed random splitter, so the
    result is deterministic.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    F = field or f.field
    if F != f.field:
        raise ValueError("polynomial must be defined over the search field")
    if f.degree == 0:
        return set()
    if F.order <= 1 << 12:
        return {a for a in range(F.order) if f(a) == 0}
    f = f.monic()
    roots: set[int] = set()
    x = Poly.x(F)
    while f.coeffs[0] == 0:
        roots.add(0)
        f = f // x
    if f.degree < 1:
        return roots
    # the split part of f is gcd(f, x^(p^m) - x)
    xq = x
    for _ in range(F.m):
        xq = _poly_powmod(xq, F.p, f)
    g = poly_gcd(f, xq - x)
    roots.update(_split_linear(g, random.Random(0)))
    return roots


def _poly_powmod(a: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(a.field)
    a = a % mod
    while e:
        if e & 1:
            result = result * a % mod
        a = a * a % mod
        e >>= 1
    return result


def _split_linear(g: Poly, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree ``g`` that splits into distinct linear factors.

    Equal-degree splitting: a random shift separates the roots by a quadratic
    character (odd p) or an absolute trace (p = 2).
    """
    F = g.field
    if g.degree < 1:
        return []
    if g.degree == 1:
        return [F.neg(g.coeffs[0])]
    x = Poly.x(F)
    while True:
        r = rng.randrange(1, F.order)
        if F.p == 2:
            y = (x * r) % g
            acc = y
            for _ in range(F.m - 1):
                y = y * y % g
                acc = acc + y
        else:
            acc = _poly_powmod(x + Poly(F, [r]), (F.order - 1) // 2, g) - Poly.one(F)
        h = poly_gcd(g, acc)
        if 0 < h.degree < g.degree:
            return _split_linear(h, rng) + _split_linear(g // h, rng)

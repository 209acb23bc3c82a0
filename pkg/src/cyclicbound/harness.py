"""Ground-truth oracles: brute-force distance, exhaustive decoding, table statistics."""

from __future__ import annotations

import csv
import io
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bounds import coprime_residues, rational_value
from .code import CyclicCode, enumerate_defining_sets, symmetric_reversible_degree
from .decoder import DecoderContext, decode, make_context
from .field import FiniteField, Poly
from .series import Registry, table_registry

OVER_BUDGET = "over budget"
DEFAULT_BUDGET = 1 << 24


def _rows_from_poly(g: Poly, n: int) -> list[list[int]]:
    k = n - int(g.degree)
    c = list(g.coeffs)
    return [[0] * i + c + [0] * (n - len(c) - i) for i in range(k)]


def _histogram(rows: list[list[int]], base: FiniteField, n: int) -> np.ndarray:
    if not rows:
        h = np.zeros(n + 1, dtype=np.int64)
        h[0] = 1
        return h
    if base.order == 2 and n <= 64:
        masks = [sum(1 << i for i, x in enumerate(r) if x) for r in rows]
        return kernels.weight_histogram_binary(np.array(masks, dtype=np.uint64), n)
    # GF(p)-basis of GF(q): the elements p^j, j < e
    scaled = [[base.mul(x, base.p**j) for x in r] for r in rows for j in range(base.m)]
    return kernels.weight_histogram_qary(np.array(scaled, dtype=np.int64), base.add_table(), base.p)


def weight_distribution(code: CyclicCode) -> np.ndarray:
    """Number of codewords of each Hamming weight, by full enumeration."""
    return _histogram(_rows_from_poly(code.generator, code.n), code.base, code.n)


def dual_generator(code: CyclicCode) -> Poly:
    """Generator of the dual code: the reciprocal of ``(x^n - 1)/g``, made monic."""
    return code.parity_polynomial().reciprocal().monic()


def dual_weight_distribution(code: CyclicCode) -> np.ndarray:
    return _histogram(_rows_from_poly(dual_generator(code), code.n), code.base, code.n)


def krawtchouk(w: int, i: int, n: int, q: int) -> int:
    return sum(
        (-1) ** j * (q - 1) ** (w - j) * math.comb(i, j) * math.comb(n - i, w - j) for j in range(w + 1)
    )


def macwilliams(dual_hist: Sequence[int], n: int, q: int) -> list[int]:
    """Weight distribution of a code from that of its dual (exact integers)."""
    size = sum(int(x) for x in dual_hist)
    out = []
    for w in range(n + 1):
        s = sum(int(b) * krawtchouk(w, i, n, q) for i, b in enumerate(dual_hist) if b)
        if s % size:
            raise ArithmeticError("MacWilliams transform is not integral")
        out.append(s // size)
    return out


def true_distance(code: CyclicCode, budget: int = DEFAULT_BUDGET, method: str = "direct") -> int | str:
    """Minimum nonzero Hamming weight, or ``OVER_BUDGET``.

    ``direct`` enumerates all ``q^k`` messages.  ``dual`` enumerates the
    ``q^(n-k)`` dual codewords and applies the MacWilliams identities;
    ``auto`` picks the smaller enumeration.
    """
    n, k, q = code.n, code.k, code.q
    if not 1 <= k <= n - 1:
        raise ValueError("true distance needs 1 <= k <= n-1")
    if method == "auto":
        method = "dual" if n - k < k else "direct"
    if method == "direct":
        if q**k > budget:
            return OVER_BUDGET
        hist = weight_distribution(code)
    elif method == "dual":
        if q ** (n - k) > budget:
            return OVER_BUDGET
        hist = macwilliams(dual_weight_distribution(code), n, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    return next(w for w in range(1, n + 1) if hist[w])


# --- exhaustive decoding ---


@dataclass
class DecodeReport:
    codewords: int
    patterns: int
    decodes: int
    failures: int
    seconds: float
    t_max: int
    examples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def error_patterns(n: int, q: int, max_weight: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(positions, values)`` pairs of weight ``1..max_weight``."""
    for w in range(1, max_weight + 1):
        for pos in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                yield pos, vals


def exhaustive_decode_test(
    code: CyclicCode,
    ctx: DecoderContext | None = None,
    max_weight: int | None = None,
    codeword_limit: int = 1 << 16,
    sample: int = 200,
    seed: int = 0,
    max_examples: int = 10,
) -> DecodeReport:
    """Decode every codeword plus every error of weight ``<= max_weight``.

    When ``q^k`` exceeds ``codeword_limit``, ``sample`` random codewords
    (seeded) are used instead.
    """
    ctx = ctx or make_context(code)
    t = ctx.t_max if max_weight is None else max_weight
    base = code.base
    if code.q**code.k <= codeword_limit:
        words = (code.encode(list(m)) for m in itertools.product(range(code.q), repeat=code.k))
        nwords = code.q**code.k
    else:
        rng = np.random.default_rng(seed)
        words = (code.random_codeword(rng) for _ in range(sample))
        nwords = sample
    patterns = list(error_patterns(code.n, code.q, t))
    failures = 0
    decodes = 0
    examples: list[dict] = []
    start = time.perf_counter()
    for cw in words:
        res = decode(cw, ctx)
        decodes += 1
        if not res.ok or res.codeword != cw:
            failures += 1
            if len(examples) < max_examples:
                examples.append({"codeword": cw, "positions": [], "values": [], "status": res.status})
        for pos, vals in patterns:
            r = list(cw)
            for i, e in zip(pos, vals):
                r[i] = base.add(r[i], e)
            res = decode(r, ctx)
            decodes += 1
            if not res.ok or res.codeword != cw:
                failures += 1
                if len(examples) < max_examples:
                    examples.append(
                        {"codeword": cw, "positions": list(pos), "values": list(vals), "status": res.status}
                    )
    return DecodeReport(
        codewords=nwords,
        patterns=len(patterns),
        decodes=decodes,
        failures=failures,
        seconds=time.perf_counter() - start,
        t_max=t,
        examples=examples,
    )


# --- appendix statistics ---

CSV_HEADER = ["n", "codes", "bch_lt_d", "df_gt_bch", "df_lt_d", "flags"]


@dataclass
class TableRow:
    n: int
    q: int
    codes: int
    bch_lt_d: int | None
    df_gt_bch: int
    df_lt_d: int | None
    star: bool = False
    partial: bool = False
    skipped: bool = False

    @property
    def flags(self) -> str:
        out = []
        if self.star:
            out.append("*")
        if self.skipped:
            out.append("distance-skipped")
        elif self.partial:
            out.append("distance-partial")
        return ";".join(out)

    def cells(self) -> list[str]:
        def cell(x):
            return "-" if x is None else str(x)

        return [str(self.n), str(self.codes), cell(self.bch_lt_d), str(self.df_gt_bch), cell(self.df_lt_d), self.flags]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "codes": self.codes,
            "bch_lt_d": self.bch_lt_d,
            "df_gt_bch": self.df_gt_bch,
            "df_lt_d": self.df_lt_d,
            "flags": self.flags,
        }


def code_bounds_fast(dmask: np.ndarray, registry: Registry, n: int) -> tuple[int, int]:
    """``(d_BCH, d_f)`` for a defining-set mask via one kernel call."""
    cands = registry.valid_for(n)
    pmax = max(c.period for c in cands)
    pattern = np.zeros((len(cands), pmax), dtype=np.uint8)
    for i, c in enumerate(cands):
        pattern[i, : c.period] = c.nonzero_pattern
    runs = kernels.zero_runs(dmask, pattern, np.array([c.period for c in cands]), np.array(coprime_residues(n)))
    best = runs.max(axis=(1, 2))
    vals = [rational_value(int(best[i]), c.v, c.u, n) for i, c in enumerate(cands)]
    bch = next(v for c, v in zip(cands, vals) if c.is_bch)
    return bch, max(vals)


def tabulate_length(
    n: int,
    q: int,
    registry: Registry | None = None,
    budget: int = DEFAULT_BUDGET,
    distances: bool = True,
    method: str = "auto",
) -> TableRow:
    registry = registry or table_registry(q, n)
    codes = 0
    bch_lt_d = df_gt_bch = df_lt_d = 0
    feasible = infeasible = 0
    for ds in enumerate_defining_sets(n, q):
        codes += 1
        if ds.k in (0, n):
            continue
        mask = np.zeros(n, dtype=np.uint8)
        mask[list(ds.defining_set)] = 1
        d_bch, d_f = code_bounds_fast(mask, registry, n)
        if d_f > d_bch:
            df_gt_bch += 1
        if not distances:
            continue
        d = true_distance(ds.build(), budget, method)
        if d == OVER_BUDGET:
            infeasible += 1
            continue
        feasible += 1
        if d_bch < d:
            bch_lt_d += 1
        if d_f < d:
            df_lt_d += 1
    has_d = distances and feasible > 0
    return TableRow(
        n=n,
        q=q,
        codes=codes,
        bch_lt_d=bch_lt_d if has_d else None,
        df_gt_bch=df_gt_bch,
        df_lt_d=df_lt_d if has_d else None,
        star=symmetric_reversible_degree(n, q) is not None,
        partial=distances and infeasible > 0 and feasible > 0,
        skipped=not has_d,
    )


def tabulate(
    n_list: Sequence[int],
    q: int,
    registry: Registry | None = None,
    budget: int = DEFAULT_BUDGET,
    distances: bool = True,
    method: str = "auto",
) -> list[TableRow]:
    """One ``TableRow`` per length, in the given order."""
    for n in n_list:
        if math.gcd(n, q) != 1:
            raise ValueError(f"length {n} shares factor with characteristic of q = {q}")
    return [tabulate_length(n, q, registry, budget, distances, method) for n in n_list]


def rows_to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()

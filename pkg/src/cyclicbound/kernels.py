"""Hot loops: zero-run search, HT grid search and codeword weight histograms.

Every kernel has a numba implementation and a pure-numpy implementation with
identical outputs.  The public names dispatch on ``_accel.HAVE_NUMBA``; the
``*_numpy`` variants are always importable for cross-checks and benchmarks.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

# ---------------------------------------------------------------------------
# zero-run search
#
# For pattern c (period p), spacing z and start b the run length is the number
# of consecutive j >= 0 with pattern[c, j mod p] == 0 or D[(b + j z) mod n].
# Runs are capped at n * p.


@njit(cache=True)
def _runs_numba(dmask, pattern, periods, spacings):
    n = dmask.shape[0]
    nc = periods.shape[0]
    nz = spacings.shape[0]
    out = np.zeros((nc, nz, n), dtype=np.int64)
    for ci in range(nc):
        p = periods[ci]
        cap = n * p
        for zi in range(nz):
            z = spacings[zi]
            for b in range(n):
                run = 0
                pos = b
                jp = 0
                while run < cap:
                    if pattern[ci, jp] != 0 and dmask[pos] == 0:
                        break
                    run += 1
                    pos += z
                    if pos >= n:
                        pos -= n
                    jp += 1
                    if jp == p:
                        jp = 0
                out[ci, zi, b] = run
    return out


def zero_runs_numpy(dmask, pattern, periods, spacings):
    dmask = np.asarray(dmask, dtype=bool)
    n = dmask.shape[0]
    periods = np.asarray(periods, dtype=np.int64)
    spacings = np.asarray(spacings, dtype=np.int64)
    out = np.zeros((len(periods), len(spacings), n), dtype=np.int64)
    b = np.arange(n, dtype=np.int64)[:, None]
    for ci, p in enumerate(periods):
        cap = n * int(p)
        j = np.arange(cap, dtype=np.int64)[None, :]
        free = ~np.asarray(pattern[ci, :p], dtype=bool)[j % p]
        for zi, z in enumerate(spacings):
            ok = free | dmask[(b + j * z) % n]
            out[ci, zi] = np.where(ok.all(axis=1), cap, np.argmin(ok, axis=1))
    return out


def zero_runs(dmask, pattern, periods, spacings):
    """Run lengths, shape ``(candidates, spacings, n)``."""
    if _accel.HAVE_NUMBA:
        return _runs_numba(
            np.ascontiguousarray(dmask, dtype=np.uint8),
            np.ascontiguousarray(pattern, dtype=np.uint8),
            np.ascontiguousarray(periods, dtype=np.int64),
            np.ascontiguousarray(spacings, dtype=np.int64),
        )
    return zero_runs_numpy(dmask, pattern, periods, spacings)


# ---------------------------------------------------------------------------
# Hartmann-Tzeng grid search
#
# Returns (value, d0, b, m1, m2, nu).  Preference: larger value, then larger
# d0, then the smallest (m1, b, m2) in lexicographic order.  A value of 1
# means no grid exists.


@njit(cache=True)
def _ht_numba(dmask, spacings):
    n = dmask.shape[0]
    nz = spacings.shape[0]
    best = np.zeros(6, dtype=np.int64)
    best[0] = 1
    best[1] = 1
    rl = np.zeros(n, dtype=np.int64)
    for a in range(nz):
        m1 = spacings[a]
        for x in range(n):
            run = 0
            pos = x
            while run < n and dmask[pos] != 0:
                run += 1
                pos += m1
                if pos >= n:
                    pos -= n
            rl[x] = run
        for b in range(n):
            for d0 in range(rl[b] + 1, 1, -1):
                for c in range(nz):
                    m2 = spacings[c]
                    nu = 0
                    pos = b + m2
                    if pos >= n:
                        pos -= n
                    while nu < n - 1 and rl[pos] >= d0 - 1:
                        nu += 1
                        pos += m2
                        if pos >= n:
                            pos -= n
                    val = d0 + nu
                    if val > n:
                        val = n
                    if val > best[0] or (val == best[0] and d0 > best[1]):
                        best[0] = val
                        best[1] = d0
                        best[2] = b
                        best[3] = m1
                        best[4] = m2 if nu > 0 else 0
                        best[5] = nu
    return best


def _runs_single(dmask, m1):
    n = dmask.shape[0]
    j = np.arange(n + 1, dtype=np.int64)[None, :]
    x = np.arange(n, dtype=np.int64)[:, None]
    ok = np.concatenate([dmask[(x + j[:, :-1] * m1) % n], np.zeros((n, 1), dtype=bool)], axis=1)
    return np.argmin(ok, axis=1)


def ht_search_numpy(dmask, spacings):
    dmask = np.asarray(dmask, dtype=bool)
    spacings = np.asarray(spacings, dtype=np.int64)
    n = dmask.shape[0]
    best = (1, 1, 0, 0, 0, 0)
    if n == 1:
        return np.array(best, dtype=np.int64)
    i = np.arange(1, n, dtype=np.int64)
    b = np.arange(n, dtype=np.int64)
    # pos[b, m2, i] = b + i*m2
    pos = (b[:, None, None] + i[None, None, :] * spacings[None, :, None]) % n
    for m1 in spacings:
        rl = _runs_single(dmask, int(m1))
        for d0 in range(int(rl.max()) + 1, 1, -1):
            good = rl >= d0 - 1
            g = good[pos]
            nu = np.where(g.all(axis=2), n - 1, np.argmin(g, axis=2))
            val = np.minimum(d0 + nu, n)
            val[~good] = -1
            top = int(val.max())
            if top < 0:
                continue
            if (top, d0) > (best[0], best[1]):
                bi, ci = np.unravel_index(int(np.argmax(val == top)), val.shape)
                nuv = int(nu[bi, ci])
                best = (top, d0, int(bi), int(m1), int(spacings[ci]) if nuv else 0, nuv)
    return np.array(best, dtype=np.int64)


def ht_search(dmask, spacings):
    if _accel.HAVE_NUMBA:
        return _ht_numba(
            np.ascontiguousarray(dmask, dtype=np.uint8),
            np.ascontiguousarray(spacings, dtype=np.int64),
        )
    return ht_search_numpy(dmask, spacings)


# ---------------------------------------------------------------------------
# weight histograms
#
# Binary codes: rows are n-bit masks (n <= 64) and all 2^k combinations are
# visited in Gray-code order.  q-ary codes: rows are the k*e generator rows
# scaled by the GF(p) basis of GF(q); all p^(k e) digit vectors are visited
# with an odometer that updates the codeword one row-addition at a time.

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def _hist_binary_numba(rows, n):
    k = rows.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    hist[0] = 1
    word = np.uint64(0)
    total = np.int64(1) << np.int64(k)
    for i in range(1, total):
        t = 0
        while not (i >> t) & 1:
            t += 1
        word ^= rows[t]
        hist[_popcount(word)] += 1
    return hist


def _popcount_numpy(words):
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(words).astype(np.int64)
    b = words.view(np.uint8).reshape(-1, 8)
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    return table[b].sum(axis=1)


def weight_histogram_binary_numpy(rows, n, chunk_bits=16):
    rows = np.asarray(rows, dtype=np.uint64)
    k = len(rows)
    low = min(k, chunk_bits)
    base = np.zeros(1, dtype=np.uint64)
    for r in rows[:low]:
        base = np.concatenate([base, base ^ r])
    hist = np.zeros(n + 1, dtype=np.int64)
    high = rows[low:]
    offset = np.uint64(0)
    for i in range(1 << len(high)):
        if i:
            t = (i & -i).bit_length() - 1
            offset ^= high[t]
        hist += np.bincount(_popcount_numpy(base ^ offset), minlength=n + 1)[: n + 1]
    return hist


def weight_histogram_binary(rows, n):
    """Histogram of Hamming weights over the binary span of ``rows`` (bitmasks)."""
    if n > 64:
        raise ValueError("binary kernel packs words into 64 bits")
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if _accel.HAVE_NUMBA:
        return _hist_binary_numba(rows, n)
    return weight_histogram_binary_numpy(rows, n)


@njit(cache=True)
def _hist_qary_numba(rows, add, p):
    r, n = rows.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    hist[0] = 1
    word = np.zeros(n, dtype=np.int64)
    digits = np.zeros(r, dtype=np.int64)
    w = 0
    total = 1
    for _ in range(r):
        total *= p
    for _ in range(1, total):
        j = 0
        while True:
            for pos in range(n):
                y = rows[j, pos]
                if y != 0:
                    old = word[pos]
                    new = add[old, y]
                    word[pos] = new
                    w += (new != 0) - (old != 0)
            digits[j] += 1
            if digits[j] == p:
                digits[j] = 0
                j += 1
            else:
                break
        hist[w] += 1
    return hist


def weight_histogram_qary_numpy(rows, add, p, chunk_digits=None):
    rows = np.asarray(rows, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    r, n = rows.shape
    if chunk_digits is None:
        chunk_digits = max(1, int(np.floor(np.log(1 << 16) / np.log(p))))
    low = min(r, chunk_digits)
    base = np.zeros((1, n), dtype=np.int64)
    for j in range(low):
        layers = [base]
        cur = base
        for _ in range(p - 1):
            cur = add[cur, rows[j][None, :]]
            layers.append(cur)
        base = np.concatenate(layers)
    hist = np.zeros(n + 1, dtype=np.int64)
    high = rows[low:]
    offset = np.zeros(n, dtype=np.int64)
    digits = [0] * len(high)
    while True:
        words = add[base, offset[None, :]]
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)[: n + 1]
        j = 0
        while j < len(high):
            offset = add[offset, high[j]]
            digits[j] += 1
            if digits[j] == p:
                digits[j] = 0
                j += 1
            else:
                break
        if j == len(high):
            return hist


def weight_histogram_qary(rows, add, p):
    """Weight histogram of the GF(p)-span of ``rows`` with symbol addition table ``add``."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    add = np.ascontiguousarray(add, dtype=np.int64)
    if _accel.HAVE_NUMBA:
        return _hist_qary_numba(rows, add, p)
    return weight_histogram_qary_numpy(rows, add, p)


# ---------------------------------------------------------------------------
# field tables
#
# Row i of the result is coords(g^i), computed from the multiplication matrix
# ``mat`` of g: coords(a g) = coords(a) @ mat (mod p).


@njit(cache=True)
def _powers_numba(mat, p, count):
    m = mat.shape[0]
    out = np.zeros((count, m), dtype=np.int64)
    if count == 0:
        return out
    out[0, 0] = 1
    for i in range(1, count):
        for k in range(m):
            acc = 0
            for j in range(m):
                acc += out[i - 1, j] * mat[j, k]
            out[i, k] = acc % p
    return out


def power_coords_numpy(mat, p, count):
    mat = np.asarray(mat, dtype=np.int64)
    m = mat.shape[0]
    out = np.zeros((count, m), dtype=np.int64)
    if count == 0:
        return out
    out[0, 0] = 1
    filled, step = 1, mat % p
    while filled < count:
        take = min(filled, count - filled)
        out[filled : filled + take] = (out[:take] @ step) % p
        filled += take
        step = (step @ step) % p
    return out


def power_coords(mat, p, count):
    """Coordinates of ``g^0 .. g^(count-1)``, shape ``(count, m)``."""
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if _accel.HAVE_NUMBA:
        return _powers_numba(mat, int(p), int(count))
    return power_coords_numpy(mat, p, count)

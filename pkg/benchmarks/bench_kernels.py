#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy counterparts.

Both variants run on identical inputs and their outputs are compared before
any timing is reported.

Usage:
    python benchmarks/bench_kernels.py [--repeat R] [--seed S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cyclicbound import kernels
from cyclicbound._accel import HAVE_NUMBA


def _best(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _cases(rng):
    n = 63
    dmask = (rng.random(n) < 0.4).astype(np.uint8)
    pattern = np.zeros((3, 4), dtype=np.uint8)
    pattern[0, 0] = 1
    pattern[1, :3] = (1, 1, 0)
    pattern[2, :4] = (1, 0, 1, 1)
    periods = np.array([1, 3, 4], dtype=np.int64)
    spacings = np.array([z for z in range(1, n) if np.gcd(z, n) == 1], dtype=np.int64)
    yield "zero_runs n=63", kernels._runs_numba, kernels.zero_runs_numpy, (dmask, pattern, periods, spacings)

    yield "ht_search n=63", kernels._ht_numba, kernels.ht_search_numpy, (dmask, spacings)

    rows = rng.integers(0, 1 << 40, size=20, dtype=np.uint64)
    yield "weights binary k=20 n=40", kernels._hist_binary_numba, kernels.weight_histogram_binary_numpy, (rows, 40)

    add = (np.arange(3)[:, None] + np.arange(3)[None, :]) % 3
    qrows = rng.integers(0, 3, size=(11, 30)).astype(np.int64)
    yield "weights ternary k=11 n=30", kernels._hist_qary_numba, kernels.weight_histogram_qary_numpy, (qrows, add, 3)

    mat = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]], dtype=np.int64)  # x in GF(2^4)
    big = np.eye(20, k=1, dtype=np.int64)
    big[19, [0, 3]] = 1  # x in GF(2^20) mod x^20 + x^3 + 1
    yield "field powers GF(2^4)", kernels._powers_numba, kernels.power_coords_numpy, (mat, 2, 15)
    yield "field powers GF(2^20)", kernels._powers_numba, kernels.power_coords_numpy, (big, 2, (1 << 20) - 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    if not HAVE_NUMBA:
        print("numba unavailable (or CYCLICBOUND_NO_NUMBA set); timing numpy only")
    print(f"{'kernel':28s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, fast, slow, inputs in _cases(rng):
        t_np, ref = _best(slow, inputs, args.repeat)
        if HAVE_NUMBA:
            fast(*inputs)  # compile outside the timed region
            t_nb, out = _best(fast, inputs, args.repeat)
            if not np.array_equal(np.asarray(out), np.asarray(ref)):
                raise SystemExit(f"{name}: numba and numpy outputs differ")
            print(f"{name:28s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x")
        else:
            print(f"{name:28s} {t_np:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

Both backends implement identical algorithms (same pivoting, same subset
order) and must return identical results; this script measures the gap on
the three hot paths: the MDS subset scan, dense rank, and encode-style
matrix multiplication.

Run:  python3 benchmarks/bench_backends.py [--full]
"""

import argparse
import time

import numpy as np

from pmds import kernels
from pmds.fields import make_field
from pmds.pascal import supplemented_pascal


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_mds_scan(full: bool):
    field = make_field(2, 5) if full else make_field(2, 4)
    k = 5 if full else 6
    m = supplemented_pascal(field, k).data
    t = field.tables()
    n = m.shape[1]

    def run(scan):
        combo = np.arange(k, dtype=np.int64)
        return scan(m, combo, 10**9, *t)

    numba_s, r1 = timed(run, kernels._mds_scan)
    numpy_s, r2 = timed(run, kernels._mds_scan_numpy)
    assert tuple(map(int, r1)) == tuple(map(int, r2))
    subsets = int(r1[1])
    return f"mds_scan GF({field.q}) k={k} ({subsets} subsets)", numba_s, numpy_s


def bench_rank(full: bool):
    size = 400 if full else 200
    field = make_field(2, 8)
    t = field.tables()
    rng = np.random.RandomState(0)
    m = rng.randint(0, 256, size=(size, size)).astype(np.int64)

    numba_s, r1 = timed(lambda: kernels._rank_in_place(m.copy(), *t))
    numpy_s, r2 = timed(lambda: kernels._rank_numpy(m.copy(), *t))
    assert r1 == r2
    return f"rank {size}x{size} GF(256)", numba_s, numpy_s


def bench_encode(full: bool):
    words = 50_000 if full else 10_000
    field = make_field(2, 8)
    t = field.tables()
    k = 8
    gen = supplemented_pascal(field, k).data
    rng = np.random.RandomState(1)
    msg = rng.randint(0, 256, size=(words, k)).astype(np.int64)

    numba_s, r1 = timed(kernels._matmul, msg, gen, *t)
    numpy_s, r2 = timed(kernels._matmul_numpy, msg, gen, *t)
    assert np.array_equal(r1, r2)
    return f"encode {words} words K={k} -> {gen.shape[1]} shares GF(256)", numba_s, numpy_s


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="larger workloads")
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare against")

    print(f"{'workload':-<58} {'numba':>9} {'numpy':>9} {'speedup':>8}")
    for bench in (bench_mds_scan, bench_rank, bench_encode):
        label, numba_s, numpy_s = bench(args.full)
        print(f"{label:-<58} {numba_s * 1e3:8.1f}ms {numpy_s * 1e3:8.1f}ms {numpy_s / numba_s:7.1f}x")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled distance kernels against the pure-python
fallback on representative workloads, asserting agreement first.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--quick]

The weighted-L1 kernel dominates the cyclic/bin distance matrices
(dense signature tables, one row per vertex); the sparse-count kernel
carries the high-resolution histogram distance.  Sizes below mirror the
default experiment presets.
"""

import argparse
import time

import numpy as np

import dpmatch._kernels_py as pure

try:
    import dpmatch._kernels as compiled
except ImportError:  # pragma: no cover - source-only checkout
    compiled = None


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_weighted_l1(n: int, k: int, repeats: int, rng) -> None:
    # integer-valued step tables, like real signatures
    U = rng.integers(0, 12, size=(n, k)).astype(np.float64)
    V = rng.integers(0, 12, size=(n, k)).astype(np.float64)
    w = rng.uniform(1e-6, 1.0 / k, size=k)

    ref = pure.pairwise_weighted_l1(U, V, w)
    rows = [("pure-python", pure.pairwise_weighted_l1)]
    if compiled is not None:
        got = compiled.pairwise_weighted_l1(U, V, w)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-9), "backend mismatch"
        rows.append(("compiled", compiled.pairwise_weighted_l1))

    print(f"\npairwise_weighted_l1  n={n} intervals={k}")
    base = None
    for name, fn in rows:
        t = _time(fn, U, V, w, repeats=repeats)
        base = base or t
        print(f"  {name:12s} {t * 1e3:9.2f} ms   x{base / t:5.2f}")


def bench_sparse_count(n: int, per_row: int, nbins: int, repeats: int, rng) -> None:
    def family():
        bins, counts, ptr = [], [], [0]
        for _ in range(n):
            m = int(rng.integers(1, per_row + 1))
            b = np.unique(rng.integers(0, nbins, size=m))
            bins.append(b)
            counts.append(rng.integers(1, 4, size=b.size))
            ptr.append(ptr[-1] + b.size)
        return (np.concatenate(bins).astype(np.int64),
                np.concatenate(counts).astype(np.float64),
                np.asarray(ptr, dtype=np.int64))

    gb, gc, gp = family()
    hb, hc, hp = family()

    ref = pure.sparse_count_l1(gb, gc, gp, hb, hc, hp)
    rows = [("pure-python", pure.sparse_count_l1)]
    if compiled is not None:
        got = compiled.sparse_count_l1(gb, gc, gp, hb, hc, hp)
        assert np.array_equal(got, ref), "backend mismatch"
        rows.append(("compiled", compiled.sparse_count_l1))

    print(f"\nsparse_count_l1  n={n} entries/row<={per_row} bins={nbins}")
    base = None
    for name, fn in rows:
        t = _time(fn, gb, gc, gp, hb, hc, hp, repeats=repeats)
        base = base or t
        print(f"  {name:12s} {t * 1e3:9.2f} ms   x{base / t:5.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true",
                    help="smaller sizes, fewer repeats")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    if compiled is None:
        print("compiled extension not importable; timing the fallback only")

    if args.quick:
        bench_weighted_l1(200, 4 * 200 + 1, repeats=3, rng=rng)
        bench_sparse_count(200, 60, 1 << 20, repeats=3, rng=rng)
    else:
        bench_weighted_l1(500, 4 * 500 + 1, repeats=5, rng=rng)
        bench_weighted_l1(1000, 4 * 1000 + 1, repeats=3, rng=rng)
        bench_sparse_count(500, 120, 1 << 22, repeats=5, rng=rng)
        bench_sparse_count(1000, 250, 1 << 22, repeats=3, rng=rng)

    print("\nagreement checks passed" if compiled is not None else "")


if __name__ == "__main__":
    main()

"""Benchmark the enumeration kernels: numba fast path vs numpy fallback.

The singular-locus count over F_p^(n+1) and the batch profile classifier are
the two hot loops of the package; everything else is exact big-integer work.
Run:

    python benchmarks/bench_density.py

The backend is forced per measurement by reloading binrings._kernels under
BINRINGS_BACKEND, so one process benchmarks both paths.
"""

import importlib
import os
import sys
import time

import numpy as np


def load_backend(name):
    os.environ["BINRINGS_BACKEND"] = name
    import binrings._kernels as K

    importlib.reload(K)
    assert K.BACKEND == name, f"backend {name} unavailable"
    return K


def bench_singular_counts(K, cases):
    out = []
    for n, p in cases:
        t0 = time.perf_counter()
        v, w = K.singular_counts(n, p)
        out.append((n, p, v, w, time.perf_counter() - t0))
    return out


def bench_profile_codes(K, n, p, batch, repeats=3):
    rng = np.random.default_rng(0)
    pts = rng.integers(0, p, size=(batch, n + 1), dtype=np.int64)
    K.profile_codes(pts[:16], n, p)  # warm the jit
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        codes, roots = K.profile_codes(pts, n, p)
        best = min(best, time.perf_counter() - t0)
    return codes, roots, best


def main():
    cases = [(3, 11), (3, 17), (4, 7), (2, 97)]
    batch = 200_000
    results = {}
    for name in ("numba", "numpy"):
        try:
            K = load_backend(name)
        except Exception as exc:
            print(f"{name}: unavailable ({exc})")
            continue
        print(f"== backend: {name}")
        counts = bench_singular_counts(K, cases)
        for n, p, v, w, dt in counts:
            print(f"  singular_counts(n={n}, p={p}): V={v} W={w}  {dt:8.3f}s")
        codes, roots, dt = bench_profile_codes(K, 3, 13, batch)
        print(f"  profile_codes(n=3, p=13, {batch} pts): {dt:8.3f}s")
        results[name] = (counts, codes.tobytes(), roots.tobytes())
    if len(results) == 2:
        a, b = results["numba"], results["numpy"]
        same_counts = [(n, p, v, w) for n, p, v, w, _ in a[0]] == [
            (n, p, v, w) for n, p, v, w, _ in b[0]
        ]
        same_codes = a[1] == b[1] and a[2] == b[2]
        print(f"backend agreement: counts={same_counts} batch={same_codes}")
        if not (same_counts and same_codes):
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

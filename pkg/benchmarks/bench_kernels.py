#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

The two hot loops are mod-p row reduction (series and fat-ideal kernels) and
truncated bivariate multiplication (local expansions of invariant powers).
Shapes below mirror the real workloads: the characteristic-7 rank
computations near degree 50 and the truncated products driving the
negative-curve search.
"""

import time

import numpy as np

from kleinwiman.kernels import _ref

try:
    from kleinwiman.kernels import _speed
except ImportError:
    _speed = None


def bench(label, fn, repeats=3):
    best = min(_once(fn) for _ in range(repeats))
    print(f"  {label:<28} {best * 1000:9.1f} ms")
    return best


def _once(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def rref_case(backend, rows, cols, p, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, (rows, cols)).astype(np.int64)

    def run():
        backend.rref_mod(a.copy(), p)
    return run


def trunc_case(backend, m, p, seed=0):
    rng = np.random.default_rng(seed)
    a = np.zeros((m, m), dtype=np.int64)
    b = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        a[i, : m - i] = rng.integers(0, p, m - i)
        b[i, : m - i] = rng.integers(0, p, m - i)

    def run():
        backend.trunc_mul_mod(a, b, p)
    return run


def main():
    cases = [
        ("rref 200x400 mod 4733", lambda b: rref_case(b, 200, 400, 4733)),
        ("rref 1764x1326 mod 7", lambda b: rref_case(b, 1764, 1326, 7)),
        ("trunc mul m=27 mod 4733", lambda b: trunc_case(b, 27, 4733)),
        ("trunc mul m=50 mod 4733", lambda b: trunc_case(b, 50, 4733)),
    ]
    backends = [("numpy fallback", _ref)]
    if _speed is not None:
        backends.insert(0, ("compiled", _speed))
    else:
        print("compiled kernels not built; benchmarking the fallback only")
    results = {}
    for bname, backend in backends:
        print(f"{bname}:")
        for label, make in cases:
            results[(bname, label)] = bench(label, make(backend))
    if _speed is not None:
        print("speedup (fallback / compiled):")
        for label, _ in cases:
            ratio = results[("numpy fallback", label)] / results[("compiled", label)]
            print(f"  {label:<28} {ratio:8.1f}x")


if __name__ == "__main__":
    main()

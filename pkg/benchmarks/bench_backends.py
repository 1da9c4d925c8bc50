#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy twins.

Times the two hot paths on representative workloads:

* the fixed-step RK4 master-equation loop (several matrix sizes)
* the scaled-Taylor matrix exponential

and reports wall time per backend, speedup, and the max deviation between
backend outputs (expected at roundoff level).  The numba timings exclude the
one-off JIT compilation, which is reported separately.

Usage: python benchmarks/bench_backends.py [--steps N]
"""

import argparse
import time

import numpy as np

from tfdsim import _kernels_numpy

try:
    from tfdsim import _kernels_numba
except ImportError:
    _kernels_numba = None


def _model(n, rng):
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = np.ascontiguousarray(h + h.conj().T)
    j = np.ascontiguousarray(rng.normal(size=(n, n)) + 0j)
    jd = np.ascontiguousarray(j.conj().T)
    rho = np.ascontiguousarray(np.eye(n, dtype=complex) / n)
    return h, j, jd, np.ascontiguousarray(jd @ j), rho


def bench_rk4(kernels, n, steps, rng):
    h, j, jd, jdj, rho = _model(n, rng)
    t0 = time.perf_counter()
    out, ok = kernels.lindblad_rk4(h, j, jd, jdj, 0.1, rho, steps, 1e-4, 0.0)
    assert ok == 1
    return time.perf_counter() - t0, out


def bench_expm(kernels, n, reps, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = np.ascontiguousarray(a * (3.0 / np.abs(a).sum(axis=1).max()))
    t0 = time.perf_counter()
    for _ in range(reps):
        out, n_terms = kernels.expm_taylor(a, 3, 128, 1e-15)
    assert n_terms > 0
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000, help="RK4 steps per size")
    args = ap.parse_args()

    if _kernels_numba is None:
        print("numba unavailable; nothing to compare")
        return

    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    bench_rk4(_kernels_numba, 8, 2, rng)
    bench_expm(_kernels_numba, 8, 1, rng)
    print(f"numba JIT compilation: {time.perf_counter() - t0:.2f} s (one-off)\n")

    print(f"{'workload':<28} {'numpy':>9} {'numba':>9} {'speedup':>8} {'max dev':>10}")
    for n in (9, 16, 64, 100):
        rng_a = np.random.default_rng(1)
        rng_b = np.random.default_rng(1)
        t_np, out_np = bench_rk4(_kernels_numpy, n, args.steps, rng_a)
        t_nb, out_nb = bench_rk4(_kernels_numba, n, args.steps, rng_b)
        dev = float(np.abs(out_np - out_nb).max())
        print(f"rk4 {n:>3}x{n:<3} {args.steps} steps{'':<5} {t_np:>8.3f}s {t_nb:>8.3f}s "
              f"{t_np / t_nb:>7.2f}x {dev:>10.2e}")
    for n, reps in ((64, 50), (256, 10)):
        rng_a = np.random.default_rng(2)
        rng_b = np.random.default_rng(2)
        t_np, out_np = bench_expm(_kernels_numpy, n, reps, rng_a)
        t_nb, out_nb = bench_expm(_kernels_numba, n, reps, rng_b)
        dev = float(np.abs(out_np - out_nb).max())
        print(f"expm {n:>3}x{n:<3} x{reps:<3}{'':<9} {t_np:>8.3f}s {t_nb:>8.3f}s "
              f"{t_np / t_nb:>7.2f}x {dev:>10.2e}")


if __name__ == "__main__":
    main()

"""Benchmark the compiled kernels against their pure-numpy fallbacks.

Run with::

    python benchmarks/compare_backends.py

Each kernel is timed in both variants on identical inputs and the outputs
are cross-checked. The compiled variants are warmed up once so JIT
compilation time is not counted.
"""

from __future__ import annotations

import math
import time

import numpy as np

from cohrand import _kernels, random_density
from cohrand.roof import _support_eigendecomposition


def timeit(fn, repeats=5):
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_roof_descent():
    lam, vec = _support_eigendecomposition(random_density(4, 4, seed=0))
    bt = np.ascontiguousarray((vec * np.sqrt(lam)).T)
    rng = np.random.default_rng(1)
    w0, _ = np.linalg.qr(rng.standard_normal((16, 4)) + 1j * rng.standard_normal((16, 4)))
    w0 = np.ascontiguousarray(w0)
    args = (bt, w0, 2000, 1e-8 * math.log(2.0), 1e-6)
    _kernels.roof_descent(*args)  # warm-up / JIT
    t_fast, (f_fast, _, _) = timeit(lambda: _kernels.roof_descent(*args), repeats=3)
    t_np, (f_np, _, _) = timeit(lambda: _kernels._roof_descent_numpy(*args), repeats=3)
    return "roof_descent (d=4, m=16)", t_fast, t_np, abs(f_fast - f_np)


def bench_qubit_grid():
    lam, vec = _support_eigendecomposition(random_density(2, 2, seed=2))
    bt = (vec * np.sqrt(lam)).T
    args = (complex(bt[0, 0]), complex(bt[0, 1]), complex(bt[1, 0]), complex(bt[1, 1]), 96)
    _kernels.qubit_grid_min(*args)  # warm-up / JIT
    t_fast, v_fast = timeit(lambda: _kernels._qubit_grid_min_numba(*args), repeats=3)
    t_np, v_np = timeit(lambda: _kernels._qubit_grid_min_numpy(*args), repeats=3)
    return "qubit_grid_min (grid_n=96)", t_fast, t_np, abs(v_fast - v_np)


def bench_toeplitz():
    rng = np.random.default_rng(3)
    in_len, out_len = 200_000, 140_000
    diag = rng.integers(0, 2, size=out_len + in_len - 1, dtype=np.uint8)
    x = rng.integers(0, 2, size=in_len, dtype=np.uint8)

    def packed():
        e_words = _kernels._pack_bits_u64(diag[::-1].copy(), pad_words=2)
        x_words = _kernels._pack_bits_u64(x, pad_words=1)
        return _kernels._toeplitz_gf2_packed(e_words, x_words, out_len, (in_len + 63) // 64)

    packed()  # warm-up / JIT
    t_fast, y_fast = timeit(packed, repeats=3)
    t_fft, y_fft = timeit(lambda: _kernels._toeplitz_gf2_fft(diag, x, out_len), repeats=3)
    return "toeplitz_gf2 (200k -> 140k)", t_fast, t_fft, float(np.sum(y_fast != y_fft))


def main():
    if not _kernels.USE_NUMBA:
        print("note: numba unavailable or disabled; 'compiled' numbers are the fallback too\n")
    rows = [bench_roof_descent(), bench_qubit_grid(), bench_toeplitz()]
    header = f"{'kernel':<30} {'compiled':>10} {'fallback':>10} {'speedup':>8} {'max diff':>10}"
    print(header)
    print("-" * len(header))
    for name, t_fast, t_slow, diff in rows:
        print(f"{name:<30} {t_fast * 1e3:>8.2f}ms {t_slow * 1e3:>8.2f}ms {t_slow / t_fast:>7.1f}x {diff:>10.2e}")


if __name__ == "__main__":
    main()

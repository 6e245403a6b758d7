"""Compare the compiled sweep kernel against the pure-numpy fallback.

The workload mirrors a production sweep: a 2-D grid of small complex
dynamical matrices solved against a unit drive column. Run with

    python benchmarks/benchmark_kernels.py [--batch 100000] [--dim 3]
"""

import argparse
import time

import numpy as np

from transim import _kernels_py

try:
    from transim import _kernels
except ImportError:
    _kernels = None


def make_batch(rng, batch, dim):
    mats = rng.standard_normal((batch, dim, dim)) + 1j * rng.standard_normal(
        (batch, dim, dim)
    )
    # diagonally dominate so every system is comfortably non-singular
    idx = np.arange(dim)
    mats[:, idx, idx] += 4.0 * dim
    return mats


def bench(fn, mats, col, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(mats, col)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=100_000)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    mats = make_batch(rng, args.batch, args.dim)

    t_py, out_py = bench(_kernels_py.solve_unit_column, mats, 0, args.repeats)
    print(f"numpy fallback : {t_py * 1e3:8.2f} ms  ({args.batch} x {args.dim}x{args.dim})")

    if _kernels is None:
        print("compiled kernel: not built (pip install -e . rebuilds it)")
        return

    t_cy, out_cy = bench(_kernels.solve_unit_column, mats, 0, args.repeats)
    err = np.max(np.abs(out_cy - out_py))
    print(f"compiled kernel: {t_cy * 1e3:8.2f} ms  (speedup {t_py / t_cy:.2f}x, "
          f"max |diff| {err:.2e})")


if __name__ == "__main__":
    main()

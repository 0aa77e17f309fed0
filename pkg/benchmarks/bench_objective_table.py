#!/usr/bin/env python3
"""Times the numba and numpy implementations of the objective-table kernel.

Usage:
    python benchmarks/bench_objective_table.py [--repeats 30]

The (n, d) grid covers the shapes the Monte Carlo studies hit: long-thin
(rate study), short-wide (selector studies), and the method-2 subsample
shape that dominates the selection comparison.
"""

import argparse
import time

import numpy as np

from cpkmeans._kernels import HAVE_NUMBA, objective_table_numba, objective_table_numpy

SHAPES = [(500, 20), (4000, 20), (100, 200), (80, 200)]


def best_of(fn, arg, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=30)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"{'shape':>12} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n, d in SHAPES:
        y = rng.normal(size=(n, d))
        t_np = best_of(objective_table_numpy, y, args.repeats)
        if HAVE_NUMBA:
            objective_table_numba(y)  # compile outside the timed region
            t_nb = best_of(objective_table_numba, y, args.repeats)
            same = np.allclose(objective_table_numba(y), objective_table_numpy(y), rtol=1e-12)
            print(
                f"{n:>6}x{d:<5} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms "
                f"{t_np / t_nb:>8.1f}x{'' if same else '  MISMATCH'}"
            )
        else:
            print(f"{n:>6}x{d:<5} {t_np * 1e3:>10.3f}ms {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()

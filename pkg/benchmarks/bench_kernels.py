#!/usr/bin/env python3
"""Time the jitted kernels against the pure-numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--ads 16] [--horizon 100] [--delta 0.95]

The first jitted call compiles (cached on disk afterwards); compilation is
excluded by warming each kernel once before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from adpulse.kernels import _numba, _numpy


def clock(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ads", type=int, default=16)
    parser.add_argument("--horizon", type=float, default=100.0)
    parser.add_argument("--delta", type=float, default=0.95)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    times = np.linspace(0.0, args.horizon, args.ads)
    loops = 2000

    benches = {
        "pair_loss x%d" % loops: lambda mod: lambda: [
            mod.pair_loss(times, args.delta, 0.0) for _ in range(loops)
        ],
        "pair_gradient x%d" % loops: lambda mod: lambda: [
            mod.pair_gradient(times, args.delta) for _ in range(loops)
        ],
        "pgd_minimize": lambda mod: lambda: mod.pgd_minimize(
            times, args.horizon, args.delta, 1e-10, 200_000
        ),
    }

    print(f"ads={args.ads} horizon={args.horizon} delta={args.delta}")
    print(f"{'kernel':24s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for name, make in benches.items():
        np_fn = make(_numpy)
        nb_fn = make(_numba)
        nb_fn()  # warm the JIT outside the timed region
        t_np = clock(np_fn, args.repeats)
        t_nb = clock(nb_fn, args.repeats)
        print(f"{name:24s} {t_np * 1e3:10.2f}ms {t_nb * 1e3:10.2f}ms {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()

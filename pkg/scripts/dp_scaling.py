#!/usr/bin/env python3
"""Time solve_dp on random chains of N = 2^lo .. 2^hi sites (best of several repeats)."""

import argparse
import time

import numpy as np

from tcount_ising.ising import ChainSpec, solve_dp


def best_time(chain, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        solve_dp(chain)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=16)
    ap.add_argument("--hi", type=int, default=22)
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    solve_dp(ChainSpec.from_fields([1.0, -1.0], [0.5]))  # JIT warm-up
    prev = None
    print(f"{'N':>10} {'seconds':>10} {'ns/site':>8} {'ratio':>6}")
    for k in range(args.lo, args.hi + 1):
        n = 2**k
        chain = ChainSpec.from_fields(rng.uniform(-10, 10, n), rng.uniform(-10, 10, n - 1))
        t = best_time(chain, args.repeats)
        ratio = f"{t / prev:6.2f}" if prev else ""
        print(f"{n:>10} {t:>10.4f} {1e9 * t / n:>8.1f} {ratio:>6}")
        prev = t


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled grid kernels against the numpy fallback.

Runs each scan on a representative workload with both backends, checks
the results are bit-identical, and prints timings.  Also times one full
oracle query end to end per backend.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from tailbounds import DistributionClass, _kernels_py
from tailbounds import kernels as kernel_module
from tailbounds.oracles import GridSpec, khintchine_grid_oracle

try:
    from tailbounds import _gridkernels
except ImportError:
    _gridkernels = None


def timeit(fn, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads():
    rng = np.random.default_rng(7)
    t_big = np.ascontiguousarray(np.linspace(-110.0, 30.0, 2_000_001))
    g = np.ascontiguousarray(np.linspace(-9.0, 9.0, 101))
    s = np.ascontiguousarray(np.linspace(1e-6, 8.0, 501))
    a = np.ascontiguousarray(np.sort(rng.uniform(-9.0, 1.999, 500_001)))
    return [
        ("pair_scan 2e6 pts (mixture tail)",
         lambda k: k.pair_scan(t_big, 1.0, 3.75, -math.inf, 2.5, True)),
        ("triple_scan 101^3 (three atoms)",
         lambda k: k.triple_scan(g, g, g, 0.0, 1.0, -2.0, 1.0, False)),
        ("sym_pair_scan 501^2",
         lambda k: k.sym_pair_scan(s, s, 2.0, 0.5)),
        ("recip_scan 5e5 pts",
         lambda k: k.recip_scan(a, 2.0, 1.0)),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _gridkernels is None:
        print("compiled extension not built; nothing to compare")
        return

    print(f"{'workload':<36} {'compiled':>10} {'fallback':>10} {'speedup':>8}")
    for name, call in workloads():
        tc, rc = timeit(lambda: call(_gridkernels), args.repeat)
        tp, rp = timeit(lambda: call(_kernels_py), args.repeat)
        assert rc == rp, f"backend mismatch on {name}: {rc} vs {rp}"
        print(f"{name:<36} {tc * 1e3:>8.1f}ms {tp * 1e3:>8.1f}ms {tp / tc:>7.1f}x")

    # one full oracle, swapping the backend behind the kernels module
    grid = GridSpec()
    names = ("pair_scan", "triple_scan", "sym_pair_scan", "sym_arm_scan", "recip_scan")
    saved = {n: getattr(kernel_module, n) for n in names}

    def run():
        return khintchine_grid_oracle(DistributionClass.UNIMODAL, 2.2, 2.0, grid)

    tc, rc = timeit(run, args.repeat)
    for n in names:
        setattr(kernel_module, n, getattr(_kernels_py, n))
    try:
        tp, rp = timeit(run, args.repeat)
    finally:
        for n, fn in saved.items():
            setattr(kernel_module, n, fn)
    assert rc == rp, "oracle reports differ between backends"
    print(f"{'khintchine oracle (unimodal 2-sided)':<36} "
          f"{tc * 1e3:>8.1f}ms {tp * 1e3:>8.1f}ms {tp / tc:>7.1f}x")
    print("results identical across backends")


if __name__ == "__main__":
    main()

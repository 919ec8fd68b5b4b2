"""Benchmark the Monte Carlo kernels: numba @njit vs the pure-numpy fallback.

    python benchmarks/bench_backends.py [--samples 50000] [--workers 4]

The first numba call compiles (cached afterwards); a warmup run keeps the
JIT cost out of the measurements. Both backends draw identical matrices,
so the last column doubles as a cross-backend agreement check.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ahpkit.scales import SAATY_SCALE
from ahpkit.simulate import ci_samples


def measure(backend: str, order: int, samples: int, workers: int) -> tuple[float, np.ndarray]:
    start = time.perf_counter()
    cis = ci_samples(order, samples, seed=2468, scale=SAATY_SCALE,
                     workers=workers, backend=backend)
    return time.perf_counter() - start, cis


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=50_000)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--orders", type=int, nargs="*", default=[3, 5, 8, 10, 12])
    args = parser.parse_args()

    measure("numba", 3, 100, 1)  # trigger JIT before timing

    print(f"samples={args.samples} workers={args.workers}")
    print(f"{'order':>5} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8} {'max |diff|':>11}")
    for order in args.orders:
        t_np, cis_np = measure("numpy", order, args.samples, args.workers)
        t_nb, cis_nb = measure("numba", order, args.samples, args.workers)
        diff = float(np.max(np.abs(cis_np - cis_nb)))
        print(f"{order:>5} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()

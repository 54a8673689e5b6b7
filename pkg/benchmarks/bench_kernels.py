"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 100000]

Two regimes are timed: the sizes the library actually uses (16-cell simple
functions, 4096-point grids) and one large batch of ``--size`` points.

Both backends are importable in one process; the env flag only picks which
one the library binds. Each row reports the best of ``--repeat`` runs after
one warm-up call (so JIT compilation is excluded) and checks that the two
backends agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from orlicz import _kernels
from orlicz.funcspace import random_simple_function
from orlicz.young import ExpMinusOne, Max, Power, PowerLog, Sum, ValScale

NAMES = ("eval", "inverse", "simple_modular", "level_weak_sup", "step_distribution")


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(size: int, rng: np.random.Generator, cells: int | None = None, grid: int | None = None):
    phi = Max((Sum((Power(2), ValScale(0.5, PowerLog(1, 1)))), ExpMinusOne()))
    prog = phi.program
    t = np.exp(rng.uniform(-18, 18, grid or size))
    s = np.exp(rng.uniform(-18, 18, grid or size // 10))
    n_cells = cells or size // 100
    f = random_simple_function(rng, min_cells=n_cells, max_cells=n_cells)
    levels = np.sort(np.unique(f.values))
    tails = np.cumsum(np.bincount(np.searchsorted(levels, f.values), weights=f.measures)[::-1])[::-1]
    lam = np.exp(rng.uniform(-10, 10, grid or size // 10))
    return {
        "eval": lambda k: k[0](*prog, t),
        "inverse": lambda k: k[1](*prog, s, 1e-10, 200),
        "simple_modular": lambda k: k[2](*prog, f.values, f.measures, 1.7),
        "level_weak_sup": lambda k: k[3](*prog, levels, tails, 1.7),
        "step_distribution": lambda k: k[4](f.values, f.measures, lam),
    }


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=100_000)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba not installed: only the numpy backend is available")
        return

    regimes = [
        ("library sizes (16 cells, 4096-point grid)", cases(0, np.random.default_rng(0), cells=16, grid=4096)),
        (f"batch of {args.size}", cases(args.size, np.random.default_rng(0))),
    ]
    for title, runs in regimes:
        print(title)
        print(f"  {'kernel':<20}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}  agree")
        for name in NAMES:
            run = runs[name]
            t_np = best_of(lambda: run(_kernels.NUMPY_KERNELS), args.repeat)
            t_nb = best_of(lambda: run(_kernels.NUMBA_KERNELS), args.repeat)
            agree = np.allclose(run(_kernels.NUMPY_KERNELS), run(_kernels.NUMBA_KERNELS), rtol=1e-9, atol=0)
            print(f"  {name:<20}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x  {agree}")


if __name__ == "__main__":
    main()

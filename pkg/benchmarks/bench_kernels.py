"""Compiled kernels vs the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 100 500 2000] [--batch 64] [--repeat 5]

Times batched sigma evaluation and single cascades on both paths, and the MSS
removal loop compiled vs interpreted. Results are checked for agreement before
anything is timed.
"""
import argparse
import time

import numpy as np

from barricade import GenSpec, generate, kernels
from barricade._jit import NUMBA_ENABLED


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def graph(n, seed):
    # about 10 neighbours per node, barricades around a third of the in-weight
    spec = GenSpec("rg", n, 10.0 * n, (1, 2), (2, 6), rng_seed=seed)
    return generate(spec)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 500, 2000])
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--mss-max-n", type=int, default=500, help="skip interpreted MSS above this size")
    args = ap.parse_args()
    if not NUMBA_ENABLED:
        raise SystemExit("numba is disabled (BARRICADE_DISABLE_NUMBA); nothing to compare")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<14}{'n':>6}{'edges':>8}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}")
    for n in args.sizes:
        g = graph(n, n)
        rows = [sorted(rng.choice(n, size=max(1, n // 20), replace=False).tolist()) for _ in range(args.batch)]

        a = kernels.batch_sigma(g, rows, use_numba=True)
        b = kernels.batch_sigma(g, rows, use_numba=False)
        assert (a == b).all(), "paths disagree"
        t_nb = best_of(lambda: kernels.batch_sigma(g, rows, use_numba=True), args.repeat)
        t_np = best_of(lambda: kernels.batch_sigma(g, rows, use_numba=False), args.repeat)
        print(f"{'batch_sigma':<14}{n:>6}{g.edge_count:>8}{t_nb * 1e3:>11.2f}{t_np * 1e3:>11.2f}{t_np / t_nb:>8.1f}x")

        seeds = rows[0]
        kernels.cascade_levels(g, seeds, use_numba=True)
        t_nb = best_of(lambda: kernels.cascade_levels(g, seeds, use_numba=True), args.repeat)
        t_np = best_of(lambda: kernels.cascade_levels(g, seeds, use_numba=False), args.repeat)
        print(f"{'cascade':<14}{n:>6}{g.edge_count:>8}{t_nb * 1e3:>11.2f}{t_np * 1e3:>11.2f}{t_np / t_nb:>8.1f}x")

        if n <= args.mss_max_n:
            rand = np.random.default_rng(1).random(n)
            call = (g.out_ptr, g.out_idx, g.out_w, g.in_ptr, g.in_idx, g.in_w, g.b, g.alive, rand)
            fast = kernels.mss_core(*call)
            slow = kernels.mss_core.py_func(*call)
            assert (fast[0] == slow[0]).all(), "MSS paths disagree"
            t_nb = best_of(lambda: kernels.mss_core(*call), args.repeat)
            t_py = best_of(lambda: kernels.mss_core.py_func(*call), 1)
            print(f"{'mss_core':<14}{n:>6}{g.edge_count:>8}{t_nb * 1e3:>11.2f}{t_py * 1e3:>11.2f}{t_py / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()

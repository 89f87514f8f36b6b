"""Timing comparison of the two kernel backends.

The solver's cost is dominated by hazard_grid: one call evaluates the
winning-hazard estimator at every march point against the full common
factor sample.  top_two dominates the simulation loop and hermite_eval
the bid lookups.  Run:

    python3 benchmarks/bench_kernels.py [--repeats 5]

The numba path is compiled on first call (cached on disk afterwards);
the warm-up below keeps compilation out of the timings.
"""

import argparse
import time

import numpy as np

from auctionlab import _kernels

CASES = {
    # (march points, mc samples) roughly one n=10 solve
    "hazard_grid": dict(points=4000, mc=16384, n=10, rho=0.5),
    # one simulation batch at n=10
    "top_two": dict(rows=131072, cols=10),
    # one batch of bid lookups on a 200-node grid
    "hermite_eval": dict(queries=131072, nodes=200),
}


def _inputs(rng):
    h = CASES["hazard_grid"]
    t = np.linspace(-8.0, 4.75, h["points"])
    xi = rng.standard_normal(h["mc"])
    s = CASES["top_two"]
    v = rng.standard_normal((s["rows"], s["cols"]))
    e = CASES["hermite_eval"]
    grid = np.linspace(-4.75, 4.75, e["nodes"])
    y = np.sort(rng.standard_normal(e["nodes"]))
    d = np.gradient(y, grid)
    zq = rng.uniform(-4.75, 4.75, e["queries"])
    return {
        "hazard_grid": (t, xi, h["n"], h["rho"]),
        "top_two": (v,),
        "hermite_eval": (zq, grid[0], grid[1] - grid[0], y, d),
    }


def _time(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    inputs = _inputs(np.random.default_rng(0))
    results = {}
    for name in ("numpy", "numba"):
        try:
            table = _kernels.get_backend(name)
        except Exception as exc:  # numba may be absent
            print(f"{name}: unavailable ({exc})")
            continue
        for kernel in CASES:
            table[kernel](*inputs[kernel])  # warm-up / JIT
            results[(name, kernel)] = _time(table[kernel], inputs[kernel], args.repeats)

    print(f"{'kernel':<14}{'case':<34}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for kernel, case in CASES.items():
        desc = " ".join(f"{k}={v}" for k, v in case.items())
        t_np = results.get(("numpy", kernel))
        t_nb = results.get(("numba", kernel))
        cols = [
            f"{t_np * 1e3:9.2f}ms" if t_np else f"{'-':>10}",
            f"{t_nb * 1e3:9.2f}ms" if t_nb else f"{'-':>10}",
            f"{t_np / t_nb:8.1f}x" if t_np and t_nb else f"{'-':>9}",
        ]
        print(f"{kernel:<14}{desc:<34}{''.join(cols)}")


if __name__ == "__main__":
    main()

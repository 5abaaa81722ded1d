"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 1]
"""
import argparse
import time

import numpy as np

from rggradii import _core, _kernels_py
from rggradii.asymptotics import critical_radius, xi_from_c
from rggradii.geometry import Region
from rggradii.rgg import csr_from_edges
from rggradii.sampling import uniform_points


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()

    region = Region.unit_ball()
    pts = uniform_points(region, args.n, np.random.default_rng(0))
    r = critical_radius(args.n, 1, xi_from_c(region.boundary_area(), 1, 0.0))
    i, j, d = _kernels_py.grid_pairs(pts, r)
    order = np.lexsort((j, i, d))
    ei, ej = i[order], j[order]
    # a wider radius so the graph is 2-connected and every flow check runs
    wi, wj, _ = _kernels_py.grid_pairs(pts, 1.6 * r)
    indptr, indices = csr_from_edges(args.n, wi, wj)

    cases = [
        ("grid_pairs", lambda m: m.grid_pairs(pts, r)),
        ("bottleneck_edge", lambda m: m.bottleneck_edge(args.n, ei, ej)),
        ("prim_longest_edge", lambda m: m.prim_longest_edge(pts)),
        ("is_k_connected k=2", lambda m: m.is_k_connected(args.n, indptr, indices, 2)),
    ]
    backends = [_kernels_py]
    if _core.BACKEND == "cython":
        backends.insert(0, _core.kernels)
    else:
        print("compiled kernels not built; timing the pure-Python backend only")

    print(f"n={args.n} r={r:.5f} edges={len(ei)}")
    print(f"{'kernel':<22}" + "".join(f"{m.BACKEND:>12}" for m in backends) + "   speedup")
    for name, fn in cases:
        secs = [best_of(lambda m=m: fn(m), args.repeat)[0] for m in backends]
        speed = f"{secs[-1] / secs[0]:9.1f}x" if len(secs) == 2 else ""
        print(f"{name:<22}" + "".join(f"{s:12.4f}" for s in secs) + "   " + speed)


if __name__ == "__main__":
    main()

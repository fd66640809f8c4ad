"""Compiled vs pure-Python timings for the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both paths run in one process: the jitted kernels keep the original
function as ``.py_func``. Results are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from heawood3d import (NUMBA_ENABLED, barycentric_subdivision, canonical, directed_line_graph,
                       induce_face_orientations, random_s3)
from heawood3d import _kernels as K
from heawood3d.generators import RegluingSpec, twisted_reglue


def best_of(func, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = func(*args)
        times.append(time.perf_counter() - start)
    return min(times), out


def spanning_case(tri):
    dl = directed_line_graph(tri, induce_face_orientations(tri))
    return (dl.n_nodes, *K.incidence_csr(dl.n_nodes, dl.tails, dl.heads))


def backtrack_case(k, symmetric=True):
    faces = k.face_edges
    pairs = np.concatenate([faces[:, [0, 1]], faces[:, [0, 2]], faces[:, [1, 2]]])
    n = k.n_edges
    ptr, nbr = K.adjacency_csr(n, pairs)
    start = -np.ones(n, dtype=np.int64)
    fixed = np.zeros(0, dtype=np.int64)
    if symmetric:
        start[faces[0]] = (0, 1, 2)
        fixed = np.sort(faces[0])
    order = K.constraint_order(n, ptr, nbr, fixed)
    return order, ptr, nbr, 3, start, 1 << 20, 1


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not NUMBA_ENABLED:
        print("numba is disabled (HEAWOOD3D_DISABLE_NUMBA); both columns time the same code")

    sub = barycentric_subdivision(canonical("double_tet"))[0]
    big = barycentric_subdivision(barycentric_subdivision(random_s3(3, 20))[0])[0]
    cases = [
        ("spanning_potential", "bsd(cross16)", K.spanning_potential,
         spanning_case(barycentric_subdivision(canonical("cross16"))[0])),
        ("spanning_potential", f"bsd^2(random_s3) T={big.n_tetrahedra}", K.spanning_potential, spanning_case(big)),
        ("backtrack_colourings", "cross16", K.backtrack_colourings, backtrack_case(canonical("cross16"))),
        ("backtrack_colourings", "cross16 twisted (count 0)", K.backtrack_colourings,
         backtrack_case(twisted_reglue(canonical("cross16"), RegluingSpec(0, 15, (0, 1, 3, 2))))),
        ("backtrack_colourings", "cross16 unreduced", K.backtrack_colourings,
         backtrack_case(canonical("cross16"), symmetric=False)),
        ("backtrack_colourings", "bsd(double_tet) twisted (count 0)", K.backtrack_colourings,
         backtrack_case(twisted_reglue(sub, RegluingSpec(0, 33, (0, 1, 3, 2))))),
    ]
    print(f"{'kernel':<22} {'instance':<34} {'numba [ms]':>11} {'python [ms]':>12} {'speedup':>8}")
    for kernel, label, func, fargs in cases:
        func(*fargs)  # compile / load from cache
        fast, out_fast = best_of(func, fargs, args.repeat)
        slow, out_slow = best_of(func.py_func, fargs, args.repeat)
        same = all(np.array_equal(np.asarray(a), np.asarray(b)) for a, b in zip(out_fast, out_slow)) \
            if kernel == "spanning_potential" else out_fast[0] == out_slow[0]
        if not same:
            raise SystemExit(f"{kernel} on {label}: compiled and pure results differ")
        print(f"{kernel:<22} {label:<34} {fast * 1e3:>11.2f} {slow * 1e3:>12.2f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()

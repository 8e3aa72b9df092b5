#!/usr/bin/env python3
"""Time the jitted kernels against the pure numpy/python fallbacks.

Runs each hot kernel on a representative input under both backends
(selected through the WIDTHLAB_BACKEND environment variable) and prints
a table with the speedup. The first jitted call pays compilation; a
warmup run is excluded from the timings.

Usage: python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import os
import time

import numpy as np

from widthlab import _kernels, bounds, decomp, graphs


def _timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def build_cases():
    h = graphs.gen_hamming(2, 2, 4)
    masks16 = np.asarray(h.neighbor_masks(), dtype=np.uint64)
    bk = graphs.gen_bipartite_kneser(5, 2)
    masks20 = np.asarray(bk.neighbor_masks(), dtype=np.uint64)
    pd = decomp.petersen_pd(2000, 5, "repaired")
    pet = graphs.gen_petersen(400, 2)
    bramble = bounds.petersen_bramble(400, 2)
    packed = bounds._pack_rows(bramble.sets, pet.num_vertices)
    nbrw = bounds._pack_rows([pet.neighbors(v) for v in range(pet.num_vertices)], pet.num_vertices)
    return [
        ("elimination-width DP, 16 vertices", lambda: _kernels.elim_table(masks16, 16)),
        ("elimination-width DP, 20 vertices", lambda: _kernels.elim_table(masks20, 20)),
        ("separation DP, 20 vertices", lambda: _kernels.sep_table(_kernels.boundary_table(masks20, 20), 20)),
        ("boundary minima, 16 vertices", lambda: _kernels.bv_table(masks16, 16)),
        ("bag occurrence scan, n=2000 k=5", lambda: _kernels.bag_occurrence(pd.flat, pd.offsets, 4000)),
        ("bramble closure+touch, n=400 k=2", lambda: _kernels.touch_scan(
            _kernels.closure_rows(packed, pet.edges[:, 0], pet.edges[:, 1]), packed)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = build_cases()
    print(f"{'kernel':42s} {'numba':>10s} {'fallback':>10s} {'speedup':>8s}")
    for name, fn in cases:
        os.environ["WIDTHLAB_BACKEND"] = "numba"
        fn()  # warmup / compile
        t_nb, r_nb = _timed(fn, args.repeat)
        os.environ["WIDTHLAB_BACKEND"] = "python"
        t_py, r_py = _timed(fn, args.repeat)
        same = _same(r_nb, r_py)
        ratio = t_py / t_nb if t_nb > 0 else float("inf")
        flag = "" if same else "  << MISMATCH"
        print(f"{name:42s} {t_nb * 1e3:9.1f}ms {t_py * 1e3:9.1f}ms {ratio:7.1f}x{flag}")
    os.environ.pop("WIDTHLAB_BACKEND", None)


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


if __name__ == "__main__":
    main()

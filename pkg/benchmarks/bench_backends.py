#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the four all-pairs kernels and a full brute-force solve on a
sizeable random instance. Numba timings exclude the one-off JIT compile
(a warm-up call runs first).

Usage: python benchmarks/bench_backends.py [--points 256] [--set-size 16] [--m 3]
"""

import argparse
import time

import numpy as np

import setoptlab as sl
import setoptlab._kernels_numba as knb
import setoptlab._kernels_numpy as knp
from setoptlab import backend


def build_instance(n_points: int, set_size: int, m: int) -> sl.Instance:
    rng = np.random.default_rng(7)
    cone = sl.random_cone(rng, m, "skewed")
    points = [(f"x{k:04d}", rng.uniform(size=2)) for k in range(n_points)]
    values = {
        pid: rng.integers(-8, 9, size=(int(rng.integers(set_size // 2, set_size + 1)), m)) / 2.0
        for pid, _ in points
    }
    return sl.make_instance(cone, points, values)


def bench(fn, *args, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=256)
    ap.add_argument("--set-size", type=int, default=16)
    ap.add_argument("--m", type=int, default=3)
    args = ap.parse_args()

    inst = build_instance(args.points, args.set_size, args.m)
    flat, offs = inst.packed()
    sig = inst.sup_points()
    print(
        f"instance: {inst.n} decision points, {flat.shape[0]} stacked value points, m={args.m}"
    )

    cases = [
        ("lower_gap_matrix", lambda k: k.lower_gap_matrix(inst.cone.gens_e, flat, offs)),
        ("upper_gap_matrix", lambda k: k.upper_gap_matrix(inst.cone.gens_w, flat, offs)),
        (
            "relate_lu (l, strict)",
            lambda k: k.relate_lu_matrix(inst.cone.gens, flat, offs, False, True, 1e-9),
        ),
        (
            "relate_lu (u, strict)",
            lambda k: k.relate_lu_matrix(inst.cone.gens, flat, offs, True, True, 1e-9),
        ),
        (
            "relate_h (strict)",
            lambda k: k.relate_h_matrix(inst.cone.gens, flat, offs, sig, True, 1e-9),
        ),
    ]

    print(f"{'kernel':<24}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, call in cases:
        call(knb)  # JIT warm-up
        t_np, a = bench(call, knp)
        t_nb, b = bench(call, knb)
        same = np.array_equal(np.asarray(a), np.asarray(b))
        print(f"{name:<24}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x" + ("" if same else "  MISMATCH"))

    doc = sl.instance_to_dict(inst)
    print(f"{'solve (l, weak, brute)':<24}", end="")
    times = {}
    for name in ("numpy", "numba"):
        backend.set_backend(name)
        fresh = sl.instance_from_dict(doc)
        t0 = time.perf_counter()
        sl.solve_bruteforce(fresh, "l", "weak_minimal")
        times[name] = time.perf_counter() - t0
    backend.set_backend(None)
    print(
        f"{times['numpy']:>12.4f}{times['numba']:>12.4f}{times['numpy'] / times['numba']:>9.1f}x"
    )


if __name__ == "__main__":
    main()

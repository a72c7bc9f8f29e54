"""Timing comparison of the jet-arithmetic backends.

Runs the truncated product and Horner kernels on random coefficient tables
with both the numba and pure-numpy implementations, then times a realistic
workload (curvature bundles across a gallery surface) under each backend.

Usage: python benchmarks/bench_jet.py [--order N] [--repeat R]
"""
import argparse
import time

import numpy as np

from cuspedge._kernels import horner_numpy, mul_numpy


def time_fn(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(order, repeat):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((order + 1, order + 1))
    b = rng.standard_normal((order + 1, order + 1))
    w = a.copy()
    w[0, 0] = 0.0
    series = rng.standard_normal(order + 1)
    n_inner = 2000

    rows = [("mul", "numpy", lambda: [mul_numpy(a, b, order)
                                      for _ in range(n_inner)]),
            ("horner", "numpy", lambda: [horner_numpy(w, series, order)
                                         for _ in range(n_inner)])]
    try:
        from cuspedge._kernels import _build_numba
        mul_nb, horner_nb = _build_numba()
        mul_nb(a, b, order)          # compile outside the timed region
        horner_nb(w, series, order)
        assert np.allclose(mul_nb(a, b, order), mul_numpy(a, b, order))
        assert np.allclose(horner_nb(w, series, order),
                           horner_numpy(w, series, order))
        rows += [("mul", "numba", lambda: [mul_nb(a, b, order)
                                           for _ in range(n_inner)]),
                 ("horner", "numba", lambda: [horner_nb(w, series, order)
                                              for _ in range(n_inner)])]
    except ImportError:
        print("numba not importable; numpy backend only")

    print(f"kernel benchmarks, order {order}, {n_inner} calls per run, "
          f"best of {repeat}:")
    base = {}
    for name, backend, fn in rows:
        t = time_fn(fn, repeat)
        base.setdefault(name, t)
        speedup = base[name] / t
        print(f"  {name:7s} {backend:6s} {t * 1e3:9.2f} ms  "
              f"({speedup:5.1f}x vs numpy)")


def bench_workload(repeat):
    from cuspedge import curvature_bundle, gallery_entry

    edge = gallery_entry("order4_helix").edge
    pts = [(s, t) for s in np.linspace(-0.8, 0.8, 8)
           for t in np.linspace(0.05, 0.4, 8)]

    def run():
        for s, t in pts:
            curvature_bundle(edge, s, t)

    run()  # warm caches
    t = time_fn(run, repeat)
    print(f"curvature workload ({len(pts)} bundles): {t * 1e3:.1f} ms "
          f"(set CUSPEDGE_BACKEND=numpy to compare backends)")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    bench_kernels(args.order, args.repeat)
    bench_workload(args.repeat)


if __name__ == "__main__":
    main()

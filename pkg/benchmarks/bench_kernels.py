"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--n 12 16 20]

Prints one CSV row per (kernel, size, backend) with the best wall time and
the relative difference from the numba result.
"""
import argparse
import time

import numpy as np

from acausal_qed import kernels
from acausal_qed._accel import HAVE_NUMBA
from acausal_qed.wavepacket import inverse_square_table


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, nargs="+", default=[12, 16, 20], help="lattice edge lengths")
    ap.add_argument("--m", type=int, nargs="+", default=[1000, 4000], help="line node counts")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]

    if HAVE_NUMBA:
        # compile outside the timed region
        kernels.lattice_pair_sum(np.ones((3, 2, 2, 2)), np.ones((3, 2, 2, 2)), np.ones((2, 2, 2)), backend="numba")
        kernels.log_displaced_sum(np.ones(4), np.arange(4.0), np.ones(4), np.arange(4.0) + 0.1, 1.0, backend="numba")

    print("kernel,size,backend,seconds,rel_diff")
    for n in args.n:
        a = rng.normal(size=(3, n, n, n)) + 1j * rng.normal(size=(3, n, n, n))
        b = rng.normal(size=(3, n, n, n)) + 1j * rng.normal(size=(3, n, n, n))
        table = inverse_square_table(n, 0.5)
        ref = None
        for be in backends:
            sec, val = best_time(lambda: kernels.lattice_pair_sum(a, b, table, backend=be), args.repeat)
            ref = val if ref is None else ref
            print(f"lattice_pair_sum,{n}^3,{be},{sec:.4f},{abs(val - ref) / abs(ref):.1e}")
    for m in args.m:
        za = np.linspace(-9, 9, m)
        zb = za + (za[1] - za[0]) / 6
        wa = np.exp(-za**2)
        wb = np.exp(-zb**2)
        ref = None
        for be in backends:
            sec, val = best_time(lambda: kernels.log_displaced_sum(wa, za, wb, zb, 3.0, backend=be), args.repeat)
            ref = val if ref is None else ref
            print(f"log_displaced_sum,{m},{be},{sec:.4f},{abs(val - ref) / abs(ref):.1e}")


if __name__ == "__main__":
    main()

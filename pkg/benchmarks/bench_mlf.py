"""Time the compiled and pure-Python Mittag-Leffler kernels on the same inputs.

    python3 benchmarks/bench_mlf.py [--points N] [--repeat R]

Inputs mimic a backward solve: regularized eigenvalues times t^gamma, spread
over all three evaluation regions.
"""

import argparse
import timeit

import numpy as np

from backfrac.mlf import kernels


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    x = np.logspace(-3, 4, args.points)
    ks = kernels()
    print(f"{args.points} points, best of {args.repeat}")
    print(f"{'gamma':>6} " + " ".join(f"{name:>12}" for name in ks) + "   speedup")
    for gamma in (0.25, 0.5, 0.75, 0.95):
        best = {}
        for name, mod in ks.items():
            best[name] = min(timeit.repeat(lambda: mod.ml_array(gamma, 1.0, x),
                                           number=1, repeat=args.repeat))
        cells = " ".join(f"{1e3 * best[name]:10.2f}ms" for name in ks)
        speed = f"{best['python'] / best['cython']:8.1f}x" if len(ks) == 2 else "       -"
        print(f"{gamma:6.2f} {cells} {speed}")
    if len(ks) == 2:
        diff = max(
            float(np.max(np.abs(ks["cython"].ml_array(g, 1.0, x) / ks["python"].ml_array(g, 1.0, x) - 1)))
            for g in (0.25, 0.5, 0.75, 0.95)
        )
        print(f"max relative difference between kernels: {diff:.1e}")


if __name__ == "__main__":
    main()

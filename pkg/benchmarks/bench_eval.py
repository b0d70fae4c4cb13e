#!/usr/bin/env python3
"""Benchmark the float64 evaluation kernels: numba JIT vs pure numpy.

Generates a small gamma table, then times batch Clenshaw evaluation and
full gamma evaluation over increasing point counts on both backends.
Run directly:

    python benchmarks/bench_eval.py [--points 1000 100000 1000000]

Setting GAMMACHEB_NO_NUMBA=1 disables the JIT path at import, in which
case only the numpy column is reported.
"""

import argparse
import time

import numpy as np

from gammacheb import GAMMA, generate_auto
from gammacheb import _kernels as K


def best_of(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, nargs="+",
                        default=[1_000, 100_000, 1_000_000])
    parser.add_argument("--digits", type=int, default=13,
                        help="table digits (controls coefficient count)")
    args = parser.parse_args()

    table = generate_auto(GAMMA, args.digits)
    coeffs = np.array([float(c) for c in table.series.coeffs])
    print(f"gamma table: {len(coeffs)} coefficients at {args.digits} digits")
    print(f"numba available: {K.HAVE_NUMBA}")

    rng = np.random.default_rng(42)

    header = f"{'kernel':<16}{'N':>10}{'numpy':>12}"
    if K.HAVE_NUMBA:
        header += f"{'numba':>12}{'speedup':>10}"
    print(header)

    for n in args.points:
        z = rng.uniform(1.0, 120.0, size=n)
        x = 1.0 / z

        cases = [
            ("clenshaw", (coeffs, x), K.clenshaw_batch_numpy,
             getattr(K, "clenshaw_batch_numba", None)),
            ("gamma eval", (K.GAMMA_CODE, 0, coeffs, z), K.eval_kind_batch_numpy,
             getattr(K, "eval_kind_batch_numba", None)),
        ]
        for name, call_args, np_fn, nb_fn in cases:
            t_np = best_of(np_fn, *call_args)
            line = f"{name:<16}{n:>10}{t_np * 1e3:>10.2f}ms"
            if nb_fn is not None:
                nb_fn(*call_args)  # warm the JIT outside the timing
                t_nb = best_of(nb_fn, *call_args)
                line += f"{t_nb * 1e3:>10.2f}ms{t_np / t_nb:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()

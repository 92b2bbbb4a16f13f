#!/usr/bin/env python
"""Compare the numba kernels with the pure-numpy fallback.

Both paths are called directly from cdulab.kernels, so the CDULAB_NUMBA switch
is bypassed and each run is timed on identical inputs.  Outputs are checked for
equality before timings are reported.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --n 8 10 12 --repeat 5
    python benchmarks/bench_kernels.py --json results.json
"""

import argparse
import json
import time

import numpy as np

from cdulab import kernels
from cdulab._accel import HAVE_NUMBA
from cdulab.constructions import gold
from cdulab.gf import make_field


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_field(n, repeat, p=2):
    ctx = make_field(p, n)
    F = gold(ctx, 1).values if p == 2 else np.asarray(ctx.pow(ctx.elements(), 2))
    cF = ctx.mul(ctx.gamma, F)
    rows = np.arange(min(ctx.q, 64))
    cases = {
        "row_maxima": (
            lambda: kernels.cddt_row_maxima_nb(F, cF, p, n, 0, ctx.q),
            lambda: kernels.cddt_row_maxima_np(F, cF, p, n, 0, ctx.q),
        ),
        "ddt_rows[64]": (
            lambda: kernels.cddt_rows_nb(F, cF, p, n, rows),
            lambda: kernels.cddt_rows_np(F, cF, p, n, rows),
        ),
    }
    if p == 2:
        signs = (1 - 2 * (F[None, :] & 1)).astype(np.int64)
        cases["moebius"] = (lambda: kernels.moebius_nb(F), lambda: kernels.moebius_np(F))
        cases["fwht"] = (lambda: kernels.fwht_rows_nb(signs), lambda: kernels.fwht_rows_np(signs))
    results = []
    for name, (nb, npy) in cases.items():
        nb()  # compile outside the timed region
        t_nb, out_nb = best_of(nb, repeat)
        t_np, out_np = best_of(npy, repeat)
        if not np.array_equal(out_nb, out_np):
            raise SystemExit(f"kernel mismatch: {name} at p={p}, n={n}")
        results.append({"p": p, "n": n, "kernel": name, "numba_s": t_nb, "numpy_s": t_np,
                        "speedup": t_np / t_nb if t_nb > 0 else float("inf")})
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[6, 8, 10, 12], help="binary field degrees")
    ap.add_argument("--odd", action="store_true", help="also run GF(3^n) for n <= 7")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write results to this file")
    args = ap.parse_args()

    if not HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    results = []
    for n in args.n:
        results.extend(bench_field(n, args.repeat))
    if args.odd:
        for n in (n for n in args.n if n <= 7):
            results.extend(bench_field(n, args.repeat, p=3))

    print(f"{'p':>2} {'n':>3} {'kernel':<14} {'numba [s]':>11} {'numpy [s]':>11} {'speedup':>8}")
    for r in results:
        print(f"{r['p']:>2} {r['n']:>3} {r['kernel']:<14} {r['numba_s']:>11.5f} {r['numpy_s']:>11.5f} "
              f"{r['speedup']:>7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()

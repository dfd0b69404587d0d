"""Compare the compiled and pure-Python row-reduction kernels.

Workloads are the matrices the library actually reduces: socle-degree ideal
pieces of random regular sequences, re-sorted under every small sorted 1-PS,
plus dense random integer matrices.  Both kernels must agree exactly.

    python3 benchmarks/bench_kernel.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from gitmilnor.corpus import CorpusSpec, generate
from gitmilnor.kernel import echelon_ext, echelon_py
from gitmilnor.linalg import span_of_multiples
from gitmilnor.milnor import socle_degree
from gitmilnor.oneps import order_key, sorted_onepss


def socle_workload(n, degree, count, bound=6):
    jobs = []
    for item in generate(CorpusSpec("random-regular", (n,), (degree,), count, seed=7)):
        gens = item.generator_list()
        W = span_of_multiples(gens, socle_degree(n, degree - 1))
        for lam in sorted_onepss(n, bound, include_trivial=False):
            order = sorted(range(W.ambient_dim), key=lambda j: order_key(lam, W.monomials[j]))
            jobs.append(([[r[j] for j in order] for r in W.rows], len(order)))
    return jobs


def dense_workload(size, count, entry=9):
    rng = random.Random(3)
    return [([[rng.randint(-entry, entry) for _ in range(size)] for _ in range(size - 1)], size)
            for _ in range(count)]


def bench(fn, jobs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for rows, ncols in jobs:
            fn(rows, ncols)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if echelon_ext is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    workloads = {
        "socle n=2 d=3": socle_workload(2, 4, 20),
        "socle n=3 d=2": socle_workload(3, 3, 20),
        "socle n=3 d=3": socle_workload(3, 4, 5),
        "dense 12x13": dense_workload(13, 200),
        "dense 30x31": dense_workload(31, 20),
    }
    print(f"{'workload':<16}{'matrices':>9}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, jobs in workloads.items():
        for rows, ncols in jobs:
            assert echelon_py(rows, ncols) == echelon_ext(rows, ncols), name
        tp = bench(echelon_py, jobs, args.repeat)
        tc = bench(echelon_ext, jobs, args.repeat)
        print(f"{name:<16}{len(jobs):>9}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled development kernel against the pure-Python fallback.

Three workloads, all on the shipped 2+2 complex:
  rect    one large rectangle development
  many    a batch of small rectangles (search-shaped workload)
  stream  a long periodic divergence scan at a tall height

Usage: python benchmarks/bench_develop.py [--reps N]
"""

import argparse
import random
import time
from importlib.resources import files

import cscwalls as cw
from cscwalls.develop import _speedups, develop_ids, stream_mismatch_ids
from cscwalls.antitorus import AntiTorusQuery, find_periodic_top


def load_inputs():
    p = cw.parse_complex(files("cscwalls.data").joinpath("aperiodic22.sqc").read_text())
    rng = random.Random(42)

    def rand_ids(klass, n):
        pool = p.hedges if klass == cw.HORIZONTAL else p.vedges
        out = []
        for _ in range(n):
            options = [g for g in range(2 * len(pool)) if not out or g != out[-1] ^ 1]
            out.append(rng.choice(options))
        return out

    big_bottom = rand_ids(cw.HORIZONTAL, 1500)
    big_left = rand_ids(cw.VERTICAL, 1500)
    small = [
        (rand_ids(cw.HORIZONTAL, 30), rand_ids(cw.VERTICAL, 30)) for _ in range(400)
    ]
    query = AntiTorusQuery(
        p, cw.PeriodicWord(cw.parse_word(p, "a")), cw.PeriodicWord(cw.parse_word(p, "x"))
    )
    j, _ = find_periodic_top(query, 8)
    tall_side = [p.germ_id(e) for e in query.vword.period.letters] * (j * 40)
    period = [p.germ_id(e) for e in query.hword.period.letters]
    return p, big_bottom, big_left, small, period, tall_side


def run_workloads(tables, big_bottom, big_left, small, period, tall_side, backend):
    def rect():
        develop_ids(tables, big_bottom, big_left, backend=backend)

    def many():
        for b, l in small:
            develop_ids(tables, b, l, backend=backend)

    def stream():
        stream_mismatch_ids(tables, period, list(tall_side), 5000, backend=backend)

    return {"rect": rect, "many": many, "stream": stream}


def best_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    p, *inputs = load_inputs()
    backends = ["python"] + (["cython"] if _speedups is not None else [])
    if _speedups is None:
        print("compiled kernel not available; timing the fallback only")

    results = {}
    for backend in backends:
        for name, fn in run_workloads(p.tables, *inputs, backend=backend).items():
            fn()  # warm up
            results[(backend, name)] = best_time(fn, args.reps)

    print(f"{'workload':<10} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name in ("rect", "many", "stream"):
        py = results[("python", name)]
        if ("cython", name) in results:
            cy = results[("cython", name)]
            print(f"{name:<10} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms {py / cy:>8.1f}x")
        else:
            print(f"{name:<10} {py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the numba DFS kernel against the pure-numpy fallback.

Both kernels walk the same search tree, so node counts must agree; the
script checks that and reports wall time and nodes per second.

Usage:
    python benchmarks/bench_kernels.py [--repeat R] [--full] [--threads N]
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from radosearch import _kernels
from radosearch.equation import Equation
from radosearch.search import build_constraints, longest_good

QUICK = [
    ("schur t=2", Equation((1, 1), 0), 2, 10),
    ("schur t=3", Equation((1, 1), 0), 3, 20),
    ("x+y=z-1 t=3", Equation((1, 1), -1), 3, 30),
    ("x+y=z+15 t=3", Equation((1, 1), 15), 3, 18),
    ("x+y+z=w t=3", Equation((1, 1, 1), 0), 3, 50),
]
FULL = QUICK + [
    ("x+y=z-2 t=3", Equation((1, 1), -2), 3, 45),
    ("x+y=z+24 t=3", Equation((1, 1), 24), 3, 28),
]


def bench(eq, t, cap, backend, repeat, threads):
    times, out = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        out = longest_good((eq,), t, cap, backend=backend, threads=threads)
        times.append(time.perf_counter() - start)
    return statistics.median(times), out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true", help="include slower cases (numpy side takes minutes)")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    if not _kernels.HAS_NUMBA:
        print("numba unavailable (or RADOSEARCH_DISABLE_NUMBA is set); nothing to compare", file=sys.stderr)
        return 1

    # compile / load the cached machine code before timing
    start = time.perf_counter()
    longest_good((Equation((1,), 1),), 2, 4, backend="numba")
    print(f"numba warm-up: {time.perf_counter() - start:.3f}s")

    header = f"{'case':<16}{'value':>6}{'nodes':>12}{'numba s':>10}{'numpy s':>10}{'speedup':>9}{'Mnodes/s':>10}"
    print(header)
    print("-" * len(header))
    for name, eq, t, cap in FULL if args.full else QUICK:
        build_constraints((eq,), cap)  # shared, excluded from timing
        tn, fast = bench(eq, t, cap, "numba", args.repeat, args.threads)
        tp, slow = bench(eq, t, cap, "numpy", args.repeat, args.threads)
        if (fast.best_len, fast.nodes) != (slow.best_len, slow.nodes):
            print(f"{name}: kernels disagree ({fast.best_len}/{fast.nodes} vs {slow.best_len}/{slow.nodes})")
            return 2
        rate = fast.nodes / tn / 1e6 if tn > 0 else float("inf")
        print(f"{name:<16}{fast.best_len + 1:>6}{fast.nodes:>12}{tn:>10.4f}{tp:>10.4f}{tp / tn:>8.1f}x{rate:>10.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

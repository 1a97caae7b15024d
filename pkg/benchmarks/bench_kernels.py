"""Compiled vs numpy elimination kernel, alone and inside a full cohomology table.

    python benchmarks/bench_kernels.py [--sizes 40 80 160 320] [--repeat 3]

The end-to-end part runs the same table in two subprocesses, one with
MGREG_PURE_PYTHON=1, and compares wall-clock times.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from mgreg import _pykernels
from mgreg.linalg import BACKEND, DEFAULT_PRIME

try:
    from mgreg import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

END_TO_END = """
import time
from mgreg.grading import Grading
from mgreg.linalg import Field, BACKEND
from mgreg.local_cohomology import cohomology_table
from mgreg.regions import Box
from mgreg.ring import MonomialIdeal, Presentation
g = Grading.standard([2, 2])
F = Field()
B = MonomialIdeal([(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)])
M = Presentation(g, F, [(0, 0)], [(1, 1)], {(0, 0): {(0, 1, 0, 1): 1, (1, 0, 1, 0): 1}})
t = time.perf_counter()
cohomology_table(B, M, Box((-4, -4), (4, 4)))
print(BACKEND, time.perf_counter() - t)
"""


def time_kernel(fn, A, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        X = A.copy()
        t = time.perf_counter()
        fn(X, p)
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["MGREG_PURE_PYTHON"] = "1"
    else:
        env.pop("MGREG_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160, 320])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    p = DEFAULT_PRIME
    rng = np.random.default_rng(0)
    print(f"active backend: {BACKEND}")
    print(f"{'size':>6} {'numpy (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in args.sizes:
        # rank-deficient square matrix, like the coboundaries in the tables
        A = (rng.integers(0, p, (n, n // 2)) @ rng.integers(0, p, (n // 2, n))) % p
        A = A.astype(np.int64)
        tp = time_kernel(_pykernels.rref_mod_p, A, p, args.repeat)
        if _ckernels is None:
            print(f"{n:>6} {tp:>12.5f} {'n/a':>12}")
            continue
        tc = time_kernel(_ckernels.rref_mod_p, A, p, args.repeat)
        print(f"{n:>6} {tp:>12.5f} {tc:>12.5f} {tp / tc:>8.1f}")
    if not args.skip_end_to_end:
        for pure in (True, False):
            backend, secs = end_to_end(pure)
            print(f"end-to-end table (R/(X1Y1+X2Y2), P2, box [-4,4]^2): {backend:>7} {secs:8.2f} s")


if __name__ == "__main__":
    main()

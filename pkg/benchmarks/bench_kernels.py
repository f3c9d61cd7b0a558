"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--reps N] [--size N]

Each kernel runs on the same random dense instances under both backends and
the outputs are compared before any timing is reported.  The end-to-end row
times a full SGA solve in a child process with and without
PBSCHED_PURE_PYTHON=1.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from pbsched import _pykernels
from pbsched.bench import GenSpec, generate_instance
from pbsched.matching import load_order_matrix

try:
    from pbsched import _ckernels
except ImportError:
    sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation`")

SGA_SNIPPET = """
import time
from pbsched import run_sga
from pbsched.bench import GenSpec, generate_instance
insts = [generate_instance(GenSpec({n}, {n}, 50, 1.0, 20, seed=s)) for s in range({reps})]
t = time.perf_counter()
for inst in insts:
    run_sga(inst)
print(time.perf_counter() - t)
"""


def kernel_inputs(n, seed):
    inst = generate_instance(GenSpec(n, n, 50, 1.0, 20, seed=seed))
    w = inst.weight_matrix()
    adj = (w > 0).astype(np.int64)
    order = load_order_matrix(w).astype(np.int64)
    match_row = _pykernels.max_matching(adj)
    rows = np.flatnonzero(match_row >= 0).astype(np.int64)
    cols = match_row[rows].astype(np.int64)
    cuts = w[rows, cols].astype(np.int64)
    loads = (w.sum(axis=1).astype(np.int64), w.sum(axis=0).astype(np.int64))
    return {
        "max_matching": (adj,),
        "greedy_matching_by_order": (w, order),
        "reduced_max_load": (*loads, rows, cols, cuts),
    }


def time_call(fn, cases, reps):
    return min(timeit.repeat(lambda: [fn(*args) for args in cases], number=reps, repeat=3)) / reps


def sga_seconds(n, reps, pure):
    env = dict(os.environ)
    env.pop("PBSCHED_PURE_PYTHON", None)
    if pure:
        env["PBSCHED_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", SGA_SNIPPET.format(n=n, reps=reps)],
        env=env, capture_output=True, text=True, check=True,
    )
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--size", type=int, default=15)
    args = ap.parse_args()

    inputs = [kernel_inputs(args.size, seed) for seed in range(10)]
    print(f"{'kernel':<26}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name in inputs[0]:
        cases = [inp[name] for inp in inputs]
        py_fn, c_fn = getattr(_pykernels, name), getattr(_ckernels, name)
        for case in cases:
            assert np.array_equal(np.asarray(py_fn(*case)), np.asarray(c_fn(*case))), name
        py = time_call(py_fn, cases, args.reps) * 1e3
        cy = time_call(c_fn, cases, args.reps) * 1e3
        print(f"{name:<26}{py:>12.3f}{cy:>12.3f}{py / cy:>9.1f}x")

    py = sga_seconds(args.size, args.reps, pure=True) * 1e3
    cy = sga_seconds(args.size, args.reps, pure=False) * 1e3
    print(f"{'run_sga (end to end)':<26}{py:>12.1f}{cy:>12.1f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()

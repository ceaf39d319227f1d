"""Benchmark the numba kernels against the pure numpy/Python fallback.

Runs each hot kernel (batch evaluation, simulated annealing, tabu search,
exhaustive search) on representative problems in both backends and prints a
speedup table.  The fallback is selected per-process via MMSEARCH_NO_NUMBA,
so this script re-executes itself once with the flag set.

Usage:
    python benchmarks/bench_kernels.py            # both backends + table
    python benchmarks/bench_kernels.py --inner    # current backend only
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import numpy as np


def build_problems():
    import random

    from mmsearch.objectives import build_holistic
    from mmsearch.pbpoly import PseudoBooleanPolynomial
    from mmsearch.tensors import FIELD_R, MatMulShape, standard_tensor

    rng = random.Random(0)
    terms = {}
    for _ in range(60):
        vs = tuple(sorted(rng.sample(range(18), rng.randint(1, 4))))
        terms[vs] = terms.get(vs, 0) + rng.randint(-5, 5)
    medium = PseudoBooleanPolynomial(18, terms)
    holistic = build_holistic(
        standard_tensor(MatMulShape(2, 2, 2), FIELD_R), 7
    ).polynomial
    return medium, holistic


def run_benchmarks() -> dict:
    from mmsearch import _kernels
    from mmsearch.solvers import SolverConfig, solve_anneal, solve_exhaustive, solve_tabu

    medium, holistic = build_problems()
    rng = np.random.default_rng(1)
    results: dict[str, float] = {}

    # warm-up so JIT compilation stays out of the timings
    solve_exhaustive(medium, SolverConfig(exhaustive_guard=18))
    solve_anneal(medium, SolverConfig(kind="anneal", restarts=1, sweeps=10))
    solve_tabu(medium, SolverConfig(kind="tabu", restarts=1, sweeps=10))
    holistic.evaluate_many(np.zeros((64, holistic.num_vars), dtype=np.uint8))

    n_eval = 20_000
    batch = rng.integers(0, 2, size=(n_eval, holistic.num_vars), dtype=np.uint8)
    t0 = time.perf_counter()
    holistic.evaluate_many(batch)
    results["eval_batch_20k_x_98k_terms"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    solve_exhaustive(medium, SolverConfig(exhaustive_guard=18))
    results["exhaustive_18_vars"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    solve_anneal(medium, SolverConfig(kind="anneal", seed=3, restarts=8, sweeps=400))
    results["anneal_8x400_sweeps"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    solve_tabu(medium, SolverConfig(kind="tabu", seed=3, restarts=8, sweeps=300))
    results["tabu_8x300_iters"] = time.perf_counter() - t0

    results["numba"] = _kernels.NUMBA_ENABLED
    return results


def main() -> int:
    if "--inner" in sys.argv:
        print(json.dumps(run_benchmarks()))
        return 0

    def run_backend(no_numba: bool) -> dict:
        env = dict(os.environ)
        env["MMSEARCH_NO_NUMBA"] = "1" if no_numba else "0"
        proc = subprocess.run(
            [sys.executable, __file__, "--inner"],
            capture_output=True, text=True, env=env, check=True,
        )
        return json.loads(proc.stdout.strip().splitlines()[-1])

    print("running numba backend ...", file=sys.stderr)
    fast = run_backend(no_numba=False)
    print("running pure numpy/Python fallback ...", file=sys.stderr)
    slow = run_backend(no_numba=True)

    if not fast.pop("numba"):
        print("warning: numba unavailable; comparing fallback to itself", file=sys.stderr)
    slow.pop("numba")

    width = max(len(k) for k in fast)
    print(f"{'kernel':<{width}}  {'numba':>9}  {'fallback':>9}  {'speedup':>8}")
    for key in fast:
        f, s = fast[key], slow[key]
        print(f"{key:<{width}}  {f:>8.3f}s  {s:>8.3f}s  {s / f:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Shared test helpers: reference evaluators and random problem generators.

The reference evaluator is deliberately independent of the package's
polynomial machinery so it can serve as an oracle for it.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from mmsearch.pbpoly import PseudoBooleanPolynomial


def ref_eval(terms: dict, bits) -> float:
    """Direct multilinear evaluation from a raw {varset: coeff} dict."""
    total = 0.0
    for vs, c in terms.items():
        prod = 1
        for v in vs:
            prod *= bits[v]
        total += c * prod
    return total


def brute_force_min(terms: dict, num_vars: int) -> float:
    """Independent exhaustive minimum over all 2^n assignments."""
    best = None
    for bits in itertools.product((0, 1), repeat=num_vars):
        e = ref_eval(terms, bits)
        if best is None or e < best:
            best = e
    return best


def random_poly_terms(
    rng: random.Random,
    num_vars: int,
    n_high_terms: int,
    n_low_terms: int,
    max_degree: int = 4,
) -> dict:
    """Random integer-coefficient terms with controlled degree profile."""
    terms: dict = {}
    for _ in range(n_high_terms):
        d = min(rng.randint(3, max_degree), num_vars)
        vs = tuple(sorted(rng.sample(range(num_vars), d)))
        terms[vs] = terms.get(vs, 0) + rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
    for _ in range(n_low_terms):
        d = rng.randint(0, min(2, num_vars))
        vs = tuple(sorted(rng.sample(range(num_vars), d)))
        terms[vs] = terms.get(vs, 0) + rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
    return {vs: c for vs, c in terms.items() if c != 0}


def random_poly(
    rng: random.Random,
    num_vars: int,
    n_high_terms: int,
    n_low_terms: int,
    max_degree: int = 4,
) -> PseudoBooleanPolynomial:
    return PseudoBooleanPolynomial(
        num_vars, random_poly_terms(rng, num_vars, n_high_terms, n_low_terms, max_degree)
    )


def all_assignments(num_vars: int) -> np.ndarray:
    """All 2^n assignments as a (2^n, n) uint8 matrix; bit v of row r is (r >> v) & 1."""
    idx = np.arange(1 << num_vars, dtype=np.uint64)
    shifts = np.arange(num_vars, dtype=np.uint64)
    return ((idx[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)


@pytest.fixture(scope="session")
def kernels_warm():
    """Trigger JIT compilation once so timed tests measure the algorithms."""
    from mmsearch.pbpoly import PseudoBooleanPolynomial
    from mmsearch.solvers import SolverConfig, solve_anneal, solve_exhaustive, solve_tabu

    poly = PseudoBooleanPolynomial(4, {(0, 1, 2): 1.0, (3,): -1.0, (): 1.0})
    solve_exhaustive(poly, SolverConfig())
    solve_anneal(poly, SolverConfig(kind="anneal", restarts=1, sweeps=5))
    solve_tabu(poly, SolverConfig(kind="tabu", restarts=1, sweeps=5))
    poly.evaluate_many(np.zeros((3, 4), dtype=np.uint8))
    return True

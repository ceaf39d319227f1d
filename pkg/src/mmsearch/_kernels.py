"""Hot numeric kernels: batch evaluation, annealing, tabu and exhaustive search.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy/Python
fallback.  The backend is chosen once at import time: numba is used when it
imports successfully and the environment variable ``MMSEARCH_NO_NUMBA`` is
unset (or "0"/""); otherwise the fallback runs.  Both backends implement the
same algorithms with the same deterministic splitmix64 random stream, and the
integer-valued arithmetic of all built-in objectives makes results exact.

Problems are flattened to CSR-style arrays once per solver call:

    term_coeffs[t]                    coefficient of term t
    term_vars[term_starts[t]:term_starts[t+1]]   sorted variable ids of term t
    var_terms[var_starts[v]:var_starts[v+1]]     ids of terms containing v

The constant term is carried separately as ``offset``.

The solver kernels track, per term, the number of variables currently
assigned 0 (``zeros``).  A term contributes its coefficient exactly when
zeros == 0, so the energy change of flipping variable v is

    a[v] == 1:  -sum of coeffs of terms t containing v with zeros[t] == 0
    a[v] == 0:  +sum of coeffs of terms t containing v with zeros[t] == 1

which makes a sweep O(sum of degrees of touched terms) instead of a full
re-evaluation.

``benchmarks/bench_kernels.py`` compares the two backends.
"""

from __future__ import annotations

import math
import os

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MULT1 = 0xBF58476D1CE4E5B9
_SM_MULT2 = 0x94D049BB133111EB


def _numba_disabled_by_env() -> bool:
    return os.environ.get("MMSEARCH_NO_NUMBA", "0") not in ("", "0")


NUMBA_ENABLED = False
if not _numba_disabled_by_env():
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):
        def deco(func):
            return func

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return deco


class CompiledProblem:
    """Flat-array view of a polynomial, shared by all solver kernels."""

    __slots__ = (
        "num_vars",
        "offset",
        "term_coeffs",
        "term_vars",
        "term_starts",
        "var_terms",
        "var_starts",
    )

    def __init__(self, poly):
        self.num_vars = poly.num_vars
        items = poly.items()
        offset = 0.0
        coeffs = []
        flat_vars = []
        starts = [0]
        per_var: list[list[int]] = [[] for _ in range(poly.num_vars)]
        for vs, c in items:
            if not vs:
                offset += c
                continue
            t = len(coeffs)
            coeffs.append(c)
            flat_vars.extend(vs)
            starts.append(len(flat_vars))
            for v in vs:
                per_var[v].append(t)
        self.offset = offset
        self.term_coeffs = np.asarray(coeffs, dtype=np.float64)
        self.term_vars = np.asarray(flat_vars, dtype=np.int32)
        self.term_starts = np.asarray(starts, dtype=np.int32)
        var_starts = [0]
        var_terms = []
        for v in range(poly.num_vars):
            var_terms.extend(per_var[v])
            var_starts.append(len(var_terms))
        self.var_terms = np.asarray(var_terms, dtype=np.int32)
        self.var_starts = np.asarray(var_starts, dtype=np.int32)


# ---------------------------------------------------------------------------
# splitmix64: identical in both backends, verified by tests/test_kernels.py
# ---------------------------------------------------------------------------


def _py_sm64(state: int) -> tuple[int, int]:
    state = (state + _SM_GAMMA) & _MASK64
    z = state
    z = (z ^ (z >> 30)) * _SM_MULT1 & _MASK64
    z = (z ^ (z >> 27)) * _SM_MULT2 & _MASK64
    z = z ^ (z >> 31)
    return state, z


def _py_stream_state(seed: int, restart: int) -> int:
    base = (seed ^ ((restart + 1) * _SM_GAMMA)) & _MASK64
    _, z = _py_sm64(base)
    return z


def _py_u01(state: int) -> tuple[int, float]:
    state, z = _py_sm64(state)
    return state, (z >> 11) * (2.0**-53)


@njit(cache=True)
def _nb_sm64(state):
    state = state + np.uint64(_SM_GAMMA)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_SM_MULT1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_SM_MULT2)
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True)
def _nb_stream_state(seed, restart):
    base = seed ^ (np.uint64(restart + 1) * np.uint64(_SM_GAMMA))
    _, z = _nb_sm64(base)
    return z


def prng_sequence(seed: int, count: int, backend: str | None = None) -> list[int]:
    """Raw splitmix64 outputs, for cross-backend consistency tests."""
    if backend == "numba" or (backend is None and NUMBA_ENABLED):
        return [int(x) for x in _nb_prng_sequence(np.uint64(seed), count)]
    out = []
    state = seed & _MASK64
    for _ in range(count):
        state, z = _py_sm64(state)
        out.append(z)
    return out


@njit(cache=True)
def _nb_prng_sequence(seed, count):
    out = np.empty(count, dtype=np.uint64)
    state = seed
    for i in range(count):
        state, z = _nb_sm64(state)
        out[i] = z
    return out


# ---------------------------------------------------------------------------
# Batch evaluation over packed assignment blocks
# ---------------------------------------------------------------------------


def pack_assignments(assignments: np.ndarray) -> tuple[np.ndarray, int]:
    """Pack an (N, n) 0/1 matrix into per-variable uint64 bit lanes.

    Returns (packed, N) where packed has shape (n, ceil(N/64)) and bit b of
    packed[v, blk] is assignments[64*blk + b, v].
    """
    a = np.ascontiguousarray(assignments, dtype=np.uint8)
    n_assign, n_vars = a.shape
    bytes_per_var = -(-n_assign // 64) * 8
    packed8 = np.packbits(a.T, axis=1, bitorder="little")
    if packed8.shape[1] < bytes_per_var:
        pad = np.zeros((n_vars, bytes_per_var - packed8.shape[1]), dtype=np.uint8)
        packed8 = np.concatenate([packed8, pad], axis=1)
    packed = np.ascontiguousarray(packed8).view(np.uint64)
    return packed, n_assign


@njit(cache=True)
def _nb_eval_packed(term_coeffs, term_vars, term_starts, packed, offset, n_assign):
    n_blocks = packed.shape[1]
    energies = np.full(n_assign, offset, dtype=np.float64)
    n_terms = term_coeffs.shape[0]
    for t in range(n_terms):
        c = term_coeffs[t]
        lo = term_starts[t]
        hi = term_starts[t + 1]
        for blk in range(n_blocks):
            m = np.uint64(0xFFFFFFFFFFFFFFFF)
            for p in range(lo, hi):
                m &= packed[term_vars[p], blk]
                if m == np.uint64(0):
                    break
            base = blk << 6
            while m != np.uint64(0):
                b = m & (np.uint64(0) - m)
                # count trailing zeros of the isolated bit
                pos = 0
                bb = b
                if bb & np.uint64(0xFFFFFFFF) == np.uint64(0):
                    pos += 32
                    bb >>= np.uint64(32)
                if bb & np.uint64(0xFFFF) == np.uint64(0):
                    pos += 16
                    bb >>= np.uint64(16)
                if bb & np.uint64(0xFF) == np.uint64(0):
                    pos += 8
                    bb >>= np.uint64(8)
                if bb & np.uint64(0xF) == np.uint64(0):
                    pos += 4
                    bb >>= np.uint64(4)
                if bb & np.uint64(0x3) == np.uint64(0):
                    pos += 2
                    bb >>= np.uint64(2)
                if bb & np.uint64(0x1) == np.uint64(0):
                    pos += 1
                idx = base + pos
                if idx < n_assign:
                    energies[idx] += c
                m ^= b
    return energies


def _py_eval_packed(term_coeffs, term_vars, term_starts, packed, offset, n_assign):
    energies = np.full(n_assign, offset, dtype=np.float64)
    n_terms = term_coeffs.shape[0]
    for t in range(n_terms):
        lo, hi = term_starts[t], term_starts[t + 1]
        m = packed[term_vars[lo]]
        for p in range(lo + 1, hi):
            m = m & packed[term_vars[p]]
        bits = np.unpackbits(m.view(np.uint8), bitorder="little")[:n_assign]
        energies += term_coeffs[t] * bits
    return energies


def eval_batch(poly, assignments: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial at every row of a 0/1 assignment matrix."""
    problem = CompiledProblem(poly)
    return eval_batch_compiled(problem, assignments)


def eval_batch_compiled(problem: CompiledProblem, assignments: np.ndarray) -> np.ndarray:
    packed, n_assign = pack_assignments(assignments)
    if n_assign == 0:
        return np.empty(0, dtype=np.float64)
    if problem.num_vars == 0:
        return np.full(n_assign, problem.offset, dtype=np.float64)
    args = (
        problem.term_coeffs,
        problem.term_vars,
        problem.term_starts,
        packed,
        problem.offset,
        n_assign,
    )
    if NUMBA_ENABLED:
        return _nb_eval_packed(*args)
    return _py_eval_packed(*args)


# ---------------------------------------------------------------------------
# Exhaustive search (Gray-code walk / chunked batch evaluation)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_exhaustive(term_coeffs, term_vars, term_starts, var_terms, var_starts, n, offset):
    a = np.zeros(n, dtype=np.uint8)
    n_terms = term_coeffs.shape[0]
    zeros = np.empty(n_terms, dtype=np.int32)
    for t in range(n_terms):
        zeros[t] = term_starts[t + 1] - term_starts[t]
    energy = offset
    best_energy = energy
    best = a.copy()
    total = np.int64(1) << n
    for step in range(1, total):
        # Gray code: flip the lowest set bit position of `step`
        v = 0
        s = step
        while s & 1 == 0:
            v += 1
            s >>= 1
        delta = 0.0
        if a[v] == 1:
            for p in range(var_starts[v], var_starts[v + 1]):
                t = var_terms[p]
                if zeros[t] == 0:
                    delta -= term_coeffs[t]
            a[v] = 0
            for p in range(var_starts[v], var_starts[v + 1]):
                zeros[var_terms[p]] += 1
        else:
            for p in range(var_starts[v], var_starts[v + 1]):
                t = var_terms[p]
                if zeros[t] == 1:
                    delta += term_coeffs[t]
            a[v] = 1
            for p in range(var_starts[v], var_starts[v + 1]):
                zeros[var_terms[p]] -= 1
        energy += delta
        if energy < best_energy:
            best_energy = energy
            best[:] = a
        elif energy == best_energy:
            for i in range(n):
                if a[i] != best[i]:
                    if a[i] < best[i]:
                        best[:] = a
                    break
    return best, best_energy


def _py_exhaustive(problem: CompiledProblem):
    n = problem.num_vars
    total = 1 << n
    chunk = min(total, 1 << 16)
    best_energy = math.inf
    best_rev = None  # bit-reversed index orders assignments lexicographically
    ar = np.arange(chunk, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    for base in range(0, total, chunk):
        idx = ar[: min(chunk, total - base)] + np.uint64(base)
        bits = ((idx[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
        energies = eval_batch_compiled(problem, bits)
        lo = float(energies.min())
        if lo > best_energy:
            continue
        cand = np.nonzero(energies == lo)[0]
        rev = np.zeros(cand.shape[0], dtype=object)
        for i in range(n):
            rev = (rev << 1) | ((idx[cand] >> np.uint64(i)) & np.uint64(1)).astype(int)
        pick = int(rev.min())
        if lo < best_energy or (best_rev is None or pick < best_rev):
            best_energy = lo
            best_rev = pick
    assignment = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        assignment[i] = (best_rev >> (n - 1 - i)) & 1
    return assignment, best_energy


def exhaustive(problem: CompiledProblem):
    """Global minimum; ties broken by lexicographically smallest assignment."""
    n = problem.num_vars
    if n == 0:
        return np.zeros(0, dtype=np.uint8), problem.offset, 1
    if NUMBA_ENABLED:
        best, best_energy = _nb_exhaustive(
            problem.term_coeffs,
            problem.term_vars,
            problem.term_starts,
            problem.var_terms,
            problem.var_starts,
            n,
            problem.offset,
        )
    else:
        best, best_energy = _py_exhaustive(problem)
    return best, float(best_energy), 1 << n


# ---------------------------------------------------------------------------
# Simulated annealing
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_anneal(
    term_coeffs,
    term_vars,
    term_starts,
    var_terms,
    var_starts,
    n,
    offset,
    seed,
    restarts,
    sweeps,
    t0,
    t1,
    init,
    use_init,
):
    n_terms = term_coeffs.shape[0]
    best = np.zeros(n, dtype=np.uint8)
    best_energy = np.inf
    per_restart = np.empty(restarts, dtype=np.float64)
    a = np.zeros(n, dtype=np.uint8)
    zeros = np.zeros(n_terms, dtype=np.int32)
    if sweeps > 1:
        cool = (t1 / t0) ** (1.0 / (sweeps - 1))
    else:
        cool = 1.0
    for r in range(restarts):
        state = _nb_stream_state(seed, r)
        if use_init and r == 0:
            for v in range(n):
                a[v] = init[v]
        else:
            for v in range(n):
                state, z = _nb_sm64(state)
                a[v] = np.uint8(z >> np.uint64(63))
        for t in range(n_terms):
            zc = 0
            for p in range(term_starts[t], term_starts[t + 1]):
                if a[term_vars[p]] == 0:
                    zc += 1
            zeros[t] = zc
        energy = offset
        for t in range(n_terms):
            if zeros[t] == 0:
                energy += term_coeffs[t]
        r_best = energy
        r_best_a = a.copy()
        temp = t0
        for sweep in range(sweeps):
            for v in range(n):
                delta = 0.0
                if a[v] == 1:
                    for p in range(var_starts[v], var_starts[v + 1]):
                        t = var_terms[p]
                        if zeros[t] == 0:
                            delta -= term_coeffs[t]
                else:
                    for p in range(var_starts[v], var_starts[v + 1]):
                        t = var_terms[p]
                        if zeros[t] == 1:
                            delta += term_coeffs[t]
                accept = delta <= 0.0
                if not accept:
                    state, z = _nb_sm64(state)
                    u = (z >> np.uint64(11)) * (2.0**-53)
                    accept = u < np.exp(-delta / temp)
                if accept:
                    if a[v] == 1:
                        a[v] = 0
                        for p in range(var_starts[v], var_starts[v + 1]):
                            zeros[var_terms[p]] += 1
                    else:
                        a[v] = 1
                        for p in range(var_starts[v], var_starts[v + 1]):
                            zeros[var_terms[p]] -= 1
                    energy += delta
                    if energy < r_best:
                        r_best = energy
                        r_best_a[:] = a
            temp *= cool
        per_restart[r] = r_best
        if r_best < best_energy:
            best_energy = r_best
            best[:] = r_best_a
        elif r_best == best_energy:
            for i in range(n):
                if r_best_a[i] != best[i]:
                    if r_best_a[i] < best[i]:
                        best[:] = r_best_a
                    break
    return best, best_energy, per_restart


def _py_anneal(problem, seed, restarts, sweeps, t0, t1, init, use_init):
    tc = problem.term_coeffs
    tv = problem.term_vars
    ts = problem.term_starts
    vt = problem.var_terms
    vs = problem.var_starts
    n = problem.num_vars
    n_terms = tc.shape[0]
    best = np.zeros(n, dtype=np.uint8)
    best_energy = math.inf
    per_restart = np.empty(restarts, dtype=np.float64)
    cool = (t1 / t0) ** (1.0 / (sweeps - 1)) if sweeps > 1 else 1.0
    for r in range(restarts):
        state = _py_stream_state(seed, r)
        a = np.zeros(n, dtype=np.uint8)
        if use_init and r == 0:
            a[:] = init
        else:
            for v in range(n):
                state, z = _py_sm64(state)
                a[v] = z >> 63
        zeros = np.zeros(n_terms, dtype=np.int32)
        for t in range(n_terms):
            zeros[t] = sum(1 for p in range(ts[t], ts[t + 1]) if a[tv[p]] == 0)
        energy = problem.offset + sum(
            tc[t] for t in range(n_terms) if zeros[t] == 0
        )
        r_best = energy
        r_best_a = a.copy()
        temp = t0
        for _ in range(sweeps):
            for v in range(n):
                delta = 0.0
                if a[v] == 1:
                    for p in range(vs[v], vs[v + 1]):
                        t = vt[p]
                        if zeros[t] == 0:
                            delta -= tc[t]
                else:
                    for p in range(vs[v], vs[v + 1]):
                        t = vt[p]
                        if zeros[t] == 1:
                            delta += tc[t]
                accept = delta <= 0.0
                if not accept:
                    state, z = _py_sm64(state)
                    u = (z >> 11) * (2.0**-53)
                    accept = u < np.exp(-delta / temp)
                if accept:
                    if a[v] == 1:
                        a[v] = 0
                        for p in range(vs[v], vs[v + 1]):
                            zeros[vt[p]] += 1
                    else:
                        a[v] = 1
                        for p in range(vs[v], vs[v + 1]):
                            zeros[vt[p]] -= 1
                    energy += delta
                    if energy < r_best:
                        r_best = energy
                        r_best_a = a.copy()
            temp *= cool
        per_restart[r] = r_best
        if r_best < best_energy:
            best_energy = r_best
            best = r_best_a.copy()
        elif r_best == best_energy and list(r_best_a) < list(best):
            best = r_best_a.copy()
    return best, best_energy, per_restart


def anneal(problem, seed, restarts, sweeps, t0, t1, init=None):
    """Geometric-schedule single-flip simulated annealing over restarts."""
    n = problem.num_vars
    if n == 0:
        return np.zeros(0, dtype=np.uint8), problem.offset, 0, np.full(restarts, problem.offset)
    use_init = init is not None
    init_arr = np.ascontiguousarray(init if use_init else np.zeros(n), dtype=np.uint8)
    if NUMBA_ENABLED:
        best, best_energy, per_restart = _nb_anneal(
            problem.term_coeffs,
            problem.term_vars,
            problem.term_starts,
            problem.var_terms,
            problem.var_starts,
            n,
            problem.offset,
            np.uint64(seed),
            restarts,
            sweeps,
            float(t0),
            float(t1),
            init_arr,
            use_init,
        )
    else:
        best, best_energy, per_restart = _py_anneal(
            problem, seed, restarts, sweeps, float(t0), float(t1), init_arr, use_init
        )
    return best, float(best_energy), restarts * sweeps * n, per_restart


# ---------------------------------------------------------------------------
# Tabu search (steepest admissible single flip)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_tabu(
    term_coeffs,
    term_vars,
    term_starts,
    var_terms,
    var_starts,
    n,
    offset,
    seed,
    restarts,
    iters,
    tenure,
    init,
    use_init,
):
    n_terms = term_coeffs.shape[0]
    best = np.zeros(n, dtype=np.uint8)
    best_energy = np.inf
    per_restart = np.empty(restarts, dtype=np.float64)
    a = np.zeros(n, dtype=np.uint8)
    zeros = np.zeros(n_terms, dtype=np.int32)
    tabu_until = np.zeros(n, dtype=np.int64)
    for r in range(restarts):
        state = _nb_stream_state(seed, r)
        if use_init and r == 0:
            for v in range(n):
                a[v] = init[v]
        else:
            for v in range(n):
                state, z = _nb_sm64(state)
                a[v] = np.uint8(z >> np.uint64(63))
        for t in range(n_terms):
            zc = 0
            for p in range(term_starts[t], term_starts[t + 1]):
                if a[term_vars[p]] == 0:
                    zc += 1
            zeros[t] = zc
        energy = offset
        for t in range(n_terms):
            if zeros[t] == 0:
                energy += term_coeffs[t]
        r_best = energy
        r_best_a = a.copy()
        tabu_until[:] = 0
        for it in range(iters):
            chosen = -1
            chosen_delta = np.inf
            for v in range(n):
                delta = 0.0
                if a[v] == 1:
                    for p in range(var_starts[v], var_starts[v + 1]):
                        t = var_terms[p]
                        if zeros[t] == 0:
                            delta -= term_coeffs[t]
                else:
                    for p in range(var_starts[v], var_starts[v + 1]):
                        t = var_terms[p]
                        if zeros[t] == 1:
                            delta += term_coeffs[t]
                admissible = it >= tabu_until[v] or energy + delta < r_best
                if admissible and delta < chosen_delta:
                    chosen = v
                    chosen_delta = delta
            if chosen < 0:
                break
            v = chosen
            if a[v] == 1:
                a[v] = 0
                for p in range(var_starts[v], var_starts[v + 1]):
                    zeros[var_terms[p]] += 1
            else:
                a[v] = 1
                for p in range(var_starts[v], var_starts[v + 1]):
                    zeros[var_terms[p]] -= 1
            energy += chosen_delta
            tabu_until[v] = it + tenure
            if energy < r_best:
                r_best = energy
                r_best_a[:] = a
        per_restart[r] = r_best
        if r_best < best_energy:
            best_energy = r_best
            best[:] = r_best_a
        elif r_best == best_energy:
            for i in range(n):
                if r_best_a[i] != best[i]:
                    if r_best_a[i] < best[i]:
                        best[:] = r_best_a
                    break
    return best, best_energy, per_restart


def _py_tabu(problem, seed, restarts, iters, tenure, init, use_init):
    tc = problem.term_coeffs
    tv = problem.term_vars
    ts = problem.term_starts
    vt = problem.var_terms
    vs = problem.var_starts
    n = problem.num_vars
    n_terms = tc.shape[0]
    best = np.zeros(n, dtype=np.uint8)
    best_energy = math.inf
    per_restart = np.empty(restarts, dtype=np.float64)
    for r in range(restarts):
        state = _py_stream_state(seed, r)
        a = np.zeros(n, dtype=np.uint8)
        if use_init and r == 0:
            a[:] = init
        else:
            for v in range(n):
                state, z = _py_sm64(state)
                a[v] = z >> 63
        zeros = np.zeros(n_terms, dtype=np.int32)
        for t in range(n_terms):
            zeros[t] = sum(1 for p in range(ts[t], ts[t + 1]) if a[tv[p]] == 0)
        energy = problem.offset + sum(tc[t] for t in range(n_terms) if zeros[t] == 0)
        r_best = energy
        r_best_a = a.copy()
        tabu_until = np.zeros(n, dtype=np.int64)
        for it in range(iters):
            chosen = -1
            chosen_delta = math.inf
            for v in range(n):
                delta = 0.0
                if a[v] == 1:
                    for p in range(vs[v], vs[v + 1]):
                        t = vt[p]
                        if zeros[t] == 0:
                            delta -= tc[t]
                else:
                    for p in range(vs[v], vs[v + 1]):
                        t = vt[p]
                        if zeros[t] == 1:
                            delta += tc[t]
                admissible = it >= tabu_until[v] or energy + delta < r_best
                if admissible and delta < chosen_delta:
                    chosen = v
                    chosen_delta = delta
            if chosen < 0:
                break
            v = chosen
            if a[v] == 1:
                a[v] = 0
                for p in range(vs[v], vs[v + 1]):
                    zeros[vt[p]] += 1
            else:
                a[v] = 1
                for p in range(vs[v], vs[v + 1]):
                    zeros[vt[p]] -= 1
            energy += chosen_delta
            tabu_until[v] = it + tenure
            if energy < r_best:
                r_best = energy
                r_best_a = a.copy()
        per_restart[r] = r_best
        if r_best < best_energy:
            best_energy = r_best
            best = r_best_a.copy()
        elif r_best == best_energy and list(r_best_a) < list(best):
            best = r_best_a.copy()
    return best, best_energy, per_restart


def tabu(problem, seed, restarts, iters, tenure, init=None):
    """Tabu search: per iteration, best non-tabu flip (aspiration allowed)."""
    n = problem.num_vars
    if n == 0:
        return np.zeros(0, dtype=np.uint8), problem.offset, 0, np.full(restarts, problem.offset)
    use_init = init is not None
    init_arr = np.ascontiguousarray(init if use_init else np.zeros(n), dtype=np.uint8)
    if NUMBA_ENABLED:
        best, best_energy, per_restart = _nb_tabu(
            problem.term_coeffs,
            problem.term_vars,
            problem.term_starts,
            problem.var_terms,
            problem.var_starts,
            n,
            problem.offset,
            np.uint64(seed),
            restarts,
            iters,
            tenure,
            init_arr,
            use_init,
        )
    else:
        best, best_energy, per_restart = _py_tabu(
            problem, seed, restarts, iters, tenure, init_arr, use_init
        )
    return best, float(best_energy), restarts * iters * n, per_restart

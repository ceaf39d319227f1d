"""Solver front end: exhaustive search, simulated annealing and tabu search.

All three minimize a PseudoBooleanPolynomial directly; higher-order
objectives can be solved natively, quadratization is only needed when
exporting to quadratic-only external solvers.  Heuristic solvers are fully
deterministic given (problem, config): every random draw comes from a
splitmix64 stream derived from the seed and the restart index.

The reported energy of a result is always an exact re-evaluation of the
returned assignment, independent of the kernel's incremental bookkeeping.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .pbpoly import PseudoBooleanPolynomial

SOLVER_KINDS = ("exhaustive", "anneal", "tabu")


class CapacityError(ValueError):
    """Problem too large for the requested solver."""


@dataclass(frozen=True)
class SolverConfig:
    kind: str = "exhaustive"
    seed: int = 0
    restarts: int = 8
    sweeps: int = 200
    t_initial: float = 8.0
    t_final: float = 0.05
    tabu_tenure: int = 8
    exhaustive_guard: int = 26

    def __post_init__(self):
        if self.kind not in SOLVER_KINDS:
            raise ValueError(f"unknown solver kind {self.kind!r}; use one of {SOLVER_KINDS}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if not (self.t_initial > 0 and self.t_final > 0):
            raise ValueError("temperatures must be positive")
        if self.t_initial < self.t_final:
            raise ValueError("t_initial must be >= t_final")
        if self.tabu_tenure < 1:
            raise ValueError("tabu tenure must be >= 1")
        if self.exhaustive_guard < 1:
            raise ValueError("exhaustive guard must be >= 1")

    def reseeded(self, stream: int) -> "SolverConfig":
        """Derived config with a decorrelated seed; used for solve retries."""
        return replace(self, seed=_kernels._py_stream_state(self.seed, stream))

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "restarts": self.restarts,
            "sweeps": self.sweeps,
            "t_initial": self.t_initial,
            "t_final": self.t_final,
            "tabu_tenure": self.tabu_tenure,
            "exhaustive_guard": self.exhaustive_guard,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SolverConfig":
        return cls(**{k: obj[k] for k in obj})


@dataclass
class SolverResult:
    assignment: np.ndarray
    energy: float
    samples_evaluated: int
    wall_time_s: float
    per_restart: list[float] = field(default_factory=list)
    solver: str = ""
    seed: int = 0

    def assignment_string(self) -> str:
        return "".join(str(int(b)) for b in self.assignment)

    def to_json_obj(self) -> dict:
        e = self.energy
        return {
            "energy": int(e) if float(e).is_integer() else e,
            "assignment": self.assignment_string(),
            "solver": self.solver,
            "seed": self.seed,
            "samples_evaluated": self.samples_evaluated,
            "wall_time_s": self.wall_time_s,
            "per_restart": list(self.per_restart),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def energy(problem: PseudoBooleanPolynomial, assignment) -> float:
    """Exact evaluation shared by all solvers for result validation."""
    return problem.evaluate(assignment)


def solve_exhaustive(problem: PseudoBooleanPolynomial, config: SolverConfig) -> SolverResult:
    """Global minimum; among ties, the lexicographically smallest assignment."""
    if problem.num_vars > config.exhaustive_guard:
        raise CapacityError(
            f"exhaustive search refused: {problem.num_vars} variables exceeds "
            f"guard {config.exhaustive_guard}"
        )
    t0 = time.perf_counter()
    compiled = _kernels.CompiledProblem(problem)
    best, _, samples = _kernels.exhaustive(compiled)
    e = energy(problem, best)
    return SolverResult(
        assignment=best,
        energy=e,
        samples_evaluated=samples,
        wall_time_s=time.perf_counter() - t0,
        per_restart=[e],
        solver="exhaustive",
        seed=config.seed,
    )


def solve_anneal(
    problem: PseudoBooleanPolynomial, config: SolverConfig, init=None
) -> SolverResult:
    """Simulated annealing with a geometric schedule over single-bit flips."""
    t0 = time.perf_counter()
    compiled = _kernels.CompiledProblem(problem)
    best, _, samples, per_restart = _kernels.anneal(
        compiled,
        config.seed,
        config.restarts,
        config.sweeps,
        config.t_initial,
        config.t_final,
        init=init,
    )
    return SolverResult(
        assignment=best,
        energy=energy(problem, best),
        samples_evaluated=samples,
        wall_time_s=time.perf_counter() - t0,
        per_restart=[float(x) for x in per_restart],
        solver="anneal",
        seed=config.seed,
    )


def solve_tabu(
    problem: PseudoBooleanPolynomial, config: SolverConfig, init=None
) -> SolverResult:
    """Greedy tabu local search; sweeps = single-flip iterations per restart."""
    t0 = time.perf_counter()
    compiled = _kernels.CompiledProblem(problem)
    best, _, samples, per_restart = _kernels.tabu(
        compiled,
        config.seed,
        config.restarts,
        config.sweeps,
        config.tabu_tenure,
        init=init,
    )
    return SolverResult(
        assignment=best,
        energy=energy(problem, best),
        samples_evaluated=samples,
        wall_time_s=time.perf_counter() - t0,
        per_restart=[float(x) for x in per_restart],
        solver="tabu",
        seed=config.seed,
    )


def solve(problem: PseudoBooleanPolynomial, config: SolverConfig, init=None) -> SolverResult:
    if config.kind == "exhaustive":
        return solve_exhaustive(problem, config)
    if config.kind == "anneal":
        return solve_anneal(problem, config, init=init)
    return solve_tabu(problem, config, init=init)

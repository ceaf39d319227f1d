import random
import statistics

import numpy as np
import pytest

from conftest import brute_force_min, random_poly
from mmsearch.pbpoly import PseudoBooleanPolynomial
from mmsearch.solvers import (
    CapacityError,
    SolverConfig,
    energy,
    solve,
    solve_anneal,
    solve_exhaustive,
    solve_tabu,
)

P = PseudoBooleanPolynomial


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(kind="magic")
        with pytest.raises(ValueError):
            SolverConfig(restarts=0)
        with pytest.raises(ValueError):
            SolverConfig(t_initial=0.5, t_final=1.0)

    def test_json_round_trip(self):
        cfg = SolverConfig(kind="anneal", seed=5, restarts=3, sweeps=77)
        assert SolverConfig.from_json_obj(cfg.to_json_obj()) == cfg


class TestExhaustive:
    def test_sum_of_vars(self):
        poly = P(5, {(i,): 1.0 for i in range(5)})
        r = solve_exhaustive(poly, SolverConfig())
        assert r.assignment.tolist() == [0] * 5
        assert r.energy == 0.0
        assert r.samples_evaluated == 32

    def test_one_minus_cubic(self):
        poly = P(3, {(): 1.0, (0, 1, 2): -1.0})
        r = solve_exhaustive(poly, SolverConfig())
        assert r.assignment.tolist() == [1, 1, 1]
        assert r.energy == 0.0

    def test_capacity_guard(self):
        poly = P(30, {(0,): 1.0})
        with pytest.raises(CapacityError):
            solve_exhaustive(poly, SolverConfig())
        # guard is configurable
        r = solve_exhaustive(P(8, {(0,): 1.0}), SolverConfig(exhaustive_guard=8))
        assert r.energy == 0.0

    def test_true_oracle_against_reference(self):
        rng = random.Random(555)
        for _ in range(15):
            nv = rng.randint(4, 12)
            poly = random_poly(rng, nv, n_high_terms=4, n_low_terms=5)
            r = solve_exhaustive(poly, SolverConfig())
            assert r.energy == brute_force_min(poly.terms_dict(), nv)


class TestAnneal:
    def test_matches_exhaustive_on_quadratic(self):
        rng = random.Random(8)
        poly = random_poly(rng, 12, n_high_terms=0, n_low_terms=20, max_degree=2)
        ex = solve_exhaustive(poly, SolverConfig())
        an = solve_anneal(poly, SolverConfig(kind="anneal", seed=1, restarts=24, sweeps=250))
        assert an.energy == ex.energy

    def test_deterministic(self):
        rng = random.Random(9)
        poly = random_poly(rng, 10, n_high_terms=4, n_low_terms=4)
        cfg = SolverConfig(kind="anneal", seed=12, restarts=4, sweeps=60)
        r1 = solve_anneal(poly, cfg)
        r2 = solve_anneal(poly, cfg)
        assert r1.energy == r2.energy
        assert np.array_equal(r1.assignment, r2.assignment)
        assert r1.per_restart == r2.per_restart

    def test_warm_start_respected(self):
        # a warm start at the optimum can only stay optimal
        poly = P(6, {(i,): 1.0 for i in range(6)})
        init = np.zeros(6, dtype=np.uint8)
        r = solve_anneal(poly, SolverConfig(kind="anneal", seed=0, restarts=1, sweeps=30,
                                            t_initial=0.2, t_final=0.01), init=init)
        assert r.energy == 0.0


class TestTabu:
    def test_single_variable(self):
        poly = P(1, {(): 1.0, (0,): -1.0})
        r = solve_tabu(poly, SolverConfig(kind="tabu", restarts=1, sweeps=5))
        assert r.assignment.tolist() == [1]
        assert r.energy == 0.0

    def test_constant_plateau_terminates(self):
        poly = P(4, {(): 7.0})
        r = solve_tabu(poly, SolverConfig(kind="tabu", restarts=2, sweeps=20))
        assert r.energy == 7.0

    def test_step_objective_hit_rate(self, kernels_warm):
        # 12-variable step objective: tabu matches the exhaustive optimum in
        # at least 90% of seeded runs
        from mmsearch.objectives import build_step_f2
        from mmsearch.pipeline import strassen_fixture
        from mmsearch.tensors import FIELD_F2, MatMulShape, standard_tensor

        fx = strassen_fixture()
        target = standard_tensor(MatMulShape(2, 2, 2), FIELD_F2)
        source = fx.hp.tensor.to_field(FIELD_F2)
        obj = build_step_f2(target, source)
        best = solve_exhaustive(obj.polynomial, SolverConfig()).energy
        hits = 0
        for seed in range(100):
            r = solve_tabu(obj.polynomial,
                           SolverConfig(kind="tabu", seed=seed, restarts=4, sweeps=60))
            hits += r.energy == best
        assert hits >= 90, f"only {hits}/100 seeded tabu runs reached the optimum"


class TestCrossSolverInvariants:
    def test_heuristics_never_beat_exhaustive(self, kernels_warm):
        rng = random.Random(77)
        for trial in range(100):
            nv = rng.randint(4, 14)
            poly = random_poly(rng, nv, n_high_terms=rng.randint(0, 5),
                               n_low_terms=rng.randint(1, 6))
            ex = solve_exhaustive(poly, SolverConfig())
            an = solve_anneal(poly, SolverConfig(kind="anneal", seed=trial, restarts=2, sweeps=30))
            tb = solve_tabu(poly, SolverConfig(kind="tabu", seed=trial, restarts=2, sweeps=30))
            assert an.energy >= ex.energy
            assert tb.energy >= ex.energy

    def test_energy_equals_reevaluation(self):
        rng = random.Random(31)
        for trial in range(10):
            poly = random_poly(rng, 9, n_high_terms=3, n_low_terms=4)
            for r in (
                solve_exhaustive(poly, SolverConfig()),
                solve_anneal(poly, SolverConfig(kind="anneal", seed=trial, restarts=2, sweeps=25)),
                solve_tabu(poly, SolverConfig(kind="tabu", seed=trial, restarts=2, sweeps=25)),
            ):
                assert r.energy == energy(poly, r.assignment)
                assert r.energy == poly.evaluate(r.assignment)

    @pytest.mark.parametrize("solver,kind", [(solve_anneal, "anneal"), (solve_tabu, "tabu")])
    def test_budget_monotone_in_expectation(self, solver, kind):
        # doubling restarts never worsens the median best energy
        rng = random.Random(40)
        poly = random_poly(rng, 12, n_high_terms=5, n_low_terms=5)
        med = {}
        for restarts in (1, 2, 4):
            energies = [
                solver(poly, SolverConfig(kind=kind, seed=s,
                                          restarts=restarts, sweeps=25)).energy
                for s in range(20)
            ]
            med[restarts] = statistics.median(energies)
        assert med[2] <= med[1]
        assert med[4] <= med[2]

    def test_dispatch(self):
        poly = P(3, {(0,): -1.0})
        for kind in ("exhaustive", "anneal", "tabu"):
            r = solve(poly, SolverConfig(kind=kind, restarts=2, sweeps=20))
            assert r.solver == kind
            assert r.energy == -1.0

    def test_result_json(self):
        poly = P(3, {(0,): -1.0})
        obj = solve(poly, SolverConfig()).to_json_obj()
        assert obj["energy"] == -1
        assert obj["assignment"] == "100"
        assert obj["solver"] == "exhaustive"
        assert obj["seed"] == 0

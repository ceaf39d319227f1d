import itertools
import random

import numpy as np
import pytest

from conftest import all_assignments, brute_force_min, random_poly, ref_eval
from mmsearch.pbpoly import PseudoBooleanPolynomial
from mmsearch.quadratize import (
    QuadraticModel,
    auto_penalty_weight,
    encode_integer_log,
    encode_integer_ternary_pair,
    parse_qubo_text,
    reduce_min_selection,
    reduce_substitution,
    to_qubo_text,
)

P = PseudoBooleanPolynomial


def qubo_min_per_original(qm: QuadraticModel) -> np.ndarray:
    """Independent oracle: min over ancillas for every original assignment.

    Enumerates the full joint space with ancillas as the high bits and takes
    the minimum along the ancilla axis; no reducer internals involved.
    """
    n_orig = qm.num_original
    n_total = qm.poly.num_vars
    energies = qm.poly.evaluate_many(all_assignments(n_total))
    return energies.reshape(1 << (n_total - n_orig), 1 << n_orig).min(axis=0)


def hubo_values(poly: P) -> np.ndarray:
    return poly.evaluate_many(all_assignments(poly.num_vars))


class TestMinSelectionGadgets:
    @pytest.mark.parametrize("degree", [3, 4, 5, 6, 7])
    @pytest.mark.parametrize("coeff", [1, -1, 3, -4])
    def test_single_monomial_exact(self, degree, coeff):
        poly = P(degree, {tuple(range(degree)): float(coeff)})
        qm, report = reduce_min_selection(poly)
        assert qm.poly.degree() <= 2
        expected_anc = 1 if coeff < 0 else (degree - 1) // 2
        assert report.ancilla_count == expected_anc
        per_a = qubo_min_per_original(qm)
        want = hubo_values(poly)
        assert np.array_equal(per_a, want)

    def test_positive_cubic_spec_values(self):
        # value after minimizing the ancilla: 1 at (1,1,1), 0 at (1,1,0)
        poly = P(3, {(0, 1, 2): 1.0})
        qm, _ = reduce_min_selection(poly)
        anc = [a for a in range(3, qm.poly.num_vars)]
        val = lambda bits: min(
            qm.poly.evaluate(list(bits) + list(w))
            for w in itertools.product((0, 1), repeat=len(anc))
        )
        assert val((1, 1, 1)) == 1.0
        assert val((1, 1, 0)) == 0.0

    def test_already_quadratic_unchanged(self):
        poly = P(3, {(0, 1): 2.0, (2,): -1.0, (): 1.0})
        qm, report = reduce_min_selection(poly)
        assert report.ancilla_count == 0
        assert qm.poly == poly

    def test_random_degree4_matches_brute_force(self):
        rng = random.Random(17)
        for _ in range(10):
            poly = random_poly(rng, 8, n_high_terms=4, n_low_terms=4)
            if poly.degree() < 3:
                continue
            qm, _ = reduce_min_selection(poly)
            assert qubo_min_per_original(qm).min() == brute_force_min(
                poly.terms_dict(), 8
            )

    def test_pure_cubic_ancilla_bound(self):
        rng = random.Random(23)
        for _ in range(5):
            terms = {}
            t = rng.randint(1, 8)
            while len(terms) < t:
                vs = tuple(sorted(rng.sample(range(9), 3)))
                terms[vs] = rng.choice([-3, -1, 1, 2])
            poly = P(9, terms)
            _, report = reduce_min_selection(poly)
            assert report.ancilla_count <= len(terms)

    def test_no_ancilla_coupling(self):
        # gadget ancillas never interact with each other
        rng = random.Random(4)
        poly = random_poly(rng, 8, n_high_terms=5, n_low_terms=3)
        qm, _ = reduce_min_selection(poly)
        for vs, _ in qm.poly.items():
            assert sum(1 for v in vs if v >= qm.num_original) <= 1


class TestSubstitution:
    def test_cubic_with_explicit_penalty(self):
        # w tracks x0*x1: penalty-free rows reproduce the product exactly
        poly = P(3, {(0, 1, 2): 1.0})
        qm, report = reduce_substitution(poly, penalty_weight=2.0)
        assert report.ancilla_count == 1
        assert report.penalty_weight == 2.0
        w = 3
        (u, v) = qm.ancilla_map[w]
        assert (u, v) == (0, 1)
        for bits in itertools.product((0, 1), repeat=3):
            consistent = list(bits) + [bits[u] * bits[v]]
            assert qm.poly.evaluate(consistent) == ref_eval({(0, 1, 2): 1.0}, bits)

    def test_penalty_value_when_violated(self):
        # x0 = x1 = 1 with w = 0 incurs penalty weight * P, P = 1
        poly = P(3, {(0, 1, 2): 1.0})
        qm, _ = reduce_substitution(poly, penalty_weight=2.0)
        violated = qm.poly.evaluate([1, 1, 0, 0])
        consistent = qm.poly.evaluate([1, 1, 0, 1])
        assert violated - consistent == 2.0  # M * P(1,1;0) = 2 * 1

    def test_penalty_weight_validation(self):
        poly = P(3, {(0, 1, 2): 1.0})
        with pytest.raises(ValueError):
            reduce_substitution(poly, penalty_weight=1.0)
        with pytest.raises(ValueError):
            reduce_substitution(poly, penalty_weight=0.5)

    def test_degree5_ancilla_budget(self):
        # each substitution lowers the term degree by one: at most 3 ancillas
        poly = P(5, {(0, 1, 2, 3, 4): 1.0})
        qm, report = reduce_substitution(poly)
        assert qm.poly.degree() <= 2
        assert report.ancilla_count <= 3

    def test_most_frequent_pair_chosen_first(self):
        # pair (0,1) occurs in two high-degree terms, (2,3) in one
        poly = P(5, {(0, 1, 2): 1.0, (0, 1, 3): 1.0, (2, 3, 4): 1.0})
        qm, _ = reduce_substitution(poly)
        first_anc = min(qm.ancilla_map)
        assert qm.ancilla_map[first_anc] == (0, 1)

    def test_deterministic(self):
        rng = random.Random(31)
        poly = random_poly(rng, 10, n_high_terms=6, n_low_terms=4)
        a1, _ = reduce_substitution(poly)
        a2, _ = reduce_substitution(poly)
        assert a1.poly == a2.poly
        assert a1.ancilla_map == a2.ancilla_map

    def test_auto_penalty_dominates(self):
        poly = P(4, {(0, 1, 2): 5.0, (1, 2, 3): -5.0, (0,): 2.0})
        assert auto_penalty_weight(poly) == 13.0


class TestMinPreservationBothReducers:
    @pytest.mark.parametrize("reducer", [reduce_min_selection, reduce_substitution])
    def test_min_and_pointwise_preservation(self, reducer):
        rng = random.Random(101)
        checked = 0
        while checked < 40:
            nv = rng.randint(6, 10)
            poly = random_poly(rng, nv, n_high_terms=rng.randint(1, 4),
                               n_low_terms=rng.randint(0, 5))
            if poly.degree() < 3:
                continue
            qm, report = reducer(poly)
            if qm.poly.num_vars > 22:
                continue
            per_a = qubo_min_per_original(qm)
            want = hubo_values(poly)
            assert np.array_equal(per_a, want), f"pointwise mismatch ({report})"
            checked += 1

    @pytest.mark.parametrize("reducer", [reduce_min_selection, reduce_substitution])
    def test_argmin_projection_small(self, reducer):
        # full enumeration incl. argmin sets on tiny instances
        rng = random.Random(55)
        for _ in range(8):
            poly = random_poly(rng, 5, n_high_terms=2, n_low_terms=2)
            if poly.degree() < 3:
                continue
            qm, _ = reducer(poly)
            total = qm.poly.num_vars
            energies = qm.poly.evaluate_many(all_assignments(total))
            hubo = hubo_values(poly)
            assert energies.min() == hubo.min()
            hubo_argmins = {i for i, e in enumerate(hubo) if e == hubo.min()}
            mask = (1 << qm.num_original) - 1
            for idx in np.nonzero(energies == energies.min())[0]:
                assert int(idx) & mask in hubo_argmins

    @pytest.mark.parametrize("reducer", [reduce_min_selection, reduce_substitution])
    def test_resolve_ancillas_reaches_pointwise_min(self, reducer):
        rng = random.Random(77)
        for _ in range(6):
            poly = random_poly(rng, 7, n_high_terms=3, n_low_terms=3)
            if poly.degree() < 3:
                continue
            qm, _ = reducer(poly)
            for bits in itertools.product((0, 1), repeat=7):
                full = qm.resolve_ancillas(list(bits))
                assert qm.poly.evaluate(full) == poly.evaluate(bits)


class TestIntegerEncodings:
    def test_log_n4(self):
        enc = encode_integer_log(4)
        assert enc.weights == (1, 2, 1)
        assert max(enc.values()) == 4
        assert enc.values() == [0, 1, 2, 3, 4]

    def test_log_n2(self):
        enc = encode_integer_log(2)
        assert enc.weights == (1, 1)
        assert enc.values() == [0, 1, 2]

    def test_log_n5_centered(self):
        enc = encode_integer_log(5, offset=-2)
        assert enc.weights == (1, 2, 2)
        assert set(enc.values()) >= {-2, -1, 0, 1, 2}

    def test_log_requires_n_at_least_2(self):
        with pytest.raises(ValueError):
            encode_integer_log(1)

    def test_log_encode_round_trip(self):
        for n in (2, 3, 4, 5, 6, 7, 9):
            enc = encode_integer_log(n, offset=-1)
            for value in range(-1, n):
                bits = enc.encode(value)
                assert enc.decode(bits) == value

    def test_ternary_decode_table(self):
        enc = encode_integer_ternary_pair()
        assert enc.decode((1, 0)) == 1
        assert enc.decode((0, 1)) == -1
        assert enc.decode((1, 1)) == 0
        assert enc.decode((0, 0)) == 0

    def test_ternary_surjective_with_double_zero(self):
        enc = encode_integer_ternary_pair()
        decoded = [enc.decode(bits) for bits in itertools.product((0, 1), repeat=2)]
        assert set(decoded) == {-1, 0, 1}
        assert decoded.count(0) == 2


class TestQuboText:
    def test_exact_format(self):
        poly = P(3, {(): 1.5, (0,): 2.0, (2,): -1.0, (0, 1): 3.0})
        qm = QuadraticModel(poly, 3, {}, "min-selection")
        text = to_qubo_text(qm, comment="test model")
        assert text.splitlines() == [
            "c test model",
            "p qubo 0 3 2 1",
            "c offset 1.5",
            "0 0 2",
            "0 1 3",
            "2 2 -1",
        ]

    def test_round_trip(self):
        rng = random.Random(13)
        poly = random_poly(rng, 9, n_high_terms=4, n_low_terms=5)
        qm, _ = reduce_min_selection(poly)
        parsed, nodes = parse_qubo_text(to_qubo_text(qm))
        assert parsed.terms_dict() == {
            vs: c for vs, c in qm.poly.terms_dict().items()
        }

    def test_lines_sorted(self):
        poly = P(4, {(2, 3): 1.0, (0,): 1.0, (1, 3): -2.0, (1,): 4.0})
        qm = QuadraticModel(poly, 4, {}, "substitution")
        lines = to_qubo_text(qm).splitlines()[3:]
        keys = [tuple(map(int, ln.split()[:2])) for ln in lines]
        assert keys == sorted(keys)

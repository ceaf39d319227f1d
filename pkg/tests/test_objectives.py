import random

import numpy as np
import pytest

from mmsearch.objectives import (
    build_holistic,
    build_step_f2,
    build_step_real,
    decode_assignment,
    encode_holistic_assignment,
    encode_step_assignment,
)
from mmsearch.quadratize import encode_integer_log, encode_integer_ternary_pair
from mmsearch.tensors import (
    FIELD_F2,
    FIELD_R,
    FieldError,
    MatMulShape,
    RankOneTriple,
    Tensor3,
    hamming_distance,
    standard_tensor,
    subtract,
)

S222 = MatMulShape(2, 2, 2)
S232 = MatMulShape(2, 3, 2)


def random_f2_tensor(rng, shape):
    return Tensor3(shape, rng.integers(0, 2, size=shape.dims), FIELD_F2)


def f2_step_oracle(target, source, obj, assignment):
    """Distance after applying the decoded rank-one update, via tensor ops."""
    triple = decode_assignment(obj, assignment)
    return hamming_distance(target, subtract(source, triple, FIELD_F2))


class TestStepF2:
    def test_equal_tensors_gives_pure_monomials(self):
        t = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(t, t)
        nm, mp, pn = S222.dims
        assert obj.num_vars == nm + mp + pn == 12
        assert obj.polynomial.coefficient(()) == 0.0
        assert obj.polynomial.num_terms() == nm * mp * pn
        assert obj.polynomial.evaluate(np.zeros(12, dtype=np.uint8)) == 0.0

    def test_zero_target_standard_source(self):
        target = Tensor3.zeros(S222, FIELD_F2)
        source = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(target, source)
        assert obj.polynomial.coefficient(()) == 8.0
        triple = RankOneTriple([1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1])
        a = encode_step_assignment(obj, triple)
        want = hamming_distance(target, subtract(source, triple, FIELD_F2))
        # the rank-one overlaps the standard tensor in 2 of its 8 cells, so
        # the mod-2 subtraction leaves 6 + 6 = 12 differing cells
        assert want == 12
        assert obj.polynomial.evaluate(a) == want

    def test_oracle_equivalence_exhaustive_222(self):
        rng = np.random.default_rng(3)
        target = random_f2_tensor(rng, S222)
        source = random_f2_tensor(rng, S222)
        obj = build_step_f2(target, source)
        from conftest import all_assignments

        assignments = all_assignments(12)
        values = obj.polynomial.evaluate_many(assignments)
        for i in range(0, 4096, 37):  # spot-check a spread of assignments
            assert values[i] == f2_step_oracle(target, source, obj, assignments[i])

    def test_oracle_equivalence_random_232(self):
        rng = np.random.default_rng(4)
        target = random_f2_tensor(rng, S232)
        source = random_f2_tensor(rng, S232)
        obj = build_step_f2(target, source)
        for _ in range(200):
            a = rng.integers(0, 2, size=obj.num_vars, dtype=np.uint8)
            assert obj.polynomial.evaluate(a) == f2_step_oracle(target, source, obj, a)

    def test_field_mismatch_rejected(self):
        with pytest.raises(FieldError):
            build_step_f2(standard_tensor(S222, FIELD_R), standard_tensor(S222, FIELD_F2))

    def test_registry_names(self):
        t = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(t, t)
        assert obj.registry.name_of(0) == "x[0]"
        assert obj.registry.name_of(4) == "y[0]"
        assert obj.registry.name_of(8) == "z[0]"


class TestStepReal:
    def test_equal_tensors_zero_at_origin(self):
        t = standard_tensor(S222, FIELD_R)
        obj = build_step_real(t, t)
        assert obj.num_vars == 24  # 2 bits per integer component
        assert obj.polynomial.evaluate(np.zeros(24, dtype=np.uint8)) == 0.0

    def test_single_entry_residual_cancels(self):
        shape = MatMulShape(1, 1, 1)
        target = Tensor3.zeros(shape, FIELD_R)
        source = Tensor3(shape, np.ones((1, 1, 1)), FIELD_R)
        # T - S = -1; decoded x*y*z = 1 makes the residual (-1 + 1)^2 = 0
        obj = build_step_real(target, source)
        a = encode_step_assignment(obj, RankOneTriple([1], [1], [1]))
        assert obj.polynomial.evaluate(a) == 0.0

    @pytest.mark.parametrize("encoding", [encode_integer_ternary_pair(),
                                          encode_integer_log(3, offset=-1)])
    def test_oracle_equivalence_random(self, encoding):
        rng = np.random.default_rng(9)
        shape = S222
        target = Tensor3(shape, rng.integers(-1, 2, size=shape.dims), FIELD_R)
        source = Tensor3(shape, rng.integers(-1, 2, size=shape.dims), FIELD_R)
        obj = build_step_real(target, source, encoding)
        for _ in range(100):
            a = rng.integers(0, 2, size=obj.num_vars, dtype=np.uint8)
            triple = decode_assignment(obj, a)
            residual = (
                target.data - source.data
                + np.einsum("i,j,k->ijk", triple.x, triple.y, triple.z)
            )
            assert obj.polynomial.evaluate(a) == (residual**2).sum()

    def test_nonnegative_sampled(self):
        rng = np.random.default_rng(12)
        target = Tensor3(S222, rng.integers(-1, 2, size=S222.dims), FIELD_R)
        source = Tensor3(S222, rng.integers(-1, 2, size=S222.dims), FIELD_R)
        obj = build_step_real(target, source)
        a = rng.integers(0, 2, size=(500, obj.num_vars), dtype=np.uint8)
        assert (obj.polynomial.evaluate_many(a) >= 0).all()


class TestHolistic:
    def test_variable_count_222_rank7(self):
        obj = build_holistic(standard_tensor(S222, FIELD_R), 7)
        assert obj.num_vars == 168
        assert obj.num_vars == 2 * 7 * sum(S222.dims)

    def test_zero_assignment_energy(self):
        obj = build_holistic(standard_tensor(S222, FIELD_R), 7)
        assert obj.polynomial.evaluate(np.zeros(168, dtype=np.uint8)) == 8.0

    def test_strassen_assignment_is_zero(self):
        from mmsearch.pipeline import strassen_holistic_assignment

        obj = build_holistic(standard_tensor(S222, FIELD_R), 7)
        a = strassen_holistic_assignment(obj)
        assert obj.polynomial.evaluate(a) == 0.0

    def test_oracle_equivalence_random(self):
        rng = np.random.default_rng(21)
        shape = S232
        t_s = standard_tensor(shape, FIELD_R)
        obj = build_holistic(t_s, 2)
        for _ in range(60):
            a = rng.integers(0, 2, size=obj.num_vars, dtype=np.uint8)
            triples = decode_assignment(obj, a)
            acc = np.zeros(shape.dims, dtype=np.int64)
            for t in triples:
                acc += np.einsum("i,j,k->ijk", t.x, t.y, t.z)
            assert obj.polynomial.evaluate(a) == ((t_s.data - acc) ** 2).sum()

    def test_zero_found_implies_exact_equation(self):
        # every zero-energy assignment must decode to an exact decomposition
        from mmsearch.pipeline import strassen_holistic_assignment
        from mmsearch.tensors import Decomposition, sum_decomposition

        t_s = standard_tensor(S222, FIELD_R)
        obj = build_holistic(t_s, 7)
        a = strassen_holistic_assignment(obj)
        factors = [t for t in decode_assignment(obj, a) if not t.is_zero()]
        assert sum_decomposition(Decomposition(S222, FIELD_R, factors)) == t_s

    def test_rank_validation(self):
        with pytest.raises(ValueError):
            build_holistic(standard_tensor(S222, FIELD_R), 0)
        with pytest.raises(FieldError):
            build_holistic(standard_tensor(S222, FIELD_F2), 7)

    def test_registry_layout(self):
        obj = build_holistic(standard_tensor(S222, FIELD_R), 2)
        assert obj.registry.name_of(0) == "x[0][0].L"
        assert obj.registry.name_of(1) == "x[0][0].R"
        # y block starts after both ranks of x
        assert obj.registry.name_of(2 * 2 * 4) == "y[0][0].L"


class TestDecodeEncode:
    def test_f2_zero_assignment(self):
        t = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(t, t)
        triple = decode_assignment(obj, np.zeros(12, dtype=np.uint8))
        assert triple.is_zero()

    def test_ternary_component_table(self):
        t = standard_tensor(MatMulShape(1, 1, 1), FIELD_R)
        obj = build_step_real(t, t)
        # pairs (1,0), (0,1), (1,1) in x, y, z slots decode to 1, -1, 0
        triple = decode_assignment(obj, np.array([1, 0, 0, 1, 1, 1], dtype=np.uint8))
        assert (triple.x[0], triple.y[0], triple.z[0]) == (1, -1, 0)

    def test_round_trip_step(self):
        rng = np.random.default_rng(30)
        t = standard_tensor(S222, FIELD_R)
        obj = build_step_real(t, t)
        for _ in range(20):
            vecs = [rng.integers(-1, 2, size=d) for d in S222.dims]
            triple = RankOneTriple(*vecs)
            assert decode_assignment(obj, encode_step_assignment(obj, triple)) == triple

    def test_round_trip_holistic_with_alternate_zero(self):
        from mmsearch.pipeline import strassen_fixture

        obj = build_holistic(standard_tensor(S222, FIELD_R), 7)
        factors = strassen_fixture().decomposition.factors
        a0 = encode_holistic_assignment(obj, factors)
        # factor 0 is m5 with x = [1,1,0,0]: components 2 and 3 are zero
        a1 = encode_holistic_assignment(obj, factors, alternate_zero={("x", 0, 2)})
        assert not np.array_equal(a0, a1)
        assert decode_assignment(obj, a0) == decode_assignment(obj, a1) == list(factors)

    def test_alternate_zero_only_for_zero_components(self):
        from mmsearch.pipeline import strassen_fixture

        obj = build_holistic(standard_tensor(S222, FIELD_R), 7)
        factors = strassen_fixture().decomposition.factors
        with pytest.raises(ValueError):
            encode_holistic_assignment(obj, factors, alternate_zero={("x", 0, 0)})

    def test_length_mismatch(self):
        t = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(t, t)
        with pytest.raises(ValueError):
            decode_assignment(obj, np.zeros(11, dtype=np.uint8))


class TestSerialization:
    def test_objective_json_has_registry_block(self):
        t = standard_tensor(S222, FIELD_F2)
        obj = build_step_f2(t, t).to_json_obj()
        assert obj["variables"][0] == {"id": 0, "name": "x[0]"}
        assert obj["num_vars"] == 12
        assert obj["kind"] == "step"

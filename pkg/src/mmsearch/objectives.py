"""Objective builders: single-step distance objectives and the fixed-rank
whole-decomposition objective.

All objectives are polynomials over binary variables whose value equals a
tensor distance after decoding the variables back to integer (or 0/1)
vectors:

* F2 step: variables are the entries of one (x, y, z) triple directly; each
  tensor cell contributes ``1 - x_i y_j z_k`` where target and source differ
  mod 2, and ``x_i y_j z_k`` where they agree, so the polynomial value equals
  the Hamming distance after a mod-2 subtraction of the rank-one update.
* real step: each integer entry is expanded through a binary encoding and the
  cell residual ``(T - S + x_i y_j z_k)`` is squared.
* holistic: R triples at once; the value is
  ``sum_cells (T(i,j,k) - sum_r x_i^r y_j^r z_k^r)^2``, zero exactly on
  encodings of valid rank-R decompositions.

Variable layout is deterministic: all x variables, then y, then z; within a
block ranks are outermost, then components, then encoding slots.  Names
follow ``x[i]`` (F2 step), ``x[i].L`` (real step) and ``x[r][i].L``
(holistic).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pbpoly import PolyAccumulator, PseudoBooleanPolynomial, VariableRegistry
from .quadratize import IntegerEncoding, encode_integer_ternary_pair
from .tensors import (
    FIELD_F2,
    FIELD_R,
    FieldError,
    MatMulShape,
    RankOneTriple,
    ShapeError,
    Tensor3,
)

_VECS = ("x", "y", "z")


@dataclass
class StepObjective:
    """Objective for moving a source tensor one rank-one update closer."""

    polynomial: PseudoBooleanPolynomial
    registry: VariableRegistry
    field: str
    shape: MatMulShape
    encoding: IntegerEncoding | None = None

    @property
    def num_vars(self) -> int:
        return self.polynomial.num_vars

    def to_json_obj(self) -> dict:
        obj = self.polynomial.to_json_obj()
        obj.update(self.registry.to_json_obj())
        obj["kind"] = "step"
        obj["field"] = self.field
        obj["shape"] = {"n": self.shape.n, "m": self.shape.m, "p": self.shape.p}
        return obj


@dataclass
class HolisticObjective:
    """Fixed-rank whole-decomposition objective over the real field."""

    polynomial: PseudoBooleanPolynomial
    registry: VariableRegistry
    rank: int
    shape: MatMulShape
    encoding: IntegerEncoding

    @property
    def num_vars(self) -> int:
        return self.polynomial.num_vars

    def to_json_obj(self) -> dict:
        obj = self.polynomial.to_json_obj()
        obj.update(self.registry.to_json_obj())
        obj["kind"] = "holistic"
        obj["rank"] = self.rank
        obj["shape"] = {"n": self.shape.n, "m": self.shape.m, "p": self.shape.p}
        return obj


def _check_step_inputs(target: Tensor3, source: Tensor3, field: str) -> None:
    if target.field != field or source.field != field:
        raise FieldError(
            f"expected both tensors in field {field}, got "
            f"{target.field} and {source.field}"
        )
    if target.shape != source.shape:
        raise ShapeError(f"shape mismatch: {target.shape} vs {source.shape}")


def build_step_f2(target: Tensor3, source: Tensor3) -> StepObjective:
    """Degree-3 objective equal to d_H(target, source - x(x)y(x)z mod 2)."""
    _check_step_inputs(target, source, FIELD_F2)
    shape = target.shape
    nm, mp, pn = shape.dims
    registry = VariableRegistry()
    for vec, count in zip(_VECS, (nm, mp, pn)):
        for comp in range(count):
            registry.add(f"{vec}[{comp}]")
    acc = PolyAccumulator(len(registry))
    diff = np.mod(target.data - source.data, 2)
    for i in range(nm):
        for j in range(mp):
            for k in range(pn):
                mono = (i, nm + j, nm + mp + k)
                if diff[i, j, k]:
                    acc.add_canonical((), 1.0)
                    acc.add_canonical(mono, -1.0)
                else:
                    acc.add_canonical(mono, 1.0)
    return StepObjective(acc.build(), registry, FIELD_F2, shape)


def _linear_forms(
    registry: VariableRegistry,
    shape: MatMulShape,
    encoding: IntegerEncoding,
    ranks: int | None,
) -> dict[tuple, PseudoBooleanPolynomial]:
    """Register variables and build the per-component linear decode forms.

    Keys are (vec, comp) for step objectives and (vec, r, comp) when `ranks`
    is given.  Registration order fixes the VarId layout.
    """
    slots = encoding.slot_names()
    nvars_total = encoding.num_bits * (1 if ranks is None else ranks) * sum(shape.dims)
    forms: dict[tuple, PseudoBooleanPolynomial] = {}
    pending: list[tuple[tuple, list[int]]] = []
    rank_indices: tuple = (None,) if ranks is None else tuple(range(ranks))
    for vec, count in zip(_VECS, shape.dims):
        for r in rank_indices:
            for comp in range(count):
                ids = []
                for slot in slots:
                    if r is None:
                        name = f"{vec}[{comp}].{slot}"
                        key = (vec, comp)
                    else:
                        name = f"{vec}[{r}][{comp}].{slot}"
                        key = (vec, r, comp)
                    ids.append(registry.add(name))
                pending.append((key, ids))
    for key, ids in pending:
        terms: dict[tuple, float] = {}
        if encoding.offset:
            terms[()] = float(encoding.offset)
        for w, vid in zip(encoding.weights, ids):
            terms[(vid,)] = float(w)
        forms[key] = PseudoBooleanPolynomial(nvars_total, terms)
    return forms


def build_step_real(
    target: Tensor3, source: Tensor3, encoding: IntegerEncoding | None = None
) -> StepObjective:
    """Squared-residual objective sum((T - S + x_i y_j z_k)^2) over Z."""
    _check_step_inputs(target, source, FIELD_R)
    if encoding is None:
        encoding = encode_integer_ternary_pair()
    shape = target.shape
    nm, mp, pn = shape.dims
    registry = VariableRegistry()
    forms = _linear_forms(registry, shape, encoding, None)
    acc = PolyAccumulator(len(registry))
    diff = target.data - source.data
    for i in range(nm):
        for j in range(mp):
            for k in range(pn):
                c = float(diff[i, j, k])
                prod = forms[("x", i)].multiply(forms[("y", j)]).multiply(forms[("z", k)])
                acc.add_canonical((), c * c)
                for vs, pc in prod.multiply(prod).terms_dict().items():
                    acc.add_canonical(vs, pc)
                if c:
                    for vs, pc in prod.terms_dict().items():
                        acc.add_canonical(vs, 2.0 * c * pc)
    return StepObjective(acc.build(), registry, FIELD_R, shape, encoding)


def build_holistic(
    target: Tensor3, rank: int, encoding: IntegerEncoding | None = None
) -> HolisticObjective:
    """Objective sum_cells (T(i,j,k) - sum_r x_i^r y_j^r z_k^r)^2.

    The target must be an integer tensor: the encoded vectors take integer
    values, so the minimization runs over the real field.
    """
    if rank < 1:
        raise ValueError(f"rank must be at least 1, got {rank}")
    if target.field != FIELD_R:
        raise FieldError("holistic objective requires an integer (R) tensor")
    if encoding is None:
        encoding = encode_integer_ternary_pair()
    shape = target.shape
    nm, mp, pn = shape.dims
    registry = VariableRegistry()
    forms = _linear_forms(registry, shape, encoding, rank)
    acc = PolyAccumulator(len(registry))
    for i in range(nm):
        for j in range(mp):
            for k in range(pn):
                c = float(target.data[i, j, k])
                total: dict[tuple, float] = {}
                for r in range(rank):
                    prod = (
                        forms[("x", r, i)]
                        .multiply(forms[("y", r, j)])
                        .multiply(forms[("z", r, k)])
                    )
                    for vs, pc in prod.terms_dict().items():
                        total[vs] = total.get(vs, 0.0) + pc
                m_poly = PseudoBooleanPolynomial(len(registry), total)
                acc.add_canonical((), c * c)
                if c:
                    for vs, pc in m_poly.terms_dict().items():
                        acc.add_canonical(vs, -2.0 * c * pc)
                for vs, pc in m_poly.multiply(m_poly).terms_dict().items():
                    acc.add_canonical(vs, pc)
    return HolisticObjective(acc.build(), registry, rank, shape, encoding)


# ---------------------------------------------------------------------------
# Assignment decoding / encoding
# ---------------------------------------------------------------------------


def _component_value(a, base: int, encoding: IntegerEncoding | None) -> int:
    if encoding is None:
        return int(a[base])
    bits = [int(a[base + s]) for s in range(encoding.num_bits)]
    return encoding.decode(bits)


def decode_assignment(obj: StepObjective | HolisticObjective, a):
    """Recover the integer vectors behind a binary assignment.

    Returns one RankOneTriple for step objectives and a rank-ordered list of
    triples for the holistic objective.
    """
    a = np.asarray(a)
    if a.shape != (obj.num_vars,):
        raise ValueError(f"assignment length {a.shape} != {obj.num_vars}")
    nm, mp, pn = obj.shape.dims
    if isinstance(obj, StepObjective):
        enc = obj.encoding
        k = enc.num_bits if enc is not None else 1
        lens = (nm, mp, pn)
        vecs = []
        base = 0
        for ln in lens:
            vec = [_component_value(a, base + comp * k, enc) for comp in range(ln)]
            vecs.append(vec)
            base += ln * k
        return RankOneTriple(*vecs)
    enc = obj.encoding
    k = enc.num_bits
    blocks = {}
    base = 0
    for vec, ln in zip(_VECS, (nm, mp, pn)):
        for r in range(obj.rank):
            blocks[(vec, r)] = [
                _component_value(a, base + (r * ln + comp) * k, enc)
                for comp in range(ln)
            ]
        base += obj.rank * ln * k
    return [
        RankOneTriple(blocks[("x", r)], blocks[("y", r)], blocks[("z", r)])
        for r in range(obj.rank)
    ]


def encode_step_assignment(obj: StepObjective, triple: RankOneTriple) -> np.ndarray:
    """Canonical binary assignment whose decode is the given triple."""
    a = np.zeros(obj.num_vars, dtype=np.uint8)
    for vec, values in zip(_VECS, (triple.x, triple.y, triple.z)):
        for comp, value in enumerate(values):
            if obj.encoding is None:
                if value not in (0, 1):
                    raise ValueError("F2 step assignment needs 0/1 components")
                a[obj.registry.id_of(f"{vec}[{comp}]")] = value
            else:
                bits = obj.encoding.encode(int(value))
                for slot, bit in zip(obj.encoding.slot_names(), bits):
                    a[obj.registry.id_of(f"{vec}[{comp}].{slot}")] = bit
    return a


def encode_holistic_assignment(
    obj: HolisticObjective,
    factors: list[RankOneTriple],
    alternate_zero: set[tuple[str, int, int]] = frozenset(),
) -> np.ndarray:
    """Binary assignment encoding a list of factors, rank by rank.

    ``alternate_zero`` lists (vec, rank, comp) keys whose zero-valued
    component should use the (1, 1) encoding instead of (0, 0); only
    meaningful for the ternary-pair scheme, where both decode to 0.
    """
    if len(factors) != obj.rank:
        raise ValueError(f"expected {obj.rank} factors, got {len(factors)}")
    a = np.zeros(obj.num_vars, dtype=np.uint8)
    slots = obj.encoding.slot_names()
    for r, t in enumerate(factors):
        for vec, values in zip(_VECS, (t.x, t.y, t.z)):
            for comp, value in enumerate(values):
                bits = obj.encoding.encode(int(value))
                if (vec, r, comp) in alternate_zero:
                    if obj.encoding.scheme != "ternary" or value != 0:
                        raise ValueError(
                            "alternate zero encoding only applies to ternary zeros"
                        )
                    bits = (1, 1)
                for slot, bit in zip(slots, bits):
                    a[obj.registry.id_of(f"{vec}[{r}][{comp}].{slot}")] = bit
    return a

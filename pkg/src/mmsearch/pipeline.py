"""Top-level search algorithms, decomposition verifier and study tools.

``run_decompositional`` walks a source tensor toward the standard
matrix-multiplication tensor one rank-one subtraction at a time, in two
independent loops seeded by a hand-picked high-energy starting point; the
collected factors (seed first, then loop-1 factors, then loop-2 factors)
form a decomposition of the standard tensor.  Over the integers the loop-1
factors enter the final decomposition negated, because loop 1 *removes* the
difference between the start tensor and the target:

    start = T_s - sum(loop1 subtractions)   =>   T_s = seed + loop2 - loop1

``run_holistic`` fixes the rank and minimizes the whole decomposition in one
objective; energy 0 certifies a valid rank-R decomposition.

``verify_decomposition`` executes a decomposition as an actual
matrix-multiplication algorithm (form the R products of linear combinations,
then recombine) against ground-truth products, exhaustively over F2 for
small operand sizes and on random integer matrices otherwise.

The module also ships the hand-constructed 2x2 starting point that
rediscovers the seven-multiplication algorithm, resource estimation, and
energy-landscape sampling (CSV output).
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .objectives import (
    HolisticObjective,
    StepObjective,
    build_holistic,
    build_step_f2,
    build_step_real,
    decode_assignment,
    encode_holistic_assignment,
)
from .quadratize import (
    IntegerEncoding,
    reduce_min_selection,
    reduce_substitution,
)
from .solvers import SolverConfig, SolverResult, solve
from .tensors import (
    FIELD_F2,
    FIELD_R,
    Decomposition,
    MatMulShape,
    RankOneTriple,
    ShapeError,
    Tensor3,
    hamming_distance,
    standard_tensor,
    subtract,
    sum_decomposition,
)


@dataclass
class HighEnergyPoint:
    """Start tensor plus the seed triple consumed before loop 2."""

    tensor: Tensor3
    seed: RankOneTriple

    def __post_init__(self):
        if self.seed.lengths() != self.tensor.shape.dims:
            raise ShapeError(
                f"seed lengths {self.seed.lengths()} do not match "
                f"{self.tensor.shape.dims}"
            )
        if self.seed.is_zero():
            raise ValueError("the seed triple of a high-energy point must be nonzero")

    def to_json_obj(self) -> dict:
        return {
            "tensor": self.tensor.to_json_obj(),
            "seed": self.seed.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HighEnergyPoint":
        return cls(
            Tensor3.from_json_obj(obj["tensor"]),
            RankOneTriple.from_json_obj(obj["seed"]),
        )


@dataclass
class StepRecord:
    loop: int
    distance_before: int
    distance_after: int
    energy: float


@dataclass
class PipelineRun:
    shape: MatMulShape
    field: str
    config: SolverConfig
    max_iter: int
    decomposition: Decomposition | None
    records: list[StepRecord] = dc_field(default_factory=list)

    def distances(self, loop: int) -> list[int]:
        return [r.distance_after for r in self.records if r.loop == loop]


class StallError(RuntimeError):
    """A loop made no progress (or ran out of budget); carries the partial run."""

    def __init__(self, message: str, partial: PipelineRun):
        super().__init__(message)
        self.partial = partial


def move_tensors_closer(
    target: Tensor3,
    source: Tensor3,
    field: str,
    config: SolverConfig,
    encoding: IntegerEncoding | None = None,
) -> tuple[RankOneTriple, SolverResult]:
    """One optimization step: the rank-one update minimizing the distance.

    Builds the step objective for d(target, source - x(x)y(x)z), solves it
    natively as a higher-order problem, and decodes the best assignment.  An
    all-zero triple means the solver found no useful update (for exhaustive
    search: that the tensors already coincide).
    """
    if field == FIELD_F2:
        obj: StepObjective = build_step_f2(target, source)
    else:
        obj = build_step_real(target, source, encoding)
    result = solve(obj.polynomial, config)
    triple = decode_assignment(obj, result.assignment)
    return triple, result


class _LoopStall(Exception):
    def __init__(self, factors, records, message):
        self.factors = factors
        self.records = records
        self.message = message


def _walk_loop(loop_id, target, start, field, config, max_iter, retries, encoding):
    """Subtract improving rank-one updates until `start` reaches `target`.

    Non-improving or all-zero triples are rejected; stochastic solvers are
    retried with derived seeds, then the loop stalls.
    """
    tensor = start
    factors: list[RankOneTriple] = []
    records: list[StepRecord] = []
    while tensor != target:
        if len(factors) >= max_iter:
            raise _LoopStall(factors, records, f"loop {loop_id} hit max_iter={max_iter}")
        d0 = hamming_distance(target, tensor)
        attempts = 1 if config.kind == "exhaustive" else retries + 1
        accepted = None
        for attempt in range(attempts):
            cfg = config.reseeded((loop_id << 20) | (len(factors) << 8) | attempt)
            triple, result = move_tensors_closer(target, tensor, field, cfg, encoding)
            if triple.is_zero():
                continue
            cand = subtract(tensor, triple, field)
            d1 = hamming_distance(target, cand)
            if d1 < d0:
                accepted = (triple, cand, d1, result)
                break
        if accepted is None:
            raise _LoopStall(
                factors, records,
                f"loop {loop_id} found no improving step at distance {d0}",
            )
        triple, tensor, d1, result = accepted
        factors.append(triple)
        records.append(StepRecord(loop_id, d0, d1, result.energy))
    return factors, records


def run_decompositional(
    shape: MatMulShape,
    field: str,
    hp: HighEnergyPoint,
    config: SolverConfig,
    max_iter: int = 64,
    retries: int = 2,
    encoding: IntegerEncoding | None = None,
    max_workers: int = 2,
) -> PipelineRun:
    """Two-loop decompositional search from a high-energy starting point.

    Loop 1 walks the start tensor to the standard tensor; loop 2 walks
    (start - seed) to the zero tensor.  The loops are independent and run
    concurrently (cap with max_workers); factor order and all solver seeds
    are fixed regardless of scheduling.  Raises StallError (with the partial
    run attached) if either loop stops improving or exceeds max_iter.
    """
    if hp.tensor.shape != shape:
        raise ShapeError(f"high-energy point shape {hp.tensor.shape} != {shape}")
    t_high = hp.tensor.to_field(field)
    seed_triple = hp.seed.mod2() if field == FIELD_F2 else hp.seed
    if seed_triple.is_zero():
        raise ValueError("seed triple is zero in the requested field")
    t_s = standard_tensor(shape, field)
    origin = Tensor3.zeros(shape, field)
    t_prime = subtract(t_high, seed_triple, field)

    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, 2))) as pool:
        fut1 = pool.submit(
            _walk_loop, 1, t_s, t_high, field, config, max_iter, retries, encoding
        )
        fut2 = pool.submit(
            _walk_loop, 2, origin, t_prime, field, config, max_iter, retries, encoding
        )
        stalls = []
        results = []
        for fut in (fut1, fut2):
            try:
                results.append(fut.result())
            except _LoopStall as exc:
                stalls.append(exc)
                results.append((exc.factors, exc.records))

    (factors1, records1), (factors2, records2) = results
    loop1 = [t.negate() for t in factors1] if field == FIELD_R else factors1
    all_factors = [seed_triple] + loop1 + factors2
    records = records1 + records2

    if stalls:
        partial = PipelineRun(
            shape, field, config, max_iter,
            Decomposition(shape, field, all_factors), records,
        )
        raise StallError("; ".join(s.message for s in stalls), partial)

    decomposition = Decomposition(shape, field, all_factors)
    total = sum_decomposition(decomposition)
    if total != t_s:
        raise RuntimeError(
            "internal error: collected factors do not sum to the standard tensor"
        )
    return PipelineRun(shape, field, config, max_iter, decomposition, records)


# ---------------------------------------------------------------------------
# Holistic (fixed-rank) search
# ---------------------------------------------------------------------------


@dataclass
class HolisticRun:
    success: bool
    energy: float
    objective: HolisticObjective
    decomposition: Decomposition | None = None
    solver_result: SolverResult | None = None
    report: "VerificationReport | None" = None


def run_holistic(
    shape: MatMulShape,
    rank: int,
    config: SolverConfig,
    reduction: str = "none",
    penalty_weight: float | None = None,
    initial_assignment=None,
    encoding: IntegerEncoding | None = None,
    verify_trials: int = 200,
) -> HolisticRun:
    """Fixed-rank single-shot search over the real field.

    With reduction "none" the higher-order objective is solved natively;
    "min-selection" or "substitution" first quadratize it.  Energies of
    quadratized runs are reported as the original objective evaluated at the
    projection onto the original variables, so penalty terms never leak into
    the result.  An energy of exactly 0 yields a decomposition, which is
    verified before being returned; positive energy reports a failure.
    """
    t_s = standard_tensor(shape, FIELD_R)
    obj = build_holistic(t_s, rank, encoding)

    if initial_assignment is not None:
        init = np.ascontiguousarray(initial_assignment, dtype=np.uint8)
        e0 = obj.polynomial.evaluate(init)
        if e0 == 0:
            return _holistic_success(shape, obj, init, None, verify_trials)
    else:
        init = None

    if reduction == "none":
        result = solve(obj.polynomial, config, init=init)
        best = np.asarray(result.assignment, dtype=np.uint8)
        e = result.energy
    elif reduction in ("min-selection", "substitution"):
        if reduction == "min-selection":
            qm, _ = reduce_min_selection(obj.polynomial)
        else:
            qm, _ = reduce_substitution(obj.polynomial, penalty_weight)
        full_init = (
            np.asarray(qm.resolve_ancillas(init), dtype=np.uint8)
            if init is not None
            else None
        )
        result = solve(qm.poly, config, init=full_init)
        best = np.asarray(qm.project(result.assignment), dtype=np.uint8)
        e = obj.polynomial.evaluate(best)
    else:
        raise ValueError(f"unknown reduction {reduction!r}")

    if e == 0:
        return _holistic_success(shape, obj, best, result, verify_trials)
    return HolisticRun(False, float(e), obj, solver_result=result)


def _holistic_success(shape, obj, assignment, result, verify_trials) -> HolisticRun:
    factors = [t for t in decode_assignment(obj, assignment) if not t.is_zero()]
    decomposition = Decomposition(shape, FIELD_R, factors)
    report = verify_decomposition(decomposition, trials=verify_trials)
    if not report.valid:
        raise RuntimeError(
            "internal error: zero-energy assignment decoded to an invalid decomposition"
        )
    return HolisticRun(True, 0.0, obj, decomposition, result, report)


# ---------------------------------------------------------------------------
# Verification (decomposition -> matrix multiplication algorithm)
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    valid: bool
    rank: int
    trials: int
    field: str
    counterexample: dict | None = None

    def to_json_obj(self) -> dict:
        return {
            "valid": self.valid,
            "rank": self.rank,
            "trials": self.trials,
            "counterexample": self.counterexample,
        }


def _all_f2_pairs(nm: int, mp: int) -> tuple[np.ndarray, np.ndarray]:
    na, nb = 1 << nm, 1 << mp
    bits_a = (np.arange(na)[:, None] >> np.arange(nm)[None, :]) & 1
    bits_b = (np.arange(nb)[:, None] >> np.arange(mp)[None, :]) & 1
    As = np.repeat(bits_a, nb, axis=0)
    Bs = np.tile(bits_b, (na, 1))
    return As.astype(np.int64), Bs.astype(np.int64)


def verify_decomposition(
    d: Decomposition, trials: int = 200, seed: int = 0
) -> VerificationReport:
    """Run the decomposition as a multiplication algorithm and compare.

    For each operand pair: m_r = (sum_u A_u x_u^r) * (sum_v B_v y_v^r), then
    the flattened output c_l = sum_r m_r z_l^r with l = k*n + i addressing
    C[i, k].  Over F2 all operand pairs are enumerated when nm + mp <= 16
    bits; over the integers, random matrices with entries in [-9, 9].
    """
    shape = d.shape
    nm, mp, pn = shape.dims
    n, m, p = shape.n, shape.m, shape.p
    R = d.rank()
    X = np.array([t.x for t in d.factors], dtype=np.int64).reshape(R, nm)
    Y = np.array([t.y for t in d.factors], dtype=np.int64).reshape(R, mp)
    Z = np.array([t.z for t in d.factors], dtype=np.int64).reshape(R, pn)

    if d.field == FIELD_F2:
        X, Y, Z = X % 2, Y % 2, Z % 2
        if nm + mp <= 16:
            As, Bs = _all_f2_pairs(nm, mp)
        else:
            rng = np.random.default_rng(seed)
            As = rng.integers(0, 2, size=(trials, nm), dtype=np.int64)
            Bs = rng.integers(0, 2, size=(trials, mp), dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        As = rng.integers(-9, 10, size=(trials, nm), dtype=np.int64)
        Bs = rng.integers(-9, 10, size=(trials, mp), dtype=np.int64)

    n_pairs = As.shape[0]
    mults = (As @ X.T) * (Bs @ Y.T)
    got = mults @ Z
    true = np.einsum(
        "qij,qjk->qik", As.reshape(n_pairs, n, m), Bs.reshape(n_pairs, m, p)
    )
    expected = true.transpose(0, 2, 1).reshape(n_pairs, pn)
    if d.field == FIELD_F2:
        got = got % 2
        expected = expected % 2

    mismatch = np.nonzero((got != expected).any(axis=1))[0]
    if mismatch.size == 0:
        return VerificationReport(True, R, n_pairs, d.field)
    q = int(mismatch[0])
    counterexample = {
        "A": As[q].reshape(n, m).tolist(),
        "B": Bs[q].reshape(m, p).tolist(),
        "expected": expected[q].tolist(),
        "got": got[q].tolist(),
    }
    return VerificationReport(False, R, n_pairs, d.field, counterexample)


# ---------------------------------------------------------------------------
# 2x2 fixture: factors, starting point, symmetry pairing
# ---------------------------------------------------------------------------

# The seven products of the classical 2x2 fast algorithm, as (x, y, z)
# vectors over the flattened operands.  z uses the output-transposed layout
# (position k*n + i holds the coefficient of C[i, k]) so that the factor sum
# equals the standard tensor built by `standard_tensor`.
_PROD_TABLE = {
    "m1": ([1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1]),
    "m2": ([0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, -1]),
    "m3": ([1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 1]),
    "m4": ([0, 0, 0, 1], [-1, 0, 1, 0], [1, 1, 0, 0]),
    "m5": ([1, 1, 0, 0], [0, 0, 0, 1], [-1, 0, 1, 0]),
    "m6": ([-1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]),
    "m7": ([0, 1, 0, -1], [0, 0, 1, 1], [1, 0, 0, 0]),
}

# Paper-facing display order of the seven factors and its symmetry pairing:
# each even-indexed factor maps to its successor under component-wise vector
# reversal; the last factor is self-paired.
_DISPLAY_ORDER = ("m5", "m2", "m4", "m3", "m6", "m7", "m1")
STRASSEN_PAIRING: tuple[tuple[int, ...], ...] = ((0, 1), (2, 3), (4, 5), (6,))


def _product_triple(name: str) -> RankOneTriple:
    x, y, z = _PROD_TABLE[name]
    return RankOneTriple(x, y, z)


@dataclass
class StrassenFixture:
    hp: HighEnergyPoint
    decomposition: Decomposition
    pairing: tuple[tuple[int, ...], ...]

    def pairing_holds(self) -> bool:
        """Check: component-wise reversal maps each factor to its partner."""
        fs = self.decomposition.factors
        for group in self.pairing:
            left = fs[group[0]]
            right = fs[group[-1]]
            for a, b in ((left.x, right.x), (left.y, right.y), (left.z, right.z)):
                if not np.array_equal(a[::-1], b):
                    return False
        return True


def strassen_fixture() -> StrassenFixture:
    """Reference 2x2 data: start tensor, seed triple and the rank-7 factors.

    The start tensor is the standard tensor minus the three factors shown in
    the left column of the display pairing; the seed is [1,0,0,1] in all
    three vectors.
    """
    shape = MatMulShape(2, 2, 2)
    factors = [_product_triple(name) for name in _DISPLAY_ORDER]
    decomposition = Decomposition(shape, FIELD_R, factors)
    t_s = standard_tensor(shape, FIELD_R)
    data = t_s.data.copy()
    for idx in (0, 2, 4):
        t = factors[idx]
        data = data - np.einsum("i,j,k->ijk", t.x, t.y, t.z)
    hp = HighEnergyPoint(Tensor3(shape, data, FIELD_R), _product_triple("m1"))
    return StrassenFixture(hp, decomposition, STRASSEN_PAIRING)


def standard_recovery_point(shape: MatMulShape) -> HighEnergyPoint:
    """Degenerate start: the standard tensor itself with a unit seed triple.

    Loop 1 exits immediately and loop 2 walks T_s - e0(x)e0(x)e0 to zero one
    unit entry at a time, so the decompositional algorithm reproduces the
    standard algorithm with rank n*m*p.
    """
    nm, mp, pn = shape.dims
    x = np.zeros(nm, dtype=np.int64)
    y = np.zeros(mp, dtype=np.int64)
    z = np.zeros(pn, dtype=np.int64)
    x[0] = y[0] = z[0] = 1
    return HighEnergyPoint(standard_tensor(shape, FIELD_R), RankOneTriple(x, y, z))


def lift_f2_decomposition(d: Decomposition, reference: Decomposition) -> Decomposition:
    """Replace each mod-2 factor by the matching signed reference factor.

    The match must be a bijection; raises ValueError when a discovered factor
    has no unused reference partner congruent to it mod 2.
    """
    if d.shape != reference.shape:
        raise ShapeError("decomposition shapes differ")
    used = [False] * reference.rank()
    lifted = []
    for t in d.factors:
        tm = t.mod2()
        for i, ref in enumerate(reference.factors):
            if not used[i] and ref.mod2() == tm:
                used[i] = True
                lifted.append(ref)
                break
        else:
            raise ValueError(f"no reference factor congruent to {t} mod 2")
    return Decomposition(d.shape, FIELD_R, lifted)


# ---------------------------------------------------------------------------
# Resource estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResourceEstimate:
    step_variables: int
    holistic_variables: int
    interaction_bound: int
    ancilla_bound: int


def estimate_resources(
    shape: MatMulShape, rank: int, k: int, field: str = FIELD_R
) -> ResourceEstimate:
    """Problem-size accounting.

    Step objectives use nm+mp+pn variables over F2 and k times that over the
    integers; the holistic objective uses k*R*(nm+mp+pn).  The worst-case
    count of cubic-or-higher interactions in the holistic objective is
    n^2 m^2 p^2 (R k^3 + 1)^2, and quadratization introduces at most one
    ancilla per cubic term of a step objective (n^2 m^2 p^2 of them).
    """
    if rank < 1 or k < 1:
        raise ValueError("rank and k must be positive")
    n, m, p = shape.n, shape.m, shape.p
    base = n * m + m * p + p * n
    step_vars = base if field == FIELD_F2 else k * base
    holistic_vars = k * rank * base
    interaction_bound = (n * n * m * m * p * p) * (rank * k**3 + 1) ** 2
    ancilla_bound = n * n * m * m * p * p
    return ResourceEstimate(step_vars, holistic_vars, interaction_bound, ancilla_bound)


# ---------------------------------------------------------------------------
# Landscape sampling
# ---------------------------------------------------------------------------


@dataclass
class LandscapeRow:
    chunk_index: int
    position: int
    energy: float
    inserted: bool

    @property
    def log1p_energy(self) -> float:
        return float(np.log1p(self.energy))


LANDSCAPE_HEADER = "chunk_index,assignment_integer_decimal,energy,log1p_energy,is_inserted_optimum"


def assignment_int_to_bits(value: int, num_vars: int) -> np.ndarray:
    """Binary digits of `value` as an assignment; bit v is variable v."""
    if not 0 <= value < (1 << num_vars):
        raise ValueError(f"position {value} outside [0, 2^{num_vars})")
    raw = np.frombuffer(value.to_bytes(-(-num_vars // 8), "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:num_vars].copy()


def bits_to_assignment_int(bits) -> int:
    value = 0
    for v, b in enumerate(bits):
        if b:
            value |= 1 << v
    return value


def sample_landscape(
    obj: HolisticObjective | StepObjective,
    chunks: int,
    per_chunk: int = 1,
    seed: int = 0,
    known_optima: list[int] | None = None,
) -> list[LandscapeRow]:
    """Sample the objective once (or per_chunk times) per interval chunk.

    The assignment space [0, 2^num_vars) is split into `chunks` equal
    intervals; each contributes uniformly random points drawn from a
    deterministic per-chunk stream.  Known optima are inserted at their exact
    positions and flagged.  Rows come back sorted by (chunk, position).
    """
    if chunks < 1:
        raise ValueError("chunks must be >= 1")
    nv = obj.num_vars
    total = 1 << nv
    if chunks > total:
        raise ValueError(f"more chunks ({chunks}) than assignments ({total})")
    rows: list[tuple[int, int, bool]] = []
    for c in range(chunks):
        lo = c * total // chunks
        hi = (c + 1) * total // chunks
        rng = random.Random(f"{seed}:{c}")
        for _ in range(per_chunk):
            rows.append((c, lo + rng.randrange(hi - lo), False))
    for pos in known_optima or ():
        rows.append((min(pos * chunks // total, chunks - 1), pos, True))
    rows.sort()
    bits = np.stack([assignment_int_to_bits(pos, nv) for _, pos, _ in rows])
    energies = obj.polynomial.evaluate_many(bits)
    return [
        LandscapeRow(c, pos, float(e), ins)
        for (c, pos, ins), e in zip(rows, energies)
    ]


def sample_neighborhood(
    obj: HolisticObjective | StepObjective, center: int, width: int
) -> list[LandscapeRow]:
    """Evaluate every assignment within +-width of a center position.

    The chunk_index column carries the signed offset; the center row is
    flagged as the inserted reference point.
    """
    nv = obj.num_vars
    total = 1 << nv
    offsets = [o for o in range(-width, width + 1) if 0 <= center + o < total]
    bits = np.stack([assignment_int_to_bits(center + o, nv) for o in offsets])
    energies = obj.polynomial.evaluate_many(bits)
    return [
        LandscapeRow(o, center + o, float(e), o == 0)
        for o, e in zip(offsets, energies)
    ]


def write_landscape_csv(rows: list[LandscapeRow], stream) -> None:
    stream.write(LANDSCAPE_HEADER + "\n")
    for r in rows:
        e = int(r.energy) if float(r.energy).is_integer() else r.energy
        stream.write(
            f"{r.chunk_index},{r.position},{e},{r.log1p_energy!r},{int(r.inserted)}\n"
        )


def strassen_holistic_assignment(obj: HolisticObjective) -> np.ndarray:
    """Canonical zero-energy assignment: the fixture factors in display order."""
    factors = [_product_triple(name) for name in _DISPLAY_ORDER]
    return encode_holistic_assignment(obj, factors)


def strassen_landscape_optima(obj: HolisticObjective) -> list[int]:
    """Eight zero-energy positions clustered just above the interval midpoint.

    All eight encode valid rank-7 decompositions (factor order and paired
    sign flips do not change the factor sum; ternary zeros have two
    encodings).  The ordering places a factor with z = [0,0,0,-1] last so the
    top variable of the z block is set and the next fourteen are clear,
    pinning every position within 2^-14 of the midpoint 2^(nv-1).
    """
    if obj.shape != MatMulShape(2, 2, 2) or obj.rank != 7:
        raise ValueError("optima are defined for the (2,2,2) rank-7 objective")
    if obj.encoding.scheme != "ternary":
        raise ValueError("optima require the ternary-pair encoding")
    m6 = _product_triple("m6")
    order = [
        _product_triple("m5"),
        _product_triple("m2"),
        _product_triple("m4"),
        _product_triple("m3"),
        _product_triple("m1"),
        _product_triple("m7"),
        RankOneTriple(-m6.x, m6.y, -m6.z),
    ]
    toggles = (("x", 0, 2), ("x", 0, 3), ("x", 1, 0))
    positions = []
    for mask in range(8):
        alt = {toggles[b] for b in range(3) if (mask >> b) & 1}
        a = encode_holistic_assignment(obj, order, alternate_zero=alt)
        positions.append(bits_to_assignment_int(a))
    return sorted(positions)


def first_optimum_report(obj: HolisticObjective, optima: list[int]) -> dict:
    """Relative offset of the first (smallest) optimum from the midpoint."""
    first = min(optima)
    midpoint = 1 << (obj.num_vars - 1)
    return {
        "first_position": first,
        "midpoint": midpoint,
        "relative_offset": abs(first - midpoint) / midpoint,
    }

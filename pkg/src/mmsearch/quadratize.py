"""Degree reduction of higher-order binary objectives to quadratic form.

Two reducers are provided, both preserving minima exactly: for every
assignment ``a`` of the original variables,

    min over ancilla assignments of QUBO(a, anc) == HUBO(a)

so global minima coincide in value and every QUBO minimizer projects onto a
HUBO minimizer.

``reduce_min_selection`` rewrites each term of degree >= 3 with its own
ancilla gadget:

* negative coefficient c, degree d (one ancilla):
      c * x1...xd  ==  min_w  c * w * (x1 + ... + xd - d + 1)
* positive coefficient, degree d (floor((d-1)/2) ancillas):
      x1...xd  ==  sum_{i<j} xi xj
                   + min_w sum_j w_j * (c_j * (2j - sum_i xi) - 1)
  with c_j = 1 when d is odd and j is the last ancilla, else 2.

``reduce_substitution`` repeatedly replaces the most frequent co-occurring
variable pair (u, v) inside high-degree terms by a fresh ancilla w, adding
the penalty M * (uv - 2uw - 2vw + 3w), which is 0 when w == u*v and >= 1
otherwise.  With the automatic weight M = 1 + sum|coeff| a violated ancilla
can never pay for itself, so minima are preserved.

This module also holds the integer-to-binary encodings used by the real-field
objectives, and the qbsolv-style text export of quadratic models.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .pbpoly import PolyAccumulator, PseudoBooleanPolynomial, VarSet


@dataclass(frozen=True)
class ReductionReport:
    method: str
    original_vars: int
    ancilla_count: int
    penalty_weight: float | None = None


class QuadraticModel:
    """Degree <= 2 polynomial plus bookkeeping for its ancilla variables.

    ``ancilla_map`` maps each ancilla id (>= num_original) to the var tuple it
    linearizes (min-selection) or the pair it substitutes (substitution).
    """

    __slots__ = ("poly", "num_original", "ancilla_map", "method")

    def __init__(self, poly: PseudoBooleanPolynomial, num_original: int,
                 ancilla_map: dict[int, VarSet], method: str):
        if poly.degree() > 2:
            raise ValueError("quadratic model must have degree <= 2")
        for anc in ancilla_map:
            if anc < num_original:
                raise ValueError(f"ancilla id {anc} below original variable range")
        self.poly = poly
        self.num_original = num_original
        self.ancilla_map = ancilla_map
        self.method = method

    @property
    def num_ancillas(self) -> int:
        return len(self.ancilla_map)

    def project(self, assignment) -> list[int]:
        """Restrict a full assignment to the original variables."""
        return [int(b) for b in assignment[: self.num_original]]

    def resolve_ancillas(self, original_assignment) -> list[int]:
        """Extend an original assignment by its energy-minimizing ancillas.

        Substitution ancillas take the product of their pair (resolved in id
        order, so chained substitutions work); min-selection ancillas are
        mutually independent and switch on exactly when their linear
        coefficient is negative.
        """
        if len(original_assignment) != self.num_original:
            raise ValueError("assignment length must equal original variable count")
        full = [int(b) for b in original_assignment] + [0] * self.num_ancillas
        if self.method == "substitution":
            for anc in sorted(self.ancilla_map):
                u, v = self.ancilla_map[anc]
                full[anc] = full[u] * full[v]
            return full
        terms_by_anc: dict[int, list[tuple[VarSet, float]]] = {
            anc: [] for anc in self.ancilla_map
        }
        for vs, c in self.poly.items():
            for v in vs:
                if v in terms_by_anc:
                    terms_by_anc[v].append((vs, c))
        for anc in sorted(self.ancilla_map):
            lin = 0.0
            for vs, c in terms_by_anc[anc]:
                prod = 1
                for v in vs:
                    if v != anc:
                        prod *= full[v]
                lin += c * prod
            full[anc] = 1 if lin < 0 else 0
        return full


# ---------------------------------------------------------------------------
# Reduction by minimum selection
# ---------------------------------------------------------------------------


def reduce_min_selection(poly: PseudoBooleanPolynomial) -> tuple[QuadraticModel, ReductionReport]:
    """Per-term ancilla gadgets; deterministic given the input polynomial."""
    n = poly.num_vars
    if poly.degree() <= 2:
        qm = QuadraticModel(poly, n, {}, "min-selection")
        return qm, ReductionReport("min-selection", n, 0)

    high = [(vs, c) for vs, c in poly.items() if len(vs) >= 3]
    n_anc = sum(1 if c < 0 else (len(vs) - 1) // 2 for vs, c in high)
    acc = PolyAccumulator(n + n_anc)
    ancilla_map: dict[int, VarSet] = {}
    next_anc = n

    for vs, c in poly.items():
        if len(vs) <= 2:
            acc.add_canonical(vs, c)
            continue
        d = len(vs)
        if c < 0:
            w = next_anc
            next_anc += 1
            ancilla_map[w] = vs
            # c * w * (sum x_i - (d - 1))
            for v in vs:
                acc.add_canonical((v, w), c)
            acc.add_canonical((w,), -c * (d - 1))
        else:
            k = (d - 1) // 2
            for i, j in combinations(vs, 2):
                acc.add_canonical((i, j), c)
            for jj in range(1, k + 1):
                w = next_anc
                next_anc += 1
                ancilla_map[w] = vs
                cj = 1.0 if (d % 2 == 1 and jj == k) else 2.0
                for v in vs:
                    acc.add_canonical((v, w), -c * cj)
                acc.add_canonical((w,), c * (cj * 2 * jj - 1))

    qm = QuadraticModel(acc.build(), n, ancilla_map, "min-selection")
    return qm, ReductionReport("min-selection", n, len(ancilla_map))


# ---------------------------------------------------------------------------
# Reduction by substitution
# ---------------------------------------------------------------------------


def auto_penalty_weight(poly: PseudoBooleanPolynomial) -> float:
    """1 + sum of |coeff|: strictly dominates any gain from a violated pair."""
    return 1.0 + poly.abs_coeff_sum()


def reduce_substitution(
    poly: PseudoBooleanPolynomial, penalty_weight: float | None = None
) -> tuple[QuadraticModel, ReductionReport]:
    """Collapse the most frequent variable pair until degree <= 2.

    Ties between equally frequent pairs break lexicographically, so the
    output is deterministic.  ``penalty_weight`` must exceed 1; by default it
    is computed from the input coefficients.
    """
    if penalty_weight is None:
        penalty_weight = auto_penalty_weight(poly)
    if penalty_weight <= 1:
        raise ValueError(f"penalty weight must exceed 1, got {penalty_weight}")
    M = float(penalty_weight)
    n = poly.num_vars

    if poly.degree() <= 2:
        qm = QuadraticModel(poly, n, {}, "substitution")
        return qm, ReductionReport("substitution", n, 0, M)

    # Term table: index -> [varset or None, coeff]; key_index finds mergeable
    # terms; pair_terms tracks which high-degree terms contain each pair.
    # Pairs are packed into single ints so heap comparisons stay cheap; the
    # packing preserves lexicographic pair order for deterministic ties.
    SHIFT = 21
    if poly.num_vars >= (1 << SHIFT):
        raise ValueError("too many variables for pair-packed substitution")

    terms: list[list] = []
    key_index: dict[VarSet, int] = {}
    pair_terms: dict[int, set[int]] = {}
    dirty: set[int] = set()

    def register_pairs(idx: int) -> None:
        vs = terms[idx][0]
        if len(vs) < 3:
            return
        for a, b in combinations(vs, 2):
            key = (a << SHIFT) | b
            pair_terms.setdefault(key, set()).add(idx)
            dirty.add(key)

    def unregister_pairs(idx: int) -> None:
        vs = terms[idx][0]
        if len(vs) < 3:
            return
        for a, b in combinations(vs, 2):
            pair_terms[(a << SHIFT) | b].discard(idx)

    for vs, c in poly.items():
        idx = len(terms)
        terms.append([vs, c])
        key_index[vs] = idx
        register_pairs(idx)

    # One live heap entry per pair.  Counts of existing pairs only ever
    # decrease (growth happens only for pairs involving the ancilla created
    # in the current step, which are pushed once they reach full size), so
    # stale entries always overstate and lazy revalidation on pop keeps the
    # most-frequent-first order exact.
    heap: list[tuple[int, int]] = []
    in_heap: set[int] = set()

    def flush_dirty() -> None:
        for key in dirty:
            if key not in in_heap and pair_terms.get(key):
                heapq.heappush(heap, (-len(pair_terms[key]), key))
                in_heap.add(key)
        dirty.clear()

    flush_dirty()
    ancilla_map: dict[int, VarSet] = {}
    penalties: dict[VarSet, float] = {}
    next_anc = n

    def add_penalty(key: VarSet, c: float) -> None:
        penalties[key] = penalties.get(key, 0.0) + c

    while heap:
        neg_count, key = heapq.heappop(heap)
        in_heap.discard(key)
        bucket = pair_terms.get(key)
        if not bucket:
            continue
        if -neg_count != len(bucket):
            heapq.heappush(heap, (-len(bucket), key))
            in_heap.add(key)
            continue
        u, v = key >> SHIFT, key & ((1 << SHIFT) - 1)
        w = next_anc
        next_anc += 1
        ancilla_map[w] = (u, v)
        # penalty M * (uv - 2uw - 2vw + 3w), zero exactly when w == u*v
        add_penalty((u, v), M)
        add_penalty((u, w), -2.0 * M)
        add_penalty((v, w), -2.0 * M)
        add_penalty((w,), 3.0 * M)

        for idx in sorted(bucket):
            vs, c = terms[idx]
            unregister_pairs(idx)
            new_vs = tuple(sorted((set(vs) - {u, v}) | {w}))
            del key_index[vs]
            terms[idx][0] = None
            if new_vs in key_index:
                tgt = key_index[new_vs]
                unregister_pairs(tgt)
                terms[tgt][1] += c
                if terms[tgt][1] == 0.0:
                    del key_index[new_vs]
                    terms[tgt][0] = None
                else:
                    register_pairs(tgt)
            else:
                tgt = len(terms)
                terms.append([new_vs, c])
                key_index[new_vs] = tgt
                register_pairs(tgt)
        flush_dirty()

    acc = PolyAccumulator(next_anc)
    for entry in terms:
        if entry[0] is not None and entry[1] != 0.0:
            acc.add_canonical(entry[0], entry[1])
    for vs, c in penalties.items():
        acc.add_canonical(vs, c)

    qm = QuadraticModel(acc.build(), n, ancilla_map, "substitution")
    return qm, ReductionReport("substitution", n, len(ancilla_map), M)


# ---------------------------------------------------------------------------
# Integer-to-binary encodings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerEncoding:
    """Binary encoding of a bounded integer variable.

    decode(bits) = offset + sum(weights[s] * bits[s]).  The ternary-pair
    scheme uses weights (1, -1) so a pair decodes to left - right in
    {-1, 0, 1}, with both (0, 0) and (1, 1) giving 0.
    """

    scheme: str
    weights: tuple[int, ...]
    offset: int = 0

    @property
    def num_bits(self) -> int:
        return len(self.weights)

    def decode(self, bits) -> int:
        if len(bits) != self.num_bits:
            raise ValueError(f"expected {self.num_bits} bits, got {len(bits)}")
        return self.offset + sum(w * int(b) for w, b in zip(self.weights, bits))

    def values(self) -> list[int]:
        out = set()
        for mask in range(1 << self.num_bits):
            bits = [(mask >> s) & 1 for s in range(self.num_bits)]
            out.add(self.decode(bits))
        return sorted(out)

    def encode(self, value: int) -> tuple[int, ...]:
        """Canonical bits for a value (zero encodes as all-zero bits)."""
        s = value - self.offset
        if self.scheme == "ternary":
            if s == 1:
                return (1, 0)
            if s == -1:
                return (0, 1)
            if s == 0:
                return (0, 0)
            raise ValueError(f"value {value} outside ternary range")
        max_sum = sum(self.weights)
        if not 0 <= s <= max_sum:
            raise ValueError(f"value {value} outside encodable range")
        m = self.num_bits - 1
        top = self.weights[-1]
        bits = [0] * self.num_bits
        if s > (1 << m) - 1:
            bits[m] = 1
            s -= top
        for i in range(m - 1, -1, -1):
            if s >= (1 << i):
                bits[i] = 1
                s -= 1 << i
        if s != 0:
            raise ValueError(f"value {value} not encodable")  # pragma: no cover
        return tuple(bits)

    def slot_names(self) -> list[str]:
        if self.scheme == "ternary":
            return ["L", "R"]
        return [str(s) for s in range(self.num_bits)]


def encode_integer_ternary_pair() -> IntegerEncoding:
    """Two binaries per integer: value = left - right in {-1, 0, 1}."""
    return IntegerEncoding("ternary", (1, -1), 0)


def encode_integer_log(value_count: int, offset: int = 0) -> IntegerEncoding:
    """Binary-weighted encoding covering 0..N with M+1 bits, 2^M <= N < 2^(M+1).

    Weights are (1, 2, ..., 2^(M-1), N + 1 - 2^M); an offset shifts the
    covered range (e.g. offset -2 with N=5 covers the integers around
    {-2..2}).
    """
    N = int(value_count)
    if N < 2:
        raise ValueError(f"value count must be at least 2, got {N}")
    M = N.bit_length() - 1  # 2^M <= N < 2^(M+1)
    weights = tuple(1 << s for s in range(M)) + (N + 1 - (1 << M),)
    return IntegerEncoding("log", weights, offset)


# ---------------------------------------------------------------------------
# qbsolv-style text format
# ---------------------------------------------------------------------------


def _format_coeff(c: float) -> str:
    return str(int(c)) if float(c).is_integer() and abs(c) < 2**53 else repr(float(c))


def to_qubo_text(qm: QuadraticModel, comment: str = "mmsearch qubo") -> str:
    """Render a quadratic model in qbsolv text format.

    Line 1 is a free-text comment, line 2 the problem line
    ``p qubo 0 <max_node_id+1> <n_diagonal> <n_offdiagonal>``, followed by a
    ``c offset`` comment and one ``i j coeff`` line per nonzero, sorted by
    (i, j) with i == j for linear terms.
    """
    offset = 0.0
    diag: list[tuple[int, float]] = []
    offdiag: list[tuple[int, int, float]] = []
    for vs, c in qm.poly.items():
        if len(vs) == 0:
            offset += c
        elif len(vs) == 1:
            diag.append((vs[0], c))
        else:
            offdiag.append((vs[0], vs[1], c))
    max_node = -1
    for i, _ in diag:
        max_node = max(max_node, i)
    for i, j, _ in offdiag:
        max_node = max(max_node, j)
    entries = sorted([(i, i, c) for i, c in diag] + offdiag)
    lines = [
        f"c {comment}",
        f"p qubo 0 {max_node + 1} {len(diag)} {len(offdiag)}",
        f"c offset {_format_coeff(offset)}",
    ]
    lines.extend(f"{i} {j} {_format_coeff(c)}" for i, j, c in entries)
    return "\n".join(lines) + "\n"


def parse_qubo_text(text: str) -> tuple[PseudoBooleanPolynomial, int]:
    """Parse qbsolv text back to a polynomial; returns (poly, num_nodes)."""
    num_nodes = 0
    n_diag = n_off = None
    terms: dict[VarSet, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c offset "):
            terms[()] = terms.get((), 0.0) + float(line.split()[2])
            continue
        if line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 6 or parts[1] != "qubo":
                raise ValueError(f"malformed problem line: {line!r}")
            num_nodes = int(parts[3])
            n_diag, n_off = int(parts[4]), int(parts[5])
            continue
        i, j, c = line.split()
        i, j = int(i), int(j)
        key = (i,) if i == j else (min(i, j), max(i, j))
        terms[key] = terms.get(key, 0.0) + float(c)
    if n_diag is None:
        raise ValueError("missing problem line")
    return PseudoBooleanPolynomial(num_nodes, terms), num_nodes

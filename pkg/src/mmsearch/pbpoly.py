"""Sparse multilinear (pseudo-Boolean) polynomials over binary variables.

A polynomial is a map from variable sets to coefficients:

    f(x) = sum_S  c_S * prod_{i in S} x_i,        x_i in {0, 1}

Variable sets are stored as strictly increasing tuples of integer ids; the
constant term uses the empty tuple.  Because x*x = x for binary x, repeated
variables in a product collapse, so every polynomial has a unique canonical
form with at most one term per variable set and no zero coefficients.

Coefficients are kept as 64-bit floats.  All objectives built by this package
are integer-valued, so evaluation and equality comparisons are exact.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

import numpy as np

VarSet = tuple[int, ...]


def _canonical_vars(vars: Iterable[int], num_vars: int) -> VarSet:
    """Sort, deduplicate and range-check a collection of variable ids."""
    vs = tuple(sorted(set(int(v) for v in vars)))
    if vs and (vs[0] < 0 or vs[-1] >= num_vars):
        raise ValueError(
            f"variable id out of range: {vs} for num_vars={num_vars}"
        )
    return vs


class PseudoBooleanPolynomial:
    """Immutable multilinear polynomial in canonical form.

    Parameters
    ----------
    num_vars : int
        Number of binary variables; valid ids are 0..num_vars-1.
    terms : mapping from iterable-of-ids to coefficient, optional
        Terms are canonicalized (sorted, deduplicated, like terms merged,
        zero coefficients dropped) on construction.
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping[Iterable[int], float] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = int(num_vars)
        canon: dict[VarSet, float] = {}
        if terms:
            for vs, coeff in terms.items():
                key = _canonical_vars(vs, self.num_vars)
                c = canon.get(key, 0.0) + float(coeff)
                if c == 0.0:
                    canon.pop(key, None)
                else:
                    canon[key] = c
        self._terms = canon

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "PseudoBooleanPolynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: float) -> "PseudoBooleanPolynomial":
        return cls(num_vars, {(): value})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "PseudoBooleanPolynomial":
        return cls(num_vars, {(i,): 1.0})

    def add_term(self, vars: Iterable[int], coeff: float) -> "PseudoBooleanPolynomial":
        """Return a new polynomial with ``coeff * prod(vars)`` added."""
        key = _canonical_vars(vars, self.num_vars)
        new = dict(self._terms)
        c = new.get(key, 0.0) + float(coeff)
        if c == 0.0:
            new.pop(key, None)
        else:
            new[key] = c
        return self._from_canonical(self.num_vars, new)

    @classmethod
    def _from_canonical(cls, num_vars: int, terms: dict[VarSet, float]) -> "PseudoBooleanPolynomial":
        # Internal fast path: `terms` must already be canonical.
        poly = cls.__new__(cls)
        poly.num_vars = num_vars
        poly._terms = terms
        return poly

    # -- inspection --------------------------------------------------------

    def degree(self) -> int:
        """Largest term cardinality; the empty polynomial has degree 0."""
        return max((len(vs) for vs in self._terms), default=0)

    def num_terms(self) -> int:
        return len(self._terms)

    def interaction_count(self, d: int) -> int:
        """Number of stored terms involving exactly ``d`` variables."""
        return sum(1 for vs in self._terms if len(vs) == d)

    def coefficient(self, vars: Iterable[int]) -> float:
        return self._terms.get(_canonical_vars(vars, self.num_vars), 0.0)

    def items(self) -> list[tuple[VarSet, float]]:
        """Terms as (var_set, coeff) pairs, sorted lexicographically."""
        return sorted(self._terms.items())

    def terms_dict(self) -> dict[VarSet, float]:
        return dict(self._terms)

    def abs_coeff_sum(self) -> float:
        return sum(abs(c) for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PseudoBooleanPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"PseudoBooleanPolynomial({self.num_vars}, 0)"
        parts = []
        for vs, c in self.items()[:8]:
            mono = "*".join(f"x{i}" for i in vs) if vs else "1"
            parts.append(f"{c:+g}*{mono}")
        tail = " ..." if len(self._terms) > 8 else ""
        return f"PseudoBooleanPolynomial({self.num_vars}, {' '.join(parts)}{tail})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "PseudoBooleanPolynomial") -> "PseudoBooleanPolynomial":
        self._check_same_vars(other)
        out = dict(self._terms)
        for vs, c in other._terms.items():
            s = out.get(vs, 0.0) + c
            if s == 0.0:
                out.pop(vs, None)
            else:
                out[vs] = s
        return self._from_canonical(self.num_vars, out)

    def __sub__(self, other: "PseudoBooleanPolynomial") -> "PseudoBooleanPolynomial":
        return self + other.scale(-1.0)

    def scale(self, factor: float) -> "PseudoBooleanPolynomial":
        if factor == 0.0:
            return self.zero(self.num_vars)
        return self._from_canonical(
            self.num_vars, {vs: c * factor for vs, c in self._terms.items()}
        )

    def multiply(self, other: "PseudoBooleanPolynomial") -> "PseudoBooleanPolynomial":
        """Product in canonical multilinear form (x_i * x_i collapses)."""
        self._check_same_vars(other)
        out: dict[VarSet, float] = {}
        for vs1, c1 in self._terms.items():
            s1 = set(vs1)
            for vs2, c2 in other._terms.items():
                key = tuple(sorted(s1.union(vs2)))
                s = out.get(key, 0.0) + c1 * c2
                if s == 0.0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return self._from_canonical(self.num_vars, out)

    __mul__ = multiply

    def _check_same_vars(self, other: "PseudoBooleanPolynomial") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"variable-count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, assignment) -> float:
        """Evaluate at a 0/1 assignment (sequence of length num_vars)."""
        a = np.asarray(assignment)
        if a.shape != (self.num_vars,):
            raise ValueError(
                f"assignment length {a.shape} does not match num_vars={self.num_vars}"
            )
        total = 0.0
        for vs, c in self._terms.items():
            for i in vs:
                if not a[i]:
                    break
            else:
                total += c
        return total

    def evaluate_many(self, assignments) -> np.ndarray:
        """Evaluate at many assignments (rows of a 2-D 0/1 array) at once.

        Dispatches to the accelerated kernel; equivalent to calling
        ``evaluate`` per row but far faster for large batches.
        """
        from . import _kernels

        a = np.ascontiguousarray(assignments, dtype=np.uint8)
        if a.ndim != 2 or a.shape[1] != self.num_vars:
            raise ValueError(
                f"assignments must have shape (N, {self.num_vars}), got {a.shape}"
            )
        return _kernels.eval_batch(self, a)

    # -- serialization -----------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "terms": [
                {"vars": list(vs), "coeff": _json_number(c)} for vs, c in self.items()
            ],
        }

    def to_json(self) -> str:
        """Deterministic JSON: terms sorted lexicographically by var set."""
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PseudoBooleanPolynomial":
        terms: dict[VarSet, float] = {}
        for t in obj["terms"]:
            key = tuple(t["vars"])
            terms[key] = terms.get(key, 0.0) + float(t["coeff"])
        return cls(int(obj["num_vars"]), terms)

    @classmethod
    def from_json(cls, text: str) -> "PseudoBooleanPolynomial":
        return cls.from_json_obj(json.loads(text))


def _json_number(c: float):
    """Render integer-valued coefficients as JSON integers."""
    return int(c) if float(c).is_integer() and abs(c) < 2**53 else c


class PolyAccumulator:
    """Mutable helper for bulk polynomial construction.

    Used by the objective builders, which add hundreds of thousands of terms;
    accumulating in place avoids the copy-per-term cost of
    ``PseudoBooleanPolynomial.add_term``.
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self._terms: dict[VarSet, float] = {}

    def add(self, vars: Iterable[int], coeff: float) -> None:
        key = _canonical_vars(vars, self.num_vars)
        c = self._terms.get(key, 0.0) + coeff
        if c == 0.0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = c

    def add_canonical(self, key: VarSet, coeff: float) -> None:
        # Caller guarantees `key` is sorted, unique and in range.
        c = self._terms.get(key, 0.0) + coeff
        if c == 0.0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = c

    def build(self) -> PseudoBooleanPolynomial:
        poly = PseudoBooleanPolynomial._from_canonical(self.num_vars, self._terms)
        self._terms = {}
        return poly


class VariableRegistry:
    """Bijective map between semantic variable names and dense integer ids."""

    __slots__ = ("_name_to_id", "_names")

    def __init__(self):
        self._name_to_id: dict[str, int] = {}
        self._names: list[str] = []

    def add(self, name: str) -> int:
        if name in self._name_to_id:
            raise ValueError(f"duplicate variable name: {name!r}")
        vid = len(self._names)
        self._name_to_id[name] = vid
        self._names.append(name)
        return vid

    def id_of(self, name: str) -> int:
        return self._name_to_id[name]

    def name_of(self, vid: int) -> str:
        return self._names[vid]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._name_to_id

    def names(self) -> list[str]:
        return list(self._names)

    def to_json_obj(self) -> dict:
        return {
            "variables": [
                {"id": i, "name": name} for i, name in enumerate(self._names)
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "VariableRegistry":
        reg = cls()
        entries = sorted(obj["variables"], key=lambda e: e["id"])
        for i, entry in enumerate(entries):
            if entry["id"] != i:
                raise ValueError("registry ids must be dense 0..n-1")
            reg.add(entry["name"])
        return reg

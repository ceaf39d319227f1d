"""Dense 3-way integer tensors, rank-one triples and decompositions.

The central object is the matrix-multiplication tensor for multiplying an
n x m matrix by an m x p matrix.  It lives in a (n*m, m*p, p*n) array with
the index convention

    axis 0: first operand flattened row-major        (i*m + j)
    axis 1: second operand flattened row-major       (j*p + k)
    axis 2: output flattened transposed              (k*n + i)

so entry (i*m+j, j*p+k, k*n+i) = 1 marks that A[i,j]*B[j,k] contributes to
C[i,k].  Tensors carry a field tag: "R" for integer arithmetic, "F2" for
arithmetic modulo 2 (where subtraction and addition coincide).

Largest supported shapes are tiny (a few thousand entries), so everything is
dense and exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

FIELD_R = "R"
FIELD_F2 = "F2"


class ShapeError(ValueError):
    """Dimension mismatch between tensors, triples or matrices."""


class FieldError(ValueError):
    """Operands tagged with incompatible scalar fields."""


def _check_field(f: str) -> str:
    if f not in (FIELD_R, FIELD_F2):
        raise FieldError(f"unknown field tag: {f!r}")
    return f


@dataclass(frozen=True)
class MatMulShape:
    """Problem dimensions: multiply an n x m matrix by an m x p matrix."""

    n: int
    m: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.p < 1:
            raise ValueError(f"dimensions must be positive: {self}")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.n * self.m, self.m * self.p, self.p * self.n)

    @property
    def standard_rank(self) -> int:
        return self.n * self.m * self.p


class Tensor3:
    """Integer 3-way tensor with a field tag."""

    __slots__ = ("shape", "field", "data")

    def __init__(self, shape: MatMulShape, data: np.ndarray, field: str = FIELD_R):
        self.shape = shape
        self.field = _check_field(field)
        arr = np.asarray(data, dtype=np.int64)
        if arr.shape != shape.dims:
            raise ShapeError(f"tensor data {arr.shape} does not match {shape.dims}")
        if field == FIELD_F2 and not np.isin(arr, (0, 1)).all():
            raise FieldError("F2 tensor entries must be 0 or 1")
        self.data = arr

    @classmethod
    def zeros(cls, shape: MatMulShape, field: str = FIELD_R) -> "Tensor3":
        return cls(shape, np.zeros(shape.dims, dtype=np.int64), field)

    def copy(self) -> "Tensor3":
        return Tensor3(self.shape, self.data.copy(), self.field)

    def to_field(self, field: str) -> "Tensor3":
        """Return this tensor in the given field (mod-2 projection for F2)."""
        _check_field(field)
        if field == FIELD_F2:
            return Tensor3(self.shape, np.mod(self.data, 2), FIELD_F2)
        return Tensor3(self.shape, self.data.copy(), FIELD_R)

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and np.array_equal(self.data, other.data)
        )

    def __repr__(self) -> str:
        return f"Tensor3({self.shape}, field={self.field}, nnz={self.nonzero_count()})"

    def to_json_obj(self) -> dict:
        nz = []
        for (i, j, k), v in np.ndenumerate(self.data):
            if v != 0:
                nz.append([int(i), int(j), int(k), int(v)])
        nz.sort()
        return {
            "shape": {"n": self.shape.n, "m": self.shape.m, "p": self.shape.p},
            "field": self.field,
            "nonzeros": nz,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Tensor3":
        shape = MatMulShape(obj["shape"]["n"], obj["shape"]["m"], obj["shape"]["p"])
        data = np.zeros(shape.dims, dtype=np.int64)
        for i, j, k, v in obj["nonzeros"]:
            data[i, j, k] = v
        return cls(shape, data, obj["field"])

    @classmethod
    def from_json(cls, text: str) -> "Tensor3":
        return cls.from_json_obj(json.loads(text))


class RankOneTriple:
    """Vectors (x, y, z) whose outer product is one rank-one tensor term."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x = np.asarray(x, dtype=np.int64)
        self.y = np.asarray(y, dtype=np.int64)
        self.z = np.asarray(z, dtype=np.int64)
        if self.x.ndim != 1 or self.y.ndim != 1 or self.z.ndim != 1:
            raise ShapeError("triple components must be vectors")

    def lengths(self) -> tuple[int, int, int]:
        return (len(self.x), len(self.y), len(self.z))

    def is_zero(self) -> bool:
        return not (self.x.any() and self.y.any() and self.z.any())

    def mod2(self) -> "RankOneTriple":
        return RankOneTriple(self.x % 2, self.y % 2, self.z % 2)

    def negate(self) -> "RankOneTriple":
        """Flip the sign of the induced tensor by negating the x component."""
        return RankOneTriple(-self.x, self.y, self.z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankOneTriple):
            return NotImplemented
        return (
            np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.z, other.z)
        )

    def __repr__(self) -> str:
        return f"RankOneTriple({self.x.tolist()}, {self.y.tolist()}, {self.z.tolist()})"

    def to_json_obj(self) -> dict:
        return {"x": self.x.tolist(), "y": self.y.tolist(), "z": self.z.tolist()}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RankOneTriple":
        return cls(obj["x"], obj["y"], obj["z"])


@dataclass
class Decomposition:
    """Ordered list of rank-one triples summing to a target tensor."""

    shape: MatMulShape
    field: str
    factors: list[RankOneTriple] = field(default_factory=list)

    def __post_init__(self):
        _check_field(self.field)
        for t in self.factors:
            self._check_factor(t)

    def _check_factor(self, t: RankOneTriple) -> None:
        if t.lengths() != self.shape.dims:
            raise ShapeError(
                f"factor lengths {t.lengths()} do not match {self.shape.dims}"
            )
        if t.is_zero():
            raise ValueError("decomposition factors must be nonzero")

    def rank(self) -> int:
        return len(self.factors)

    def append(self, t: RankOneTriple) -> None:
        self._check_factor(t)
        self.factors.append(t)

    def to_json_obj(self) -> dict:
        return {
            "shape": {"n": self.shape.n, "m": self.shape.m, "p": self.shape.p},
            "field": self.field,
            "factors": [t.to_json_obj() for t in self.factors],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Decomposition":
        shape = MatMulShape(obj["shape"]["n"], obj["shape"]["m"], obj["shape"]["p"])
        factors = [RankOneTriple.from_json_obj(f) for f in obj["factors"]]
        return cls(shape, obj["field"], factors)

    @classmethod
    def from_json(cls, text: str) -> "Decomposition":
        return cls.from_json_obj(json.loads(text))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def standard_tensor(shape: MatMulShape, field: str = FIELD_R) -> Tensor3:
    """Tensor of the standard matrix-multiplication algorithm.

    Sets entry (i*m+j, j*p+k, k*n+i) = 1 for all i < n, j < m, k < p, giving
    exactly n*m*p ones.
    """
    data = np.zeros(shape.dims, dtype=np.int64)
    n, m, p = shape.n, shape.m, shape.p
    for i in range(n):
        for j in range(m):
            for k in range(p):
                data[i * m + j, j * p + k, k * n + i] = 1
    return Tensor3(shape, data, field)


def rank_one(t: RankOneTriple, shape: MatMulShape, field: str = FIELD_R) -> Tensor3:
    """Outer product x (x) y (x) z as a Tensor3; entry (i,j,k) = x_i y_j z_k."""
    if t.lengths() != shape.dims:
        raise ShapeError(f"triple lengths {t.lengths()} do not match {shape.dims}")
    data = np.einsum("i,j,k->ijk", t.x, t.y, t.z)
    if field == FIELD_F2:
        data = np.mod(data, 2)
    return Tensor3(shape, data, field)


def hamming_distance(a: Tensor3, b: Tensor3) -> int:
    """Sum of absolute entry differences (count of differing cells over F2)."""
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return int(np.abs(a.data - b.data).sum())


def subtract(a: Tensor3, t: RankOneTriple, field: str | None = None) -> Tensor3:
    """a - x(x)y(x)z, entry-wise over Z or reduced mod 2 over F2."""
    f = _check_field(field) if field is not None else a.field
    if t.lengths() != a.shape.dims:
        raise ShapeError(f"triple lengths {t.lengths()} do not match {a.shape.dims}")
    diff = a.data - np.einsum("i,j,k->ijk", t.x, t.y, t.z)
    if f == FIELD_F2:
        diff = np.mod(diff, 2)
    return Tensor3(a.shape, diff, f)


def sum_decomposition(d: Decomposition) -> Tensor3:
    """Entry-wise sum of the rank-one factors (mod 2 when field is F2)."""
    total = np.zeros(d.shape.dims, dtype=np.int64)
    for t in d.factors:
        total += np.einsum("i,j,k->ijk", t.x, t.y, t.z)
    if d.field == FIELD_F2:
        total = np.mod(total, 2)
    return Tensor3(d.shape, total, d.field)


def standard_decomposition(shape: MatMulShape, field: str = FIELD_R) -> Decomposition:
    """The rank n*m*p decomposition with one unit triple per (i, j, k)."""
    nm, mp, pn = shape.dims
    factors = []
    for i in range(shape.n):
        for j in range(shape.m):
            for k in range(shape.p):
                x = np.zeros(nm, dtype=np.int64)
                y = np.zeros(mp, dtype=np.int64)
                z = np.zeros(pn, dtype=np.int64)
                x[i * shape.m + j] = 1
                y[j * shape.p + k] = 1
                z[k * shape.n + i] = 1
                factors.append(RankOneTriple(x, y, z))
    return Decomposition(shape, field, factors)

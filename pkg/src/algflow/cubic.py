"""Dense cubic-matrix arithmetic.

A cubic matrix is an m*m*m real array q_{ijk}, regarded as a vector in the
m^3-dimensional space spanned by the unit matrices E_{ijk} (a single 1 at
position (i,j,k)).  Two multiplications are provided:

* the type-C product
      c_{ijr} = sum_k a_{ijk} * b_{kjr},
  which is an ordinary square-matrix product on each slice of fixed middle
  index j;
* the general delta-based family
      E_{ijk} *_a E_{lnr} = delta_{kl} * E_{i a(j,n) r},
  extended bilinearly, where a is an arbitrary associative binary operation
  on the index set {1..m}.

Public signatures use 1-based indices, matching the usual structure-constant
notation; the backing numpy arrays are 0-based.  All values are immutable
after construction and every operation is a pure function, so everything in
this module is safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "CubicTensor",
    "BinaryOpTable",
    "basis_unit",
    "add",
    "scale",
    "mul_type_c",
    "mul_general",
    "slice_j",
    "from_middle_slices",
    "tensor_to_json_dict",
    "tensor_from_json_dict",
]


@dataclass(frozen=True, eq=False)
class CubicTensor:
    """An m x m x m real array of entries c_{ijk}, all finite."""

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise ValueError(f"expected an m x m x m array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("all entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def entry(self, i: int, j: int, k: int) -> float:
        """Entry c_{ijk} with 1-based indices."""
        _check_index(self.dim, i=i, j=j, k=k)
        return float(self.values[i - 1, j - 1, k - 1])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubicTensor):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"CubicTensor(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class BinaryOpTable:
    """A total binary operation a(j,n) on the index set {1..m}.

    ``values`` stores the table 0-based; ``from_function`` and ``__call__``
    speak the 1-based convention of the rest of the API.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=int)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square table, got shape {arr.shape}")
        m = arr.shape[0]
        if m < 1:
            raise ValueError("dimension must be at least 1")
        if np.any(arr < 0) or np.any(arr >= m):
            raise ValueError("table values must map into the index set")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_function(cls, m: int, fn: Callable[[int, int], int]) -> "BinaryOpTable":
        """Tabulate a 1-based operation (j, n) -> fn(j, n) over {1..m}^2."""
        table = np.empty((m, m), dtype=int)
        for j in range(1, m + 1):
            for n in range(1, m + 1):
                table[j - 1, n - 1] = fn(j, n) - 1
        return cls(table)

    @classmethod
    def left_projection(cls, m: int) -> "BinaryOpTable":
        """The associative operation a(j, n) = j."""
        return cls.from_function(m, lambda j, n: j)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def __call__(self, j: int, n: int) -> int:
        _check_index(self.dim, j=j, n=n)
        return int(self.values[j - 1, n - 1]) + 1

    def is_associative(self) -> bool:
        """Brute-force a(a(j,n),r) = a(j,a(n,r)) over all index triples."""
        t = self.values
        m = self.dim
        for j in range(m):
            for n in range(m):
                for r in range(m):
                    if t[t[j, n], r] != t[j, t[n, r]]:
                        return False
        return True

    def check_associative(self) -> None:
        if not self.is_associative():
            raise ValueError("binary operation table is not associative")


def _check_index(m: int, **named: int) -> None:
    for name, value in named.items():
        if not 1 <= value <= m:
            raise ValueError(f"index {name}={value} out of range 1..{m}")


def basis_unit(m: int, i: int, j: int, k: int) -> CubicTensor:
    """The unit cubic matrix E_{ijk}: a single 1 at (i,j,k), 1-based."""
    _check_index(m, i=i, j=j, k=k)
    values = np.zeros((m, m, m))
    values[i - 1, j - 1, k - 1] = 1.0
    return CubicTensor(values)


def _check_same_dim(a: CubicTensor, b: CubicTensor) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def add(a: CubicTensor, b: CubicTensor) -> CubicTensor:
    """Entrywise sum."""
    _check_same_dim(a, b)
    return CubicTensor(a.values + b.values)


def scale(lam: float, a: CubicTensor) -> CubicTensor:
    """Entrywise scaling by a real number."""
    return CubicTensor(lam * a.values)


def mul_type_c(a: CubicTensor, b: CubicTensor) -> CubicTensor:
    """Type-C product: c_{ijr} = sum_k a_{ijk} * b_{kjr}.

    Implemented as an ordinary matrix product per fixed middle index j, so
    slice_j(mul_type_c(a, b)) equals slice_j(a) @ slice_j(b) bit-exactly
    (same summation path).
    """
    _check_same_dim(a, b)
    av, bv = a.values, b.values
    out = np.empty_like(av)
    for j in range(a.dim):
        out[:, j, :] = av[:, j, :] @ bv[:, j, :]
    return CubicTensor(out)


def mul_general(a: CubicTensor, b: CubicTensor, op: BinaryOpTable) -> CubicTensor:
    """Bilinear extension of E_{ijk} *_op E_{lnr} = delta_{kl} E_{i op(j,n) r}.

    The middle output index collects every (j, n) pair in the fiber of op:
    c_{i,p,r} = sum over op(j,n)=p of sum_k a_{ijk} * b_{knr}.
    """
    _check_same_dim(a, b)
    if op.dim != a.dim:
        raise ValueError(f"dimension mismatch: op has dim {op.dim}, tensors {a.dim}")
    av, bv = a.values, b.values
    out = np.zeros_like(av)
    for j in range(a.dim):
        for n in range(a.dim):
            p = op.values[j, n]
            out[:, p, :] += av[:, j, :] @ bv[:, n, :]
    return CubicTensor(out)


def slice_j(a: CubicTensor, j: int) -> np.ndarray:
    """The m x m matrix S with S[i][k] = a_{ijk} for fixed middle index j (1-based)."""
    _check_index(a.dim, j=j)
    return np.array(a.values[:, j - 1, :])


def from_middle_slices(slices: list[np.ndarray] | tuple[np.ndarray, ...]) -> CubicTensor:
    """Assemble a tensor from its fixed-middle-index slices, in order j = 1..m."""
    m = len(slices)
    values = np.empty((m, m, m))
    for j, s in enumerate(slices):
        s = np.asarray(s, dtype=float)
        if s.shape != (m, m):
            raise ValueError(f"slice {j + 1} has shape {s.shape}, expected {(m, m)}")
        values[:, j, :] = s
    return CubicTensor(values)


def tensor_to_json_dict(a: CubicTensor) -> dict:
    """JSON form {"dim": m, "c": [[[...]]]}, index order i -> j -> k, 0-based."""
    return {"dim": a.dim, "c": a.values.tolist()}


def tensor_from_json_dict(data: dict) -> CubicTensor:
    if "dim" not in data or "c" not in data:
        raise ValueError('expected keys "dim" and "c"')
    tensor = CubicTensor(np.array(data["c"], dtype=float))
    if tensor.dim != int(data["dim"]):
        raise ValueError(f'entry shape {tensor.dim} disagrees with "dim": {data["dim"]}')
    return tensor

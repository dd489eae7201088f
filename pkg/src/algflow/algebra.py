"""Finite-dimensional algebras over a structure tensor.

An algebra with basis e_1..e_m is encoded by its structure constants
c_{ijk}: the bilinear product is e_i e_j = sum_k c_{ijk} e_k.  This module
provides the product of coordinate vectors, commutativity and associativity
predicates, change of basis with an explicit transformation formula, and the
2 x 4 matrix form used for two-dimensional algebras (row k holds c_{ijk} with
columns ordered (1,1), (1,2), (2,1), (2,2)).

Everything is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cubic import CubicTensor, tensor_from_json_dict, tensor_to_json_dict

__all__ = [
    "DEFAULT_TOL",
    "EPS_DET",
    "AlgebraFD",
    "BasisChange",
    "StructMatrix2x4",
    "product",
    "is_commutative",
    "commutativity_residual",
    "is_associative",
    "associativity_residual",
    "change_of_basis",
    "to_2x4",
    "from_2x4",
    "rank_2x4",
    "algebra_to_json_dict",
    "algebra_from_json_dict",
]

# Inputs are O(1) trig values, so double precision leaves ample margin.
DEFAULT_TOL = 1e-9
# Minimum |det| for a change of basis to count as invertible.
EPS_DET = 1e-10


@dataclass(frozen=True, eq=False)
class AlgebraFD:
    """A finite-dimensional algebra: its structure-constant tensor."""

    constants: CubicTensor

    @property
    def dim(self) -> int:
        return self.constants.dim

    @classmethod
    def zero(cls, m: int) -> "AlgebraFD":
        return cls(CubicTensor(np.zeros((m, m, m))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraFD):
            return NotImplemented
        return self.constants == other.constants

    def __repr__(self) -> str:
        return f"AlgebraFD(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class StructMatrix2x4:
    """The 2 x 4 matrix of structure constants of a two-dimensional algebra.

    Row k lists c_{ijk} over columns (i,j) = (1,1), (1,2), (2,1), (2,2);
    the rows are often written (alpha_1..alpha_4) and (beta_1..beta_4).
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.shape != (2, 4):
            raise ValueError(f"expected shape (2, 4), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("all entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructMatrix2x4):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))


@dataclass(frozen=True, eq=False)
class BasisChange:
    """An invertible change of basis.

    Row i of ``matrix`` holds the coordinates of the new basis vector e'_i in
    the old basis: e'_i = sum_p P_ip e_p.  For m = 2 the rows are (x1, x2)
    and (y1, y2), and invertibility means x1*y2 != x2*y1.

    Degenerate matrices are rejected at construction, not at use.
    """

    matrix: np.ndarray
    eps_det: float = EPS_DET

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("all entries must be finite")
        det = float(np.linalg.det(arr)) if arr.shape[0] > 2 else _det_small(arr)
        if abs(det) <= self.eps_det:
            raise ValueError(f"matrix is singular to tolerance: |det| = {abs(det):.3e}")
        arr.flags.writeable = False
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def identity(cls, m: int) -> "BasisChange":
        return cls(np.eye(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def det(self) -> float:
        if self.dim <= 2:
            return _det_small(self.matrix)
        return float(np.linalg.det(self.matrix))

    def inverse(self) -> np.ndarray:
        """Closed-form adjugate for m = 2 (exact for exact inputs), LU otherwise."""
        p = self.matrix
        if self.dim == 1:
            return np.array([[1.0 / p[0, 0]]])
        if self.dim == 2:
            d = _det_small(p)
            return np.array([[p[1, 1], -p[0, 1]], [-p[1, 0], p[0, 0]]]) / d
        return np.linalg.inv(p)

    def _entry2(self, r: int, c: int) -> float:
        if self.dim != 2:
            raise ValueError("named entries are defined for dim 2 only")
        return float(self.matrix[r, c])

    # Row entries of the 2 x 2 case, (x1, x2) over (y1, y2).
    @property
    def x1(self) -> float:
        return self._entry2(0, 0)

    @property
    def x2(self) -> float:
        return self._entry2(0, 1)

    @property
    def y1(self) -> float:
        return self._entry2(1, 0)

    @property
    def y2(self) -> float:
        return self._entry2(1, 1)

    # The row sums and differences u = x1+x2, v = y1+y2, alpha = x1-x2,
    # beta = y1-y2 that drive the two-dimensional isomorphism analysis.
    @property
    def u(self) -> float:
        return self.x1 + self.x2

    @property
    def v(self) -> float:
        return self.y1 + self.y2

    @property
    def alpha(self) -> float:
        return self.x1 - self.x2

    @property
    def beta(self) -> float:
        return self.y1 - self.y2

    def __repr__(self) -> str:
        return f"BasisChange({self.matrix.tolist()})"


def _det_small(p: np.ndarray) -> float:
    if p.shape == (1, 1):
        return float(p[0, 0])
    return float(p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0])


def product(algebra: AlgebraFD, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The algebra product of coordinate vectors: z_k = sum_{i,j} x_i y_j c_{ijk}."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (algebra.dim,) or y.shape != (algebra.dim,):
        raise ValueError(
            f"vector shapes {x.shape}, {y.shape} do not match dim {algebra.dim}"
        )
    return np.einsum("i,j,ijk->k", x, y, algebra.constants.values)


def commutativity_residual(algebra: AlgebraFD) -> float:
    """max |c_ijk - c_jik|; zero iff the algebra is commutative."""
    c = algebra.constants.values
    return float(np.max(np.abs(c - c.transpose(1, 0, 2))))


def is_commutative(algebra: AlgebraFD, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return commutativity_residual(algebra) <= tol


def associativity_residual(algebra: AlgebraFD) -> float:
    """max |sum_r c_ijr c_rkl - sum_r c_irl c_jkr| over all (i,j,k,l).

    The two contractions are the coefficients of (e_i e_j) e_k and
    e_i (e_j e_k); the residual is zero iff the algebra is associative.
    """
    c = algebra.constants.values
    lhs = np.einsum("ijr,rkl->ijkl", c, c)
    rhs = np.einsum("irl,jkr->ijkl", c, c)
    return float(np.max(np.abs(lhs - rhs)))


def is_associative(algebra: AlgebraFD, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return associativity_residual(algebra) <= tol


def change_of_basis(algebra: AlgebraFD, p: BasisChange) -> AlgebraFD:
    """The same algebra expressed in the basis e'_i = sum_p P_ip e_p.

    New constants: c'_{ijk} = sum_{p,q,r} P_ip P_jq c_pqr (P^-1)_rk.
    """
    if p.dim != algebra.dim:
        raise ValueError(f"dimension mismatch: {p.dim} != {algebra.dim}")
    c = algebra.constants.values
    new = np.einsum("ip,jq,pqr,rk->ijk", p.matrix, p.matrix, c, p.inverse())
    return AlgebraFD(CubicTensor(new))


def to_2x4(algebra: AlgebraFD) -> StructMatrix2x4:
    """The 2 x 4 structure-constant matrix of a two-dimensional algebra."""
    if algebra.dim != 2:
        raise ValueError(f"2 x 4 form requires dim 2, got {algebra.dim}")
    # (i,j,k) -> rows k, columns (i,j) in order (1,1),(1,2),(2,1),(2,2).
    return StructMatrix2x4(algebra.constants.values.reshape(4, 2).T)


def from_2x4(m2x4: StructMatrix2x4) -> AlgebraFD:
    return AlgebraFD(CubicTensor(m2x4.values.T.reshape(2, 2, 2)))


def rank_2x4(algebra: AlgebraFD, threshold: float = 1e-8) -> int:
    """Numerical rank of the 2 x 4 form via singular values."""
    s = np.linalg.svd(to_2x4(algebra).values, compute_uv=False)
    return int(np.sum(s > threshold))


def algebra_to_json_dict(algebra: AlgebraFD) -> dict:
    """Dim-2 algebras serialize through the 2 x 4 form, others as raw tensors."""
    if algebra.dim == 2:
        return {"dim": 2, "c2x4": to_2x4(algebra).values.tolist()}
    return tensor_to_json_dict(algebra.constants)


def algebra_from_json_dict(data: dict) -> AlgebraFD:
    if "c2x4" in data:
        if int(data.get("dim", 2)) != 2:
            raise ValueError('"c2x4" form requires dim 2')
        return from_2x4(StructMatrix2x4(np.array(data["c2x4"], dtype=float)))
    return AlgebraFD(tensor_from_json_dict(data))

"""The rotational flow of two-dimensional algebras.

A flow assigns to each pair of times 0 <= s <= t an algebra A^[s,t] whose
structure tensors satisfy the Kolmogorov-Chapman equation under the type-C
product:

    M^[s,t] = M^[s,tau] * M^[tau,t]   for all 0 <= s < tau < t.

Because the type-C product acts independently on each fixed-middle-index
slice, a one-parameter family of 2 x 2 matrices a(d) with the semigroup
property a(d1 + d2) = a(d1) a(d2) induces such a flow by pairing a(d) with
its transpose:

    c_{i1r} = a_{ir},   c_{i2r} = a_{ri}.

The built-in solution is the rotation family a(d) = [[cos d, sin d],
[-sin d, cos d]]; the resulting flow is time-homogeneous, so the tensor
depends only on the elapsed time d = t - s and we expose it as A^[d].

The flow algebra is commutative exactly when cos d = -sin d, i.e. on the
locus d = 3*pi/4 + pi*n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import AlgebraFD
from .cubic import CubicTensor, from_middle_slices, mul_type_c

__all__ = [
    "TimeInterval",
    "FlowFamily",
    "ROTATION_FAMILY",
    "rotation_matrix",
    "paired_tensor",
    "build_from_pair",
    "flow_tensor",
    "flow_algebra",
    "verify_kce",
    "verify_base_system",
    "commutativity_defect",
]

_GENERATOR_AT_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class TimeInterval:
    """An ordered pair of times 0 <= s <= t."""

    s: float
    t: float

    def __post_init__(self) -> None:
        if not 0 <= self.s <= self.t:
            raise ValueError(f"need 0 <= s <= t, got s={self.s}, t={self.t}")

    @property
    def duration(self) -> float:
        return self.t - self.s


@dataclass(frozen=True)
class FlowFamily:
    """A one-parameter semigroup of 2 x 2 matrices and its induced flow.

    ``generator`` maps the elapsed time d to a 2 x 2 matrix a(d); the flow
    tensor pairs a(d) with its transpose as the two middle-index slices.
    The generator must satisfy a(0) = I (checked at construction to 1e-12);
    the semigroup property itself is what ``verify_base_system`` and
    ``verify_kce`` measure.
    """

    generator: Callable[[float], np.ndarray]
    name: str = field(default="custom")

    def __post_init__(self) -> None:
        at_zero = np.asarray(self.generator(0.0), dtype=float)
        if at_zero.shape != (2, 2):
            raise ValueError(f"generator must return 2 x 2 matrices, got {at_zero.shape}")
        if np.max(np.abs(at_zero - np.eye(2))) > _GENERATOR_AT_ZERO_TOL:
            raise ValueError("generator(0) must be the identity matrix")


def rotation_matrix(d: float) -> np.ndarray:
    """[[cos d, sin d], [-sin d, cos d]], the rotation solution of the base system."""
    c, s = math.cos(d), math.sin(d)
    return np.array([[c, s], [-s, c]])


ROTATION_FAMILY = FlowFamily(rotation_matrix, name="rotation")


def paired_tensor(mat: np.ndarray) -> CubicTensor:
    """The type-C structure tensor with slices (mat, mat^T)."""
    mat = np.asarray(mat, dtype=float)
    return from_middle_slices((mat, mat.T))


def build_from_pair(family: FlowFamily, d: float) -> CubicTensor:
    """Structure tensor of the family's algebra at elapsed time d."""
    return paired_tensor(family.generator(d))


def flow_tensor(d: float) -> CubicTensor:
    """Structure tensor of the rotation flow at elapsed time d."""
    return paired_tensor(rotation_matrix(d))


def flow_algebra(d: float) -> AlgebraFD:
    return AlgebraFD(flow_tensor(d))


def _check_triple(s: float, tau: float, t: float) -> None:
    if not 0 <= s < tau < t:
        raise ValueError(f"need 0 <= s < tau < t, got ({s}, {tau}, {t})")


def verify_kce(family: FlowFamily, s: float, tau: float, t: float) -> float:
    """Kolmogorov-Chapman residual of a time-homogeneous family.

    Returns max |M^[t-s] - M^[tau-s] * M^[t-tau]| entrywise, with * the
    type-C product.  Zero (up to rounding) certifies the composition law at
    this triple.
    """
    _check_triple(s, tau, t)
    whole = build_from_pair(family, t - s)
    split = mul_type_c(build_from_pair(family, tau - s), build_from_pair(family, t - tau))
    return float(np.max(np.abs(whole.values - split.values)))


def verify_base_system(family: FlowFamily, s: float, tau: float, t: float) -> float:
    """Residual of the 2 x 2 semigroup system a(t-s) = a(tau-s) a(t-tau)."""
    _check_triple(s, tau, t)
    whole = np.asarray(family.generator(t - s), dtype=float)
    split = np.asarray(family.generator(tau - s), dtype=float) @ np.asarray(
        family.generator(t - tau), dtype=float
    )
    return float(np.max(np.abs(whole - split)))


def commutativity_defect(d: float) -> float:
    """cos d + sin d; zero exactly on the commutative locus d = 3*pi/4 + pi*n."""
    return math.cos(d) + math.sin(d)

"""Time classification of the rotation flow and canonical-form reduction.

The flow algebra A^[t] falls into one of five isomorphism classes,
pi-periodically in t:

    A1        at t = pi*k,
    A0Plus    at t = pi/2 + pi*k,
    A2        at t = 3*pi/4 + pi*k           (the commutative class),
    ACosPlus(|cos t|)   for t mod pi in (0, pi/2),
    ACosMinus(|cos t|)  for t mod pi in (pi/2, pi) minus the A2 times.

The parameter of the two continuous classes is |cos t| in (0, 1); the flip
of sign between cos t and sin t is absorbed into the plus/minus variant,
since the algebra with parameters (c, s) is carried onto (-c, -s) by
negating the basis.

Every nontrivial two-dimensional real algebra is isomorphic to exactly one
member of the fifteen parametrized canonical families A_1..A_15 of Bekbaev's
classification, given here as 2 x 4 structure-constant matrices.  Each flow
class reduces to its canonical family by an explicit change of basis:

    A1           -> family 5 (1/2, 0)          via e1* = e1/2, e2* = -e1 + e2
    A0Plus       -> family 8 (0, 0)            via e1* = -(e1+e2)/2, e2* = (e1-e2)/2
    A2           -> family 3 (1/2, 0, 1/2)
    ACosPlus(c)  -> family 2 (1/2, 0, -s/(2c)) via e1* = (e1+e2)/(4c),
                                                    e2* = (e1-e2)/(2*sqrt(2cs))
    ACosMinus(c) -> family 3 (1/2, 0, s/(2c))  via the same matrix

with s = sqrt(1 - c^2); the returned basis change is validated against the
class representative before being handed out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraFD,
    BasisChange,
    StructMatrix2x4,
    from_2x4,
    is_associative,
)
from .flow import paired_tensor

__all__ = [
    "A1",
    "A0_PLUS",
    "A2",
    "ACOS_PLUS",
    "ACOS_MINUS",
    "FlowClassLabel",
    "BekbaevForm",
    "PARAM_COUNTS",
    "classify_time",
    "class_representative",
    "branch_tensor",
    "bekbaev_matrix",
    "to_bekbaev",
    "associativity_census",
    "label_to_json_dict",
    "label_from_json_dict",
]

A1 = "A1"
A0_PLUS = "A0Plus"
A2 = "A2"
ACOS_PLUS = "ACosPlus"
ACOS_MINUS = "ACosMinus"

_FIXED_VARIANTS = (A1, A0_PLUS, A2)
_PARAMETRIZED_VARIANTS = (ACOS_PLUS, ACOS_MINUS)

# Band half-width around the exceptional residues 0, pi/2, 3*pi/4 (mod pi).
CLASSIFY_TOL = 1e-9

# Residual bound the returned reduction certificate must meet.
_REDUCTION_TOL = 1e-10


@dataclass(frozen=True)
class FlowClassLabel:
    """An isomorphism class of the rotation flow; c is |cos t| in (0, 1)."""

    variant: str
    c: float | None = None

    def __post_init__(self) -> None:
        if self.variant in _FIXED_VARIANTS:
            if self.c is not None:
                raise ValueError(f"{self.variant} carries no parameter")
        elif self.variant in _PARAMETRIZED_VARIANTS:
            if self.c is None or not 0.0 < self.c < 1.0:
                raise ValueError(f"{self.variant} needs a parameter strictly in (0, 1)")
        else:
            raise ValueError(f"unknown class variant {self.variant!r}")

    def same_class(self, other: "FlowClassLabel", tol: float = CLASSIFY_TOL) -> bool:
        """Equal variant, and parameters equal to within tol where present."""
        if self.variant != other.variant:
            return False
        if self.c is None:
            return True
        return abs(self.c - other.c) <= tol

    def __str__(self) -> str:
        if self.c is None:
            return self.variant
        return f"{self.variant}({self.c:.12g})"


# Parameter vector length per canonical family 1..15.
PARAM_COUNTS = {
    1: 4, 2: 3, 3: 3, 4: 2, 5: 2, 6: 1, 7: 2, 8: 2, 9: 1, 10: 1,
    11: 0, 12: 0, 13: 0, 14: 0, 15: 0,
}

# Families whose first second-row parameter is constrained nonnegative.
_NONNEG_BETA1 = frozenset({2, 3, 7, 8})


@dataclass(frozen=True)
class BekbaevForm:
    """One of the fifteen canonical families with its parameter vector."""

    family: int
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.family not in PARAM_COUNTS:
            raise ValueError(f"family must be 1..15, got {self.family}")
        params = tuple(float(x) for x in self.params)
        if len(params) != PARAM_COUNTS[self.family]:
            raise ValueError(
                f"family {self.family} takes {PARAM_COUNTS[self.family]} parameters, "
                f"got {len(params)}"
            )
        if self.family in _NONNEG_BETA1 and params[1] < 0:
            raise ValueError(f"family {self.family} requires beta1 >= 0")
        object.__setattr__(self, "params", params)

    def to_json_dict(self) -> dict:
        return {"family": self.family, "params": list(self.params)}


def bekbaev_matrix(form: BekbaevForm) -> StructMatrix2x4:
    """The 2 x 4 structure-constant matrix of a canonical form."""
    p = form.params
    rows = {
        1: lambda: [[p[0], p[1], p[1] + 1, p[2]], [p[3], -p[0], 1 - p[0], -p[1]]],
        2: lambda: [[p[0], 0, 0, 1], [p[1], p[2], 1 - p[0], 0]],
        3: lambda: [[p[0], 0, 0, -1], [p[1], p[2], 1 - p[0], 0]],
        4: lambda: [[0, 1, 1, 0], [p[0], p[1], 1, -1]],
        5: lambda: [[p[0], 0, 0, 0], [0, p[1], 1 - p[0], 0]],
        6: lambda: [[p[0], 0, 0, 0], [1, 2 * p[0] - 1, 1 - p[0], 0]],
        7: lambda: [[p[0], 0, 0, 1], [p[1], 1 - p[0], -p[0], 0]],
        8: lambda: [[p[0], 0, 0, -1], [p[1], 1 - p[0], -p[0], 0]],
        9: lambda: [[0, 1, 1, 0], [p[0], 1, 0, -1]],
        10: lambda: [[p[0], 0, 0, 0], [0, 1 - p[0], -p[0], 0]],
        11: lambda: [[1 / 3, 0, 0, 0], [1, 2 / 3, -1 / 3, 0]],
        12: lambda: [[0, 1, 1, 0], [1, 0, 0, -1]],
        13: lambda: [[0, 1, 1, 0], [-1, 0, 0, -1]],
        14: lambda: [[0, 1, 1, 0], [0, 0, 0, -1]],
        15: lambda: [[0, 0, 0, 0], [1, 0, 0, 0]],
    }
    return StructMatrix2x4(np.array(rows[form.family](), dtype=float))


def classify_time(t: float, tol: float = CLASSIFY_TOL) -> FlowClassLabel:
    """Map a time to its flow class; congruences mod pi are tested to tol."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    r = math.fmod(t, math.pi)
    if abs(r) <= tol or abs(r - math.pi) <= tol:
        return FlowClassLabel(A1)
    if abs(r - math.pi / 2) <= tol:
        return FlowClassLabel(A0_PLUS)
    if abs(r - 3 * math.pi / 4) <= tol:
        return FlowClassLabel(A2)
    # Just outside the band |cos t| can round to 1.0; keep the parameter
    # inside the open interval the label requires.
    c = min(abs(math.cos(t)), math.nextafter(1.0, 0.0))
    if r < math.pi / 2:
        return FlowClassLabel(ACOS_PLUS, c)
    return FlowClassLabel(ACOS_MINUS, c)


def branch_tensor(cosine: float, sine: float) -> AlgebraFD:
    """Flow-shaped algebra with prescribed (cos, sin) entries.

    The plus/minus representatives are the instances (c, +sqrt(1-c^2)) and
    (c, -sqrt(1-c^2)); the builder itself accepts any value pair.
    """
    return AlgebraFD(paired_tensor(np.array([[cosine, sine], [-sine, cosine]])))


def class_representative(label: FlowClassLabel) -> AlgebraFD:
    """The representative structure tensor of a flow class, with exact entries."""
    if label.variant == A1:
        return branch_tensor(1.0, 0.0)
    if label.variant == A0_PLUS:
        return branch_tensor(0.0, 1.0)
    if label.variant == A2:
        r = math.sqrt(0.5)
        return branch_tensor(r, -r)
    s = math.sqrt(1.0 - label.c * label.c)
    if label.variant == ACOS_PLUS:
        return branch_tensor(label.c, s)
    return branch_tensor(label.c, -s)


def _reduction(label: FlowClassLabel) -> tuple[BekbaevForm, np.ndarray]:
    if label.variant == A1:
        return BekbaevForm(5, (0.5, 0.0)), np.array([[0.5, 0.0], [-1.0, 1.0]])
    if label.variant == A0_PLUS:
        return BekbaevForm(8, (0.0, 0.0)), np.array([[-0.5, -0.5], [0.5, -0.5]])
    if label.variant == A2:
        # The generic minus-branch formula at c = s = sqrt(1/2), where the
        # normalizer 2*sqrt(2cs) collapses to 2 exactly.
        a = math.sqrt(2.0) / 4.0
        return BekbaevForm(3, (0.5, 0.0, 0.5)), np.array([[a, a], [0.5, -0.5]])
    c = label.c
    s = math.sqrt(1.0 - c * c)
    a = 1.0 / (4.0 * c)
    b = 1.0 / (2.0 * math.sqrt(2.0 * c * s))
    p = np.array([[a, a], [b, -b]])
    if label.variant == ACOS_PLUS:
        return BekbaevForm(2, (0.5, 0.0, -s / (2.0 * c))), p
    return BekbaevForm(3, (0.5, 0.0, s / (2.0 * c))), p


def to_bekbaev(label: FlowClassLabel) -> tuple[BekbaevForm, BasisChange]:
    """Canonical form of a flow class plus the basis change that reaches it.

    The certificate is checked before being returned: transforming the class
    representative by it must reproduce the canonical matrix to 1e-10.
    """
    form, p_matrix = _reduction(label)
    certificate = BasisChange(p_matrix)
    from .isomorphism import iso_residual  # local import to avoid a cycle

    residual = iso_residual(
        class_representative(label), from_2x4(bekbaev_matrix(form)), certificate
    )
    if residual > _REDUCTION_TOL:
        raise AssertionError(
            f"canonical reduction residual {residual:.3e} exceeds {_REDUCTION_TOL:.1e} "
            f"for {label}"
        )
    return form, certificate


def associativity_census(
    c_grid: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    tol: float = CLASSIFY_TOL,
) -> list[tuple[FlowClassLabel, bool]]:
    """Associativity of every class representative; true exactly for A1 and A2."""
    labels = [FlowClassLabel(A1), FlowClassLabel(A0_PLUS), FlowClassLabel(A2)]
    labels += [FlowClassLabel(ACOS_PLUS, c) for c in c_grid]
    labels += [FlowClassLabel(ACOS_MINUS, c) for c in c_grid]
    return [(label, is_associative(class_representative(label), tol)) for label in labels]


def label_to_json_dict(label: FlowClassLabel) -> dict:
    out: dict = {"class": label.variant}
    if label.c is not None:
        out["c"] = label.c
    return out


def label_from_json_dict(data: dict) -> FlowClassLabel:
    if "class" not in data:
        raise ValueError('expected key "class"')
    return FlowClassLabel(data["class"], data.get("c"))

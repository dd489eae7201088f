"""Isomorphism deciders: residual, numeric search, exact case analysis."""

import math

import numpy as np
import pytest

from algflow.algebra import AlgebraFD, BasisChange
from algflow.classification import (
    A1,
    A0_PLUS,
    FlowClassLabel,
    class_representative,
)
from algflow.cubic import CubicTensor
from algflow.flow import flow_algebra
from algflow.isomorphism import (
    KIND_ISOMORPHIC,
    KIND_NOT_FOUND_WITHIN_BUDGET,
    KIND_NOT_ISOMORPHIC_EXACT,
    InvariantSignature,
    IsoVerdict,
    SearchConfig,
    invariant_signature,
    iso_residual,
    iso_search,
    rotation_iso,
)

A1_REP = class_representative(FlowClassLabel(A1))
A0_REP = class_representative(FlowClassLabel(A0_PLUS))
NEG_A1 = AlgebraFD(CubicTensor(-A1_REP.constants.values))


class TestIsoResidual:
    def test_negated_basis_between_sign_twins(self):
        p = BasisChange(-np.eye(2))
        assert iso_residual(A1_REP, NEG_A1, p) < 1e-15

    def test_identity_on_equal_algebras(self):
        a = flow_algebra(0.77)
        assert iso_residual(a, a, BasisChange.identity(2)) == 0.0

    def test_period_shift_certificate(self):
        t1 = math.pi / 6
        p = BasisChange(-np.eye(2))  # cos(t1 + pi) / cos(t1) = -1
        assert iso_residual(flow_algebra(t1), flow_algebra(t1 + math.pi), p) < 1e-12

    def test_dim_guard(self):
        big = AlgebraFD(CubicTensor(np.zeros((3, 3, 3))))
        with pytest.raises(ValueError):
            iso_residual(big, big, BasisChange.identity(3))


class TestIsoSearch:
    def test_sign_twins_found_with_family_certificate(self):
        verdict = iso_search(A1_REP, NEG_A1)
        assert verdict.kind == KIND_ISOMORPHIC
        assert verdict.residual < 1e-9
        p = verdict.certificate
        # solutions form the family x1+x2 = y1+y2 = -1 here
        assert abs(p.u - p.v) < 1e-7
        assert abs(abs(p.u) - 1.0) < 1e-7
        assert abs(p.det) > 1e-10

    def test_self_isomorphism_found(self):
        a = flow_algebra(1.3)
        verdict = iso_search(a, a)
        assert verdict.kind == KIND_ISOMORPHIC

    def test_separated_pair_not_found(self):
        verdict = iso_search(A0_REP, A1_REP)
        assert verdict.kind == KIND_NOT_FOUND_WITHIN_BUDGET
        assert verdict.certificate is None

    def test_deterministic_for_fixed_seed(self):
        a, b = flow_algebra(0.4), flow_algebra(0.4 + math.pi)
        v1 = iso_search(a, b, SearchConfig(seed=5))
        v2 = iso_search(a, b, SearchConfig(seed=5))
        assert np.array_equal(v1.certificate.matrix, v2.certificate.matrix)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(restarts=0)
        with pytest.raises(ValueError):
            SearchConfig(tol=0.0)
        with pytest.raises(ValueError):
            SearchConfig(max_iterations=0)

    def test_dim_guard(self):
        big = AlgebraFD(CubicTensor(np.zeros((3, 3, 3))))
        with pytest.raises(ValueError):
            iso_search(big, big)


class TestRotationIso:
    def test_half_period_shift(self):
        verdict = rotation_iso(math.pi / 6, 7 * math.pi / 6)
        assert verdict.kind == KIND_ISOMORPHIC
        assert np.allclose(verdict.certificate.matrix, -np.eye(2))

    def test_equal_times_identity(self):
        verdict = rotation_iso(0.5, 0.5)
        assert verdict.kind == KIND_ISOMORPHIC
        assert np.array_equal(verdict.certificate.matrix, np.eye(2))

    def test_generic_distinct_parameters(self):
        verdict = rotation_iso(math.pi / 6, math.pi / 3)
        assert verdict.kind == KIND_NOT_ISOMORPHIC_EXACT
        assert verdict.reason

    def test_multiples_of_pi_use_family_certificate(self):
        verdict = rotation_iso(0.0, math.pi)
        assert verdict.kind == KIND_ISOMORPHIC
        p = verdict.certificate
        assert abs(p.u + 1.0) < 1e-12 and abs(p.v + 1.0) < 1e-12
        assert p.x1 != p.y1  # a genuine member of the two-parameter family

    def test_quarter_to_three_quarters(self):
        # one commutative time, one not: exact refusal with the right reason
        verdict = rotation_iso(3 * math.pi / 4, math.pi / 4)
        assert verdict.kind == KIND_NOT_ISOMORPHIC_EXACT
        assert "commutative" in verdict.reason

    def test_half_pi_sides(self):
        verdict = rotation_iso(math.pi / 2, 1.0)
        assert verdict.kind == KIND_NOT_ISOMORPHIC_EXACT
        assert "cos t = 0" in verdict.reason

    def test_pi_multiple_one_side(self):
        verdict = rotation_iso(0.0, 1.0)
        assert verdict.kind == KIND_NOT_ISOMORPHIC_EXACT
        assert "sin t = 0" in verdict.reason

    def test_symmetry_of_kind(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            t1, t2 = rng.uniform(0.0, 2 * math.pi, size=2)
            assert rotation_iso(t1, t2).kind == rotation_iso(t2, t1).kind
        assert rotation_iso(0.3, 0.3 + math.pi).kind == rotation_iso(0.3 + math.pi, 0.3).kind

    def test_certificate_soundness_on_samples(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            t1 = rng.uniform(0.0, 2 * math.pi)
            k = rng.integers(0, 4)
            verdict = rotation_iso(t1, t1 + k * math.pi)
            assert verdict.kind == KIND_ISOMORPHIC
            assert verdict.residual <= 1e-9
            assert abs(verdict.certificate.det) > 1e-10

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            rotation_iso(-0.1, 0.5)

    def test_agrees_with_search_where_isomorphic(self):
        rng = np.random.default_rng(31)
        for _ in range(12):
            t1 = rng.uniform(0.05, math.pi / 2 - 0.05)
            t2 = t1 + rng.integers(1, 3) * math.pi
            assert rotation_iso(t1, t2).kind == KIND_ISOMORPHIC
            assert iso_search(flow_algebra(t1), flow_algebra(t2)).kind == KIND_ISOMORPHIC


class TestInvariantSignature:
    def test_a1(self):
        assert invariant_signature(A1_REP) == InvariantSignature(False, True, 2)

    def test_a0_plus(self):
        assert invariant_signature(A0_REP) == InvariantSignature(False, False, 2)

    def test_zero_algebra(self):
        assert invariant_signature(AlgebraFD.zero(2)) == InvariantSignature(True, True, 0)

    def test_first_difference(self):
        a = invariant_signature(A1_REP)
        b = invariant_signature(A0_REP)
        assert a.first_difference(b) == "associative"
        assert a.first_difference(a) is None

    def test_signature_difference_implies_exact_refusal(self):
        # where signatures differ, the exact decider must refuse too
        sig_half_pi = invariant_signature(flow_algebra(math.pi / 2))
        sig_zero = invariant_signature(flow_algebra(0.0))
        assert sig_half_pi.first_difference(sig_zero) is not None
        assert not rotation_iso(math.pi / 2, 0.0).is_isomorphic

    def test_signature_difference_never_isomorphic_sampled(self):
        rng = np.random.default_rng(59)
        for _ in range(100):
            t1, t2 = rng.uniform(0.0, 2 * math.pi, size=2)
            differs = invariant_signature(flow_algebra(t1)).first_difference(
                invariant_signature(flow_algebra(t2))
            )
            if differs is not None:
                assert not rotation_iso(t1, t2).is_isomorphic


class TestVerdictJson:
    def test_isomorphic_payload(self):
        verdict = rotation_iso(0.25, 0.25 + math.pi)
        data = verdict.to_json_dict()
        assert data["kind"] == "Isomorphic"
        assert np.allclose(data["certificate"], -np.eye(2))
        assert data["residual"] <= 1e-9

    def test_negative_payload(self):
        data = rotation_iso(0.25, 0.5).to_json_dict()
        assert data["kind"] == "NotIsomorphicExact"
        assert "reason" in data and "certificate" not in data

    def test_not_found_payload(self):
        assert IsoVerdict.not_found().to_json_dict() == {"kind": "NotFoundWithinBudget"}

    def test_separated_payload(self):
        data = IsoVerdict.separated("associative").to_json_dict()
        assert data == {"kind": "SeparatedByInvariant", "reason": "associative"}

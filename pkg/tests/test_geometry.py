"""Geometry: osculating sections, phi, C_P, classification, bitangent counts.

Frozen values below were first validated by the independent finite-field
base-locus oracle at several good primes, then pinned.
"""

import pytest

from dp2.errors import NotVeryGeneral, SameImage
from dp2.geometry import (
    c_p_point,
    classify_point,
    count_all_bitangents,
    count_bitangents_through,
    osculating_section,
    phi,
    phi_domain,
)
from dp2.surface import PointDP2, PointP2, geiser

P0 = PointDP2(20, 15, 12, 481)
Q1 = PointDP2(0, 1, 0, 1)
# validated by base_locus_oracle at p in {7, 17, 19, 23, 29}
PHI_P0_Q1 = PointDP2(288600, 130111, 173160, 90126952321)


class TestOsculatingSection:
    def test_frozen_section_s0(self, s0):
        sec = osculating_section(s0, P0)
        assert sec.lam == 111284641
        assert sec.q2.coeff(2, 0, 0) == -149633200
        assert sec.q2.coeff(0, 2, 0) == -133387425
        assert sec.q2.coeff(0, 0, 2) == -93975984
        assert sec.q2.coeff(1, 1, 0) == 108000000
        assert sec.q2.coeff(1, 0, 1) == 55296000
        assert sec.q2.coeff(0, 1, 1) == 23328000

    def test_vanishes_to_order_three(self, s0):
        sec = osculating_section(s0, P0)
        assert sec.evaluate(P0) == 0

    def test_eckardt_point_degenerate_but_unique(self, s0):
        # the system still has a one-dimensional solution space at the
        # generalized Eckardt point; the section is w - x^2
        sec = osculating_section(s0, PointDP2(1, 0, 0, 1))
        assert sec.lam == 1 and sec.q2.coeff(2, 0, 0) == -1

    def test_ramification_rejected(self, sk):
        with pytest.raises(NotVeryGeneral):
            osculating_section(sk, PointDP2(0, 0, 1, 0))


class TestPhi:
    def test_frozen_value(self, s0):
        assert phi(s0, P0, Q1) == PHI_P0_Q1

    def test_involution_on_u_inv(self, s0):
        assert phi(s0, P0, PHI_P0_Q1) == Q1

    def test_eckardt_base_example(self, s0):
        # phi with non-very-general first argument is still defined on U_phi
        assert phi(s0, PointDP2(1, 0, 0, 1), Q1) == Q1

    def test_same_image_rejected(self, s0):
        with pytest.raises(SameImage):
            phi(s0, P0, geiser(s0, P0))

    def test_result_collinear(self, s0):
        R = phi(s0, P0, Q1)
        m = [list(P0.xyz()), list(Q1.xyz()), list(R.xyz())]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        assert det == 0

    def test_origin_choice_irrelevant(self, s0):
        assert phi(s0, P0, Q1, origin="P") == phi(s0, P0, Q1, origin="Q")


class TestCP:
    def test_agreement_with_section(self, s0):
        sec = osculating_section(s0, P0)
        seen = set()
        for k in range(1, 11):
            R = c_p_point(s0, P0, (1, k))
            assert sec.evaluate(R) == 0
            seen.add(R)
        assert len(seen) == 10

    def test_on_surface(self, s0):
        R = c_p_point(s0, P0, (3, 7))
        assert s0.equation_at(R.x, R.y, R.z, R.w)


class TestClassification:
    def test_eckardt(self, s0):
        cls = classify_point(s0, PointDP2(1, 0, 0, 1))
        assert cls.is_generalized_eckardt
        assert cls.n_exceptional == 4
        assert not cls.is_general and not cls.is_very_general

    def test_very_general(self, s0):
        cls = classify_point(s0, P0)
        assert cls.is_very_general and cls.is_general
        assert cls.n_exceptional == 0
        assert not cls.on_ramification

    def test_ramification_point(self, sk):
        cls = classify_point(sk, PointDP2(0, 0, 1, 0))
        assert cls.on_ramification and not cls.is_general

    def test_count_through_coordinate_point(self, s0):
        n, cert = count_bitangents_through(s0, PointP2(1, 0, 0))
        assert n == 4
        assert cert


class TestPhiDomain:
    def test_same_image(self, s0):
        v = phi_domain(s0, P0, geiser(s0, P0))
        assert v.failure_reason == "SameImage"
        assert not v.in_U_phi

    def test_first_not_in_u0(self, s0):
        v = phi_domain(s0, PointDP2(1, 0, 0, 1), Q1)
        assert v.in_U_phi and not v.in_U_inv
        assert v.failure_reason == "FirstNotInU0"

    def test_in_u_inv(self, s0):
        v = phi_domain(s0, P0, PHI_P0_Q1)
        assert v.in_U_phi and v.in_U_inv and v.failure_reason is None

    def test_second_on_cp(self, s0):
        Qc = c_p_point(s0, P0, (1, 3))
        v = phi_domain(s0, P0, Qc)
        assert v.in_U_phi and not v.in_U_inv
        assert v.failure_reason == "SecondOnCP"


class TestAllBitangents:
    def test_s0(self, s0):
        assert count_all_bitangents(s0) == 28

    def test_sk(self, sk):
        assert count_all_bitangents(sk) == 28

"""Surface model: validation, normalization, points, kappa, Geiser, lift,
file format."""

from fractions import Fraction
from pathlib import Path

import pytest

from dp2.errors import NotOnSurface, SingularBranchCurve, WrongDegrees
from dp2.exactalg import QQ, TernForm
from dp2.surface import (
    PointDP2,
    PointP2,
    geiser,
    kappa,
    lift,
    load_surface,
    on_ramification,
    on_surface,
    parse_surface,
    serialize_surface,
    validate_surface,
)

SURFACE_DIR = Path(__file__).resolve().parent.parent / "surfaces"


class TestValidate:
    def test_s0_valid(self, s0):
        assert s0.f.is_zero()
        assert s0.B.coeff(4, 0, 0) == 4

    def test_sk_valid(self, sk):
        assert sk.g.coeff(3, 1, 0) == 1

    def test_singular_branch_rejected(self):
        g = TernForm(QQ, 4, {(4, 0, 0): Fraction(1)})
        with pytest.raises(SingularBranchCurve):
            validate_surface(TernForm(QQ, 2, {}), g)

    def test_wrong_degrees(self):
        with pytest.raises(WrongDegrees):
            validate_surface(TernForm(QQ, 3, {}), TernForm(QQ, 4, {}))

    def test_normalization_rescaling(self, s0):
        g = TernForm(
            QQ,
            4,
            {
                (4, 0, 0): Fraction(1, 16),
                (0, 4, 0): Fraction(1, 16),
                (0, 0, 4): Fraction(1, 16),
            },
        )
        S = validate_surface(TernForm(QQ, 2, {}), g)
        assert S.g.c == s0.g.c and S.f.c == s0.f.c

    def test_random_surfaces_valid(self, random_surfaces):
        for S in random_surfaces:
            assert S.equation_at(1, 1, 1, 1)


class TestPoints:
    def test_on_surface_canonical(self, s0):
        assert on_surface(s0, 1, 0, 0, 1) == PointDP2(1, 0, 0, 1)
        assert on_surface(s0, 2, 0, 0, 4) == PointDP2(1, 0, 0, 1)

    def test_not_on_surface(self, s0):
        with pytest.raises(NotOnSurface):
            on_surface(s0, 1, 1, 0, 1)

    def test_parse(self):
        assert PointDP2.parse("1:0:0:-1") == PointDP2(1, 0, 0, -1)
        with pytest.raises(ValueError):
            PointDP2.parse("1:2")

    def test_kappa(self, sk):
        assert kappa(PointDP2(0, 0, 1, 0)) == PointP2(0, 0, 1)


class TestGeiser:
    def test_s0(self, s0):
        assert geiser(s0, PointDP2(1, 0, 0, 1)) == PointDP2(1, 0, 0, -1)

    def test_fixed_point(self, sk):
        P = PointDP2(0, 0, 1, 0)
        assert geiser(sk, P) == P
        assert on_ramification(sk, P)

    def test_involution_everywhere(self, s0):
        P = PointDP2(20, 15, 12, 481)
        assert geiser(s0, geiser(s0, P)) == P
        assert not on_ramification(s0, P)


class TestLift:
    def test_two_lifts(self, s0):
        assert lift(s0, PointP2(1, 0, 0)) == [PointDP2(1, 0, 0, -1), PointDP2(1, 0, 0, 1)]

    def test_no_lift(self, s0):
        assert lift(s0, PointP2(1, 1, 0)) == []

    def test_ramified_lift(self, sk):
        assert lift(sk, PointP2(0, 0, 1)) == [PointDP2(0, 0, 1, 0)]


class TestFileFormat:
    def test_round_trip(self, s0):
        S = parse_surface(serialize_surface(s0))
        assert S.f.c == s0.f.c and S.g.c == s0.g.c

    def test_checked_in_files(self, s0, sk, random_surfaces):
        assert load_surface(str(SURFACE_DIR / "s0.json")).g.c == s0.g.c
        assert load_surface(str(SURFACE_DIR / "s_k.json")).g.c == sk.g.c
        for seed, S in zip((2, 3, 5), random_surfaces):
            assert load_surface(str(SURFACE_DIR / f"random{seed}.json")).g.c == S.g.c

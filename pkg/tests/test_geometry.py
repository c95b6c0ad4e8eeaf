import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from holomi import errors
from holomi.geometry import (
    BulkGeometry,
    GeometryKind,
    btz_from_mass_spin,
    central_charge,
    geodesic_length,
    log_sinhc,
    mass_spin,
    sector_betas,
    thermal_scales,
    virasoro_charges,
)

mp.mp.dps = 40


def mp_length(beta, dx, eps, ell=1.0):
    """Oracle: 2 l log[(beta / pi eps) sinh(pi dx / beta)] in 40-digit arithmetic."""
    beta, dx = mp.mpf(beta), mp.mpf(dx)
    return float(2 * ell * mp.log(beta / (mp.pi * eps) * mp.sinh(mp.pi * dx / beta)))


class TestConstruction:
    def test_defaults_give_c3(self):
        assert central_charge(BulkGeometry.pure_ads()) == pytest.approx(3.0)

    @pytest.mark.parametrize("c", [1.0, 3.0, 24.0])
    def test_brown_henneaux(self, c):
        g = BulkGeometry.btz(1.0, ads_radius=2.0, central_charge=c)
        assert g.newton_constant == pytest.approx(3 * 2.0 / (2 * c))
        assert central_charge(g) == pytest.approx(c)

    def test_both_normalizations_rejected(self):
        with pytest.raises(errors.DomainError):
            BulkGeometry.pure_ads(newton_constant=1.0, central_charge=1.0)

    @pytest.mark.parametrize("build, exc", [
        (lambda: BulkGeometry.rotating_btz(1.0, 1.5), errors.OverExtremal),
        (lambda: BulkGeometry(GeometryKind.NON_ROTATING_BTZ, r_plus=1.0, r_minus=0.1), errors.DomainError),
        (lambda: BulkGeometry(GeometryKind.PURE_ADS, r_plus=1.0), errors.DomainError),
        (lambda: BulkGeometry.btz(0.0), errors.DomainError),
        (lambda: BulkGeometry.pure_ads(uv_cutoff=0.0), errors.DomainError),
        (lambda: BulkGeometry.btz(-1.0), errors.DomainError),
    ])
    def test_invalid(self, build, exc):
        with pytest.raises(exc):
            build()

    def test_extremal_allowed(self):
        g = BulkGeometry.rotating_btz(1.0, 1.0)
        assert math.isinf(thermal_scales(g).beta_right)

    def test_btz_from_beta(self):
        g = BulkGeometry.btz_from_beta(3.0, ads_radius=1.5)
        assert thermal_scales(g).beta == pytest.approx(3.0)


class TestMassSpin:
    @given(M=st.floats(1e-3, 1e3), frac=st.floats(0.0, 1.0), ell=st.floats(0.1, 10.0))
    def test_round_trip(self, M, frac, ell):
        J = frac * M * ell
        rp, rm = btz_from_mass_spin(M, J, ell)
        assert 0 <= rm <= rp
        g = BulkGeometry.rotating_btz(rp, rm, ads_radius=ell)
        M2, J2 = mass_spin(g)
        assert M2 == pytest.approx(M, rel=1e-12)
        assert J2 == pytest.approx(J, rel=1e-9, abs=1e-12 * M * ell)

    def test_near_extremal_no_cancellation(self):
        # r_minus from r_plus r_minus = J l / 2 keeps full precision
        M, ell = 1.0, 1.0
        J = M * ell * (1 - 1e-14)
        rp, rm = btz_from_mass_spin(M, J)
        assert rp * rm == pytest.approx(J * ell / 2, rel=1e-15)

    def test_errors(self):
        with pytest.raises(errors.NonPositiveMass):
            btz_from_mass_spin(0.0, 0.0)
        with pytest.raises(errors.OverExtremal):
            btz_from_mass_spin(1.0, 1.5)

    def test_sign_of_spin_dropped(self):
        assert btz_from_mass_spin(2.0, -1.0) == btz_from_mass_spin(2.0, 1.0)


class TestThermalScales:
    def test_formulas(self):
        g = BulkGeometry.rotating_btz(2.0, 0.5, ads_radius=1.5)
        s = thermal_scales(g)
        assert s.beta == pytest.approx(2 * math.pi * 1.5**2 / 2.0)
        assert s.beta_left == pytest.approx(2 * math.pi * 1.5**2 / 2.5)
        assert s.beta_right == pytest.approx(2 * math.pi * 1.5**2 / 1.5)
        assert s.beta == pytest.approx(2 * math.pi * s.z_plus)
        assert s.z_left < s.z_plus < s.z_right

    def test_pure_ads_infinite(self):
        s = thermal_scales(BulkGeometry.pure_ads())
        assert math.isinf(s.beta) and math.isinf(s.z_plus)

    def test_virasoro(self):
        g = BulkGeometry.rotating_btz(2.0, 1.0)
        M, J = mass_spin(g)
        l0, l0bar = virasoro_charges(g)
        G = g.newton_constant
        assert l0 - l0bar == pytest.approx(J / (8 * G))
        assert l0 + l0bar == pytest.approx(M / (8 * G))
        assert virasoro_charges(BulkGeometry.pure_ads()) == (0.0, 0.0)

    def test_sector_count(self):
        assert len(sector_betas(BulkGeometry.btz(1.0))) == 1
        assert len(sector_betas(BulkGeometry.rotating_btz(1.0, 0.3))) == 2


class TestLogSinhc:
    @pytest.mark.parametrize("y", [0.0, 1e-12, 1e-6, 0.3, 0.999, 1.0, 1.001, 7.5, 40.0, 800.0, 1e6])
    def test_against_mpmath(self, y):
        expected = 0.0 if y == 0 else float(mp.log(mp.sinh(mp.mpf(y)) / y))
        assert log_sinhc(y) == pytest.approx(expected, rel=1e-14, abs=1e-16)


class TestGeodesicLength:
    def test_pure_ads(self):
        g = BulkGeometry.pure_ads(uv_cutoff=0.01)
        assert geodesic_length(g, 0.0, 1.0) == pytest.approx(2 * math.log(100.0))

    @pytest.mark.parametrize("beta", [0.1, 1.0, 2 * math.pi, 100.0])
    @pytest.mark.parametrize("dx", [1e-6, 0.01, 1.0, 30.0, 5e3])
    def test_btz_against_mpmath(self, beta, dx):
        g = BulkGeometry.btz_from_beta(beta)
        assert geodesic_length(g, 0.0, dx) == pytest.approx(mp_length(beta, dx, g.uv_cutoff), rel=1e-13)

    def test_no_overflow_far_apart(self):
        g = BulkGeometry.btz_from_beta(1e-3)
        assert math.isfinite(geodesic_length(g, 0.0, 1e3))

    def test_rotating_is_sector_sum(self):
        g = BulkGeometry.rotating_btz(1.3, 0.4, uv_cutoff=1e-4)
        s = thermal_scales(g)
        expected = mp_length(s.beta_left, 2.0, 1e-4) + mp_length(s.beta_right, 2.0, 1e-4)
        assert geodesic_length(g, 0.5, 2.5) == pytest.approx(expected, rel=1e-13)

    def test_rotating_without_spin_doubles(self):
        # one length per chiral sector, each equal to the non-rotating length
        rot = BulkGeometry.rotating_btz(0.7, 0.0)
        non = BulkGeometry.btz(0.7)
        assert geodesic_length(rot, 0, 3.0) == pytest.approx(2 * geodesic_length(non, 0, 3.0), rel=1e-14)

    def test_btz_tends_to_ads(self):
        g, a = BulkGeometry.btz(1e-9), BulkGeometry.pure_ads()
        assert geodesic_length(g, 0, 1.0) == pytest.approx(geodesic_length(a, 0, 1.0), rel=1e-12)

    def test_ads_radius_scales_length(self):
        g1 = BulkGeometry.btz_from_beta(2.0, ads_radius=1.0)
        g3 = BulkGeometry.btz_from_beta(2.0, ads_radius=3.0)
        assert geodesic_length(g3, 0, 1.0) == pytest.approx(3 * geodesic_length(g1, 0, 1.0))

    def test_coincident(self):
        with pytest.raises(errors.CoincidentPoints):
            geodesic_length(BulkGeometry.pure_ads(), 1.0, 1.0)

    @settings(max_examples=60)
    @given(a=st.floats(-50, 50), dx=st.floats(1e-3, 20), shift=st.floats(-100, 100))
    def test_symmetric_and_translation_invariant(self, a, dx, shift):
        g = BulkGeometry.rotating_btz(1.1, 0.6)
        ref = geodesic_length(g, a, a + dx)
        assert geodesic_length(g, a + dx, a) == ref
        assert geodesic_length(g, a + shift, a + dx + shift) == pytest.approx(ref, rel=1e-9, abs=1e-8)

    def test_thermal_slope(self):
        beta = 0.5
        g = BulkGeometry.btz_from_beta(beta)
        slope = (geodesic_length(g, 0, 20.0) - geodesic_length(g, 0, 10.0)) / 10.0
        assert slope == pytest.approx(2 * math.pi / beta, rel=1e-12)

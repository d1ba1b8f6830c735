"""Thermal-decoherence scenario tests: closed forms and the scanned boundary."""

import math

import numpy as np
import pytest

import cvsep as cv
from _util import COSH1, SINH1, tmsv_layout

T_STAR_111 = 0.17965206772540485  # ln(1 + (1 - e^-2)/2) / 2


class TestTmsvMatrix:
    def test_zero_squeezing_is_vacuum(self):
        np.testing.assert_array_equal(cv.tmsv_matrix(0.0).m, np.eye(4))

    def test_half_squeezing_values(self):
        m = cv.tmsv_matrix(0.5).m
        np.testing.assert_allclose(m, tmsv_layout(0.5), atol=0)
        assert m[0, 0] == pytest.approx(COSH1, abs=1e-15)
        assert m[0, 2] == pytest.approx(SINH1, abs=1e-15)
        assert m[1, 3] == pytest.approx(-SINH1, abs=1e-15)

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0, 3.0])
    def test_purity_determinant_identity(self, r):
        assert np.linalg.det(cv.tmsv_matrix(r).m) == pytest.approx(1.0, abs=1e-10)

    def test_negative_squeezing_rejected(self):
        with pytest.raises(ValueError):
            cv.tmsv_matrix(-0.1)


class TestEvolveThermal:
    def test_time_zero_is_exactly_tmsv(self):
        sc = cv.ThermalScenario(r=0.8, eta=0.7, nbar=1.5, t=0.0)
        np.testing.assert_array_equal(cv.evolve_thermal(sc).m, cv.tmsv_matrix(0.8).m)

    def test_vacuum_bath_long_time_approaches_identity(self):
        sc = cv.ThermalScenario(r=1.0, eta=1.0, nbar=0.0, t=30.0)
        np.testing.assert_allclose(cv.evolve_thermal(sc).m, np.eye(4), atol=1e-12)

    def test_threshold_vicinity_values(self):
        sc = cv.ThermalScenario(r=1.0, eta=1.0, nbar=1.0, t=0.1796526)
        m = cv.evolve_thermal(sc).m
        n, c = m[0, 0], m[0, 2]
        assert n == pytest.approx(3.532126, abs=1e-5)
        assert c == pytest.approx(2.532136, abs=1e-5)
        # Symmetric-family separability boundary: n - c = 1 at the threshold.
        assert n - c - 1.0 == pytest.approx(0.0, abs=1e-5)

    def test_scenario_validation(self):
        with pytest.raises(ValueError):
            cv.ThermalScenario(r=-1.0, eta=1.0, nbar=0.0, t=0.0)
        with pytest.raises(ValueError):
            cv.ThermalScenario(r=1.0, eta=0.0, nbar=0.0, t=0.0)
        with pytest.raises(ValueError):
            cv.ThermalScenario(r=1.0, eta=1.0, nbar=-0.5, t=0.0)
        with pytest.raises(ValueError):
            cv.ThermalScenario(r=1.0, eta=1.0, nbar=0.0, t=-1.0)


class TestThresholdTime:
    def test_reference_point(self):
        t = cv.threshold_time(1.0, 1.0, 1.0)
        assert t == pytest.approx(T_STAR_111, rel=1e-14)
        # Oracle: n(t*) - c(t*) = 1 exactly on the symmetric family.
        decay = math.exp(-2.0 * t)
        n = math.cosh(2.0) * decay + 3.0 * (1.0 - decay)
        c = math.sinh(2.0) * decay
        assert n - c == pytest.approx(1.0, abs=1e-14)

    def test_vacuum_bath_is_infinite(self):
        assert cv.threshold_time(0.7, 2.0, 0.0) is cv.INFINITE

    def test_large_occupation_asymptote(self):
        t = cv.threshold_time(1.0, 1.0, 100.0)
        asym = (1.0 - math.exp(-2.0)) / (4.0 * 100.0)
        assert abs(t - asym) / asym < 0.03

    def test_eta_scales_inverse_time(self):
        assert cv.threshold_time(1.0, 2.0, 1.0) == pytest.approx(
            0.5 * cv.threshold_time(1.0, 1.0, 1.0), rel=1e-14
        )

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            cv.threshold_time(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            cv.threshold_time(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            cv.threshold_time(1.0, 1.0, -1.0)

    def test_infinite_repr(self):
        assert repr(cv.INFINITE) == "Infinite"


class TestScanBoundary:
    def test_grid_straddles_threshold(self):
        points = cv.scan_boundary(1.0, 1.0, 1.0, 0.4, 41)
        assert len(points) == 41
        flips = [
            (a.t, b.t)
            for a, b in zip(points, points[1:])
            if a.decision is cv.Decision.ENTANGLED
            and b.decision is not cv.Decision.ENTANGLED
        ]
        assert len(flips) == 1
        lo, hi = flips[0]
        assert lo < T_STAR_111 < hi
        assert hi - lo == pytest.approx(0.01, rel=1e-9)

    def test_margin_sign_tracks_decision(self):
        points = cv.scan_boundary(1.0, 1.0, 1.0, 0.4, 41)
        for p in points:
            if p.decision is cv.Decision.ENTANGLED:
                assert p.margin > 0.0
            elif p.decision is cv.Decision.SEPARABLE:
                assert p.margin < 0.0

    def test_vacuum_bath_grid_all_entangled(self):
        points = cv.scan_boundary(1.0, 1.0, 0.0, 5.0, 11)
        assert all(p.decision is cv.Decision.ENTANGLED for p in points)

    def test_grid_beyond_threshold_all_separable(self):
        points = cv.scan_boundary(1.0, 1.0, 1.0, 0.5, 7, t_min=0.2)
        assert all(p.decision is cv.Decision.SEPARABLE for p in points)

    def test_margin_strictly_decreasing(self):
        for r in (0.5, 1.0):
            for nbar in (0.5, 2.0):
                points = cv.scan_boundary(r, 1.0, nbar, 0.6, 25)
                margins = [p.margin for p in points]
                assert all(a > b for a, b in zip(margins, margins[1:]))

    def test_symmetric_family_stays_balanced(self):
        # Every evolved state reduces with r1 = r2 = 1 and a0 = 1.
        for t in np.linspace(0.0, 0.5, 6):
            state = cv.evolve_thermal(
                cv.ThermalScenario(r=1.0, eta=1.0, nbar=1.0, t=float(t))
            )
            form = cv.to_standard_form_II(state)
            assert form.r1 == pytest.approx(1.0, abs=1e-8)
            assert form.r2 == pytest.approx(1.0, abs=1e-8)
            if not form.degenerate:
                pair = cv.construct_epr_pair(form)
                assert pair.a == pytest.approx(1.0, abs=1e-8)

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            cv.scan_boundary(1.0, 1.0, 1.0, 0.4, 1)

    def test_bad_window_rejected(self):
        with pytest.raises(ValueError):
            cv.scan_boundary(1.0, 1.0, 1.0, 0.1, 5, t_min=0.2)

"""Decision-layer tests: sufficient test, witness construction, exact decision,
and the P-representation certificate."""

import math

import numpy as np
import pytest

import cvsep as cv
from _util import random_llubo_blocks, tmsv_layout


def make_form(n1, n2, m1, m2, c1, c2, r1=1.0, r2=1.0, degenerate=False):
    """Hand-built standard form II (identity transform)."""
    return cv.StandardFormII(
        n1=n1, n2=n2, m1=m1, m2=m2, c1=c1, c2=c2, r1=r1, r2=r2,
        transform=cv.Llubo.identity(), swapped_modes=False,
        degenerate=degenerate,
    )


class TestTotalVarianceCheck:
    def test_vacuum_sits_on_the_bound(self):
        vac = cv.validate(np.eye(4))
        res = cv.total_variance_check(vac, cv.EprPair(1.0, 1, -1))
        assert res == (False, pytest.approx(2.0), pytest.approx(2.0))

    def test_tmsv_violates_with_matched_signs(self):
        state = cv.validate(tmsv_layout(0.5))
        res = cv.total_variance_check(state, cv.EprPair(1.0, -1, 1))
        assert res.violated
        assert res.total_variance == pytest.approx(0.7357588823428847, abs=1e-12)
        assert res.bound == pytest.approx(2.0)

    def test_tmsv_with_wrong_signs_does_not_violate(self):
        state = cv.validate(tmsv_layout(0.5))
        res = cv.total_variance_check(state, cv.EprPair(1.0, 1, -1))
        assert not res.violated
        assert res.total_variance == pytest.approx(5.43656365691809, abs=1e-12)
        assert res.bound == pytest.approx(2.0)


class TestConstructEprPair:
    def test_tmsv_witness(self):
        form = cv.to_standard_form_II(cv.validate(tmsv_layout(0.5)))
        pair = cv.construct_epr_pair(form)
        assert pair.a == 1.0  # n1 == m1 forces a0 = 1 exactly
        assert pair.sign_u == -1  # c1 > 0
        assert pair.sign_v == 1  # c2 < 0

    def test_asymmetric_form_value(self):
        # (n1, m1) = (3, 2) with consistent (n2, m2) = (2, 1.5):
        # both ratios (n_i - 1)/(m_i - 1) equal 2.
        gap = math.sqrt(2.0) - math.sqrt(0.5)
        form = make_form(3.0, 2.0, 2.0, 1.5, c1=0.3 + gap, c2=-0.3)
        pair = cv.construct_epr_pair(form)
        assert pair.a**2 == pytest.approx(math.sqrt(0.5), rel=1e-14)
        assert pair.a**2 == pytest.approx(0.7071067811865476, rel=1e-12)
        assert (pair.sign_u, pair.sign_v) == (-1, 1)

    def test_vanishing_coefficient_rejected(self):
        form = make_form(3.0, 2.0, 2.0, 1.5, c1=0.0, c2=-0.3)
        with pytest.raises(cv.DegenerateForm):
            cv.construct_epr_pair(form)

    def test_vacuum_pure_mode_rejected(self):
        form = make_form(1.0, 1.0, 2.0, 2.0, c1=0.0, c2=0.0, degenerate=True)
        with pytest.raises(cv.DegenerateForm):
            cv.construct_epr_pair(form)

    def test_inconsistent_form_rejected(self):
        form = make_form(3.0, 5.0, 2.0, 1.5, c1=1.0, c2=-0.3)
        with pytest.raises(cv.CvsepError):
            cv.construct_epr_pair(form)


class TestDecideSeparability:
    def test_tmsv_entangled_with_closed_form_margin(self):
        verdict = cv.decide_separability(cv.validate(tmsv_layout(0.5)))
        assert verdict.decision is cv.Decision.ENTANGLED
        assert verdict.margin == pytest.approx(2.0 - 2.0 * math.exp(-1.0), abs=1e-12)
        assert verdict.margin == pytest.approx(1.2642411176571153, abs=1e-12)
        assert verdict.certificate is None
        # min eigenvalue of M_II - I is (cosh - 1) - sinh = e^{-1} - 1
        assert verdict.min_eigenvalue == pytest.approx(
            math.exp(-1.0) - 1.0, abs=1e-12
        )

    def test_vacuum_separable_with_point_mass_certificate(self):
        verdict = cv.decide_separability(cv.validate(np.eye(4)))
        assert verdict.decision is cv.Decision.SEPARABLE
        assert verdict.margin == 0.0
        assert verdict.witness is None
        assert verdict.certificate is not None
        np.testing.assert_array_equal(
            verdict.certificate.covariance, np.zeros((4, 4))
        )

    def test_threshold_state_is_boundary(self):
        t_star = cv.threshold_time(1.0, 1.0, 1.0)
        state = cv.evolve_thermal(
            cv.ThermalScenario(r=1.0, eta=1.0, nbar=1.0, t=t_star)
        )
        verdict = cv.decide_separability(state)
        assert verdict.decision is cv.Decision.BOUNDARY
        assert abs(verdict.margin) < cv.EPS_DECIDE

    def test_certificate_present_iff_separable(self):
        for seed in range(60):
            verdict = cv.decide_separability(cv.sample_random_physical(seed))
            assert (verdict.certificate is not None) == (
                verdict.decision is cv.Decision.SEPARABLE
            )

    def test_witness_consistency_with_decision(self):
        # Violation by the optimal pair is equivalent to entanglement.
        for seed in range(120):
            state = cv.sample_random_physical(seed)
            verdict = cv.decide_separability(state)
            if verdict.witness is None or verdict.decision is cv.Decision.BOUNDARY:
                continue
            reduced = cv.validate(verdict.form.matrix())
            res = cv.total_variance_check(reduced, verdict.witness)
            assert res.violated == (verdict.decision is cv.Decision.ENTANGLED)

    def test_verdict_invariant_under_llubo(self):
        rng = np.random.default_rng(31)
        for seed in range(40):
            state = cv.sample_random_physical(seed)
            base = cv.decide_separability(state).decision
            h1, h2 = random_llubo_blocks(rng)
            moved = cv.apply_llubo(state, cv.Llubo(h1, h2))
            other = cv.decide_separability(moved).decision
            if cv.Decision.BOUNDARY in (base, other):
                continue
            assert base == other

    def test_tolerance_override_widens_band(self):
        # A mildly entangled state becomes boundary under a huge band.
        state = cv.validate(tmsv_layout(0.1))
        assert cv.decide_separability(state).decision is cv.Decision.ENTANGLED
        wide = cv.decide_separability(state, tol_decide=10.0)
        assert wide.decision is cv.Decision.BOUNDARY


class TestPRepresentation:
    def test_vacuum_point_mass(self):
        form = cv.to_standard_form_II(cv.validate(np.eye(4)))
        cert = cv.p_representation(form)
        np.testing.assert_array_equal(cert.covariance, np.zeros((4, 4)))

    def test_symmetric_edge_form_spectrum(self):
        # n = m = 2, c = -c' = 1 sits exactly on the separable edge.
        form = make_form(2.0, 2.0, 2.0, 2.0, c1=1.0, c2=-1.0)
        # Oracle: eigenvalues of M - I computed directly.
        eigs = np.linalg.eigvalsh(form.matrix() - np.eye(4))
        np.testing.assert_allclose(sorted(eigs), [0.0, 0.0, 2.0, 2.0], atol=1e-12)
        cert = cv.p_representation(form)
        np.testing.assert_allclose(
            sorted(np.linalg.eigvalsh(2.0 * cert.covariance)),
            [0.0, 0.0, 2.0, 2.0],
            atol=1e-12,
        )

    def test_entangled_form_rejected(self):
        form = cv.to_standard_form_II(cv.validate(tmsv_layout(0.5)))
        with pytest.raises(cv.NotInSeparableRegime):
            cv.p_representation(form)

    def test_analytic_reconstruction_matches_original(self):
        count = 0
        for seed in range(150):
            state = cv.sample_random_physical(seed)
            verdict = cv.decide_separability(state)
            if verdict.certificate is None:
                continue
            count += 1
            recon = cv.reconstruct_analytic(verdict.certificate)
            np.testing.assert_allclose(recon, state.m, atol=1e-8)
        assert count > 30  # the sampler produces plenty of separable states

    def test_certificate_covariance_is_psd(self):
        for seed in range(80):
            verdict = cv.decide_separability(cv.sample_random_physical(seed))
            if verdict.certificate is None:
                continue
            lam = np.linalg.eigvalsh(verdict.certificate.covariance)[0]
            assert lam >= -1e-9

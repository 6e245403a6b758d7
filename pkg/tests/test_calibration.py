import numpy as np
import pytest
from hypothesis import given, strategies as st

from transim import calibration as cal
from transim.noise_thermo import HBAR


class TestDecibels:
    @given(st.floats(-200.0, 200.0))
    def test_round_trip(self, db):
        assert cal.linear_to_db(cal.db_to_linear(db)) == pytest.approx(db, abs=1e-12)

    def test_nonpositive_rejected(self):
        with pytest.raises(cal.CalibrationError):
            cal.linear_to_db(0.0)


class TestFourPort:
    @given(
        st.floats(-4, 1), st.floats(-4, 1),
        st.floats(0.001, 0.2), st.floats(0.001, 0.2),
    )
    def test_gains_cancel(self, log_gmw, log_gopt, s_oe, s_eo):
        rec = cal.synthetic_four_port(s_oe, s_eo, 10**log_gmw, 10**log_gopt)
        assert cal.cw_efficiency(rec) == pytest.approx(s_oe * s_eo, rel=1e-9)

    def test_alpha_prefactor_structure(self):
        # alpha enters S_oo once and the correction 2 alpha once: a record
        # built with a different alpha than assumed shifts the result
        rec = cal.synthetic_four_port(0.1, 0.1, 1.0, 1.0, alpha=0.5)
        biased = cal.FourPortRecord(rec.s_ee, rec.s_oo, rec.s_oe, rec.s_eo, alpha=0.73)
        assert cal.cw_efficiency(biased) == pytest.approx(0.01 * 0.73 / 0.5, rel=1e-9)

    def test_zero_reference_rejected(self):
        rec = cal.FourPortRecord(0.0, 1.0, 0.1, 0.1)
        with pytest.raises(cal.CalibrationError):
            cal.cw_efficiency(rec)

    def test_negative_magnitude_rejected(self):
        with pytest.raises(cal.CalibrationError):
            cal.FourPortRecord(-1.0, 1.0, 0.1, 0.1)


class TestPulsedEfficiency:
    def test_forward_inverse(self):
        omega = 2 * np.pi * 5.043e9
        eta_mw = cal.db_to_linear(-113.6)
        n_det = 5.21e-5 * eta_mw * 0.048 * 1e-6 * 60e-9 / (HBAR * omega)
        eta = cal.pulsed_efficiency(n_det, omega, eta_mw, 0.048, 1e-6, 60e-9)
        assert eta == pytest.approx(5.21e-5, abs=0.03e-5)

    @given(st.floats(0.01, 100.0))
    def test_linear_in_counts(self, scale):
        omega = 2 * np.pi * 5.043e9
        base = cal.pulsed_efficiency(1e-3, omega, 1e-11, 0.048, 1e-6, 60e-9)
        scaled = cal.pulsed_efficiency(scale * 1e-3, omega, 1e-11, 0.048, 1e-6, 60e-9)
        assert scaled == pytest.approx(scale * base, rel=1e-12)

    def test_zero_denominator_rejected(self):
        with pytest.raises(cal.CalibrationError):
            cal.pulsed_efficiency(1.0, 1e9, 0.0, 0.048, 1e-6, 60e-9)


class TestLossBudget:
    def test_paper_numbers(self):
        loss, sigma = cal.unattenuated_line_loss(13.12, 0.0, 0.06)
        assert loss == pytest.approx(6.56, abs=1e-9)
        assert sigma == pytest.approx(0.03, abs=1e-9)
        total, tsig = cal.line_loss_budget(
            cal.LossBudget(drive_line_db=69.97, drive_line_sigma_db=0.18,
                           segment_db=2.0, segment_sigma_db=2.0)
        )
        assert total == pytest.approx(71.97, abs=1e-9)
        assert tsig == pytest.approx(np.hypot(0.18, 2.0), abs=1e-12)

    def test_negative_loss_rejected(self):
        with pytest.raises(cal.CalibrationError):
            cal.LossBudget(drive_line_db=-1.0)
        with pytest.raises(cal.CalibrationError):
            cal.unattenuated_line_loss(1.0, 5.0)


class TestSidebandCorrection:
    def test_equal_peaks(self):
        assert cal.sideband_power_correction(2.0, 2.0) == 1.0

    def test_paper_ratio(self):
        assert cal.sideband_power_correction(1.0, 1.53) == pytest.approx(1.53)

    def test_zero_peak_rejected(self):
        with pytest.raises(cal.CalibrationError):
            cal.sideband_power_correction(0.0, 1.0)

    def test_from_spectra_round_trip(self, rng):
        from transim.fitkit import peak_model

        x = np.linspace(-10, 10, 301)
        blue = peak_model(x, 0.3, 2.5, 1.1, 0.04)
        red = peak_model(x, 0.3, 2.5, 1.1 * 1.53, 0.04)
        noisy_b = blue * (1 + 0.01 * rng.standard_normal(len(x)))
        noisy_r = red * (1 + 0.01 * rng.standard_normal(len(x)))
        ratio = cal.sideband_power_correction_from_spectra(x, noisy_b, noisy_r)
        assert ratio == pytest.approx(1.53, rel=0.02)

import numpy as np
import pytest

from transim import presets
from transim import time_domain as td
from transim.model_core import ModelError, TWO_PI

from conftest import random_model


def short_pulse(duration=40e-9):
    return td.DriveTone.rect_photon("e", 0.0, duration)


class TestDriveTone:
    def test_rect_photon_normalization(self):
        p = td.DriveTone.rect_photon("e", 10e-9, 70e-9, n_photons=2.5)
        assert p.photons() == pytest.approx(2.5)

    def test_bad_envelope_rejected(self):
        with pytest.raises(ModelError):
            td.DriveTone("e", 0.0, 1.0, ("rect", 1e-6, 0.5e-6))
        with pytest.raises(ModelError):
            td.DriveTone("e", 0.0, 1.0, ("sine",))
        with pytest.raises(ModelError):
            td.DriveTone("e", 0.0, -1.0, ("cw",))


class TestPropagateInvariants:
    def test_vacuum_stays_vacuum(self, rng):
        m = random_model(rng, with_optical=False)
        t = np.linspace(0, 1e-6, 50)
        traj = td.propagate(m, [], t)
        assert np.all(traj.occupations == 0.0)

    def test_energy_monotone_after_pulse(self, rng):
        for _ in range(50):
            m = random_model(rng, with_optical=False)
            pulse = short_pulse()
            t = np.linspace(40e-9, 1.5e-6, 300)
            traj = td.propagate(m, [pulse], t)
            total = traj.occupations.sum(axis=0)
            # drive is off for t > 40 ns: total energy can only decay
            assert np.all(np.diff(total) <= total[:-1] * 1e-9 + 1e-18)

    def test_linearity_quadratic_scaling(self, rng):
        for _ in range(50):
            m = random_model(rng, with_optical=False)
            t = np.linspace(0, 0.5e-6, 120)
            base = td.DriveTone("e", 0.0, 1.0, ("rect", 0.0, 0.2e-6))
            double = td.DriveTone("e", 0.0, 2.0, ("rect", 0.0, 0.2e-6))
            o1 = td.propagate(m, [base], t).occupations
            o2 = td.propagate(m, [double], t).occupations
            np.testing.assert_allclose(o2, 4.0 * o1, rtol=1e-9, atol=1e-18)

    def test_frame_invariance(self, rng):
        for _ in range(50):
            m = random_model(rng, with_optical=False)
            t = np.linspace(0, 0.4e-6, 90)
            shift = TWO_PI * rng.uniform(-5e6, 5e6)
            wm = m.mechanical[0].omega
            drive_a = td.DriveTone("e", 0.0, 1.0, ("rect", 0.0, 0.2e-6))
            drive_b = td.DriveTone("e", -shift, 1.0, ("rect", 0.0, 0.2e-6))
            occ_a = td.propagate(m, [drive_a], t, frame_freq=wm).occupations
            occ_b = td.propagate(m, [drive_b], t, frame_freq=wm + shift).occupations
            np.testing.assert_allclose(occ_a, occ_b, rtol=1e-8, atol=1e-15)

    def test_propagator_matches_integrator(self, rng):
        for _ in range(50):
            m = random_model(rng, with_optical=False)
            t = np.linspace(0, 0.3e-6, 40)
            drive = td.DriveTone(
                "e", TWO_PI * rng.uniform(-3e6, 3e6), 1.0, ("rect", 0.0, 0.15e-6)
            )
            exact = td.propagate(m, [drive], t)
            ivp = td.propagate(m, [drive], t, force_integrator=True)
            np.testing.assert_allclose(
                exact.amplitudes, ivp.amplitudes, rtol=1e-8, atol=1e-8
            )

    def test_near_lossless_limit_conserves_energy(self):
        kappa_port = TWO_PI * 1e3
        m = (
            presets.si_single_mode()
            .with_mode("e", kappa_int=0.0, kappa_ext=kappa_port)
            .with_mode("m", kappa_int=0.0)
        )
        t = np.linspace(0.1e-6, 2e-6, 200)
        kick = td.DriveTone("e", 0.0, 1.0, ("rect", 0.0, 0.1e-6))
        traj = td.propagate(m, [kick], t)
        total = traj.occupations.sum(axis=0)
        # only the weak electrical port drains energy, so the total decays
        # monotonically and no faster than exp(-kappa_port * t)
        assert np.all(np.diff(total) <= 1e-12 * total[0])
        span = t[-1] - t[0]
        assert total[-1] >= total[0] * np.exp(-kappa_port * span) * (1 - 1e-9)
        assert total[-1] <= total[0]

    def test_drive_port_needs_external_coupling(self):
        m = presets.si_single_mode()
        kick = td.DriveTone("m", 0.0, 1.0, ("rect", 0.0, 10e-9))
        with pytest.raises(ModelError):
            td.propagate(m, [kick], np.linspace(0, 1e-7, 10))


class TestStepResponse:
    def test_family_rows_match_single_runs(self):
        m = presets.si_single_mode()
        t = np.linspace(0, 0.5e-6, 80)
        deltas = TWO_PI * np.array([-10e6, 0.0, 10e6])
        fam = td.step_response_family(m, deltas, t)
        for de, row in zip(deltas, fam.values):
            tuned = m.with_mode("e", omega=m.mechanical[0].omega + de)
            ref = td.propagate(tuned, [td.DriveTone("e", 0.0, 1.0, ("rect", 0.0, 2e-6))], t)
            np.testing.assert_allclose(row, ref.occupation("m"), rtol=1e-10)

    def test_resonant_rise_is_fastest(self):
        m = presets.si_single_mode()
        t = np.linspace(0, 0.2e-6, 60)
        fam = td.step_response_family(m, TWO_PI * np.array([0.0, 30e6]), t)
        assert fam.values[0].max() > fam.values[1].max()


class TestLoading:
    def test_single_mode_value(self):
        eta = td.loading_efficiency(presets.si_single_mode(), short_pulse(60e-9))
        assert eta == pytest.approx(0.12, abs=0.01)

    def test_two_mode_value(self):
        eta = td.loading_efficiency(presets.si_two_mode(), short_pulse(60e-9))
        assert eta == pytest.approx(0.06, abs=0.01)

    def test_requires_single_photon(self):
        bad = td.DriveTone("e", 0.0, 2.0, ("rect", 0.0, 60e-9))
        with pytest.raises(ModelError):
            td.loading_efficiency(presets.si_single_mode(), bad)

    def test_short_pulse_models_differ(self):
        dev = td.long_pulse_insensitivity_check(
            presets.si_single_mode(), presets.si_two_mode(), short_pulse(60e-9)
        )
        assert dev == pytest.approx(0.5, abs=0.15)

    def test_long_pulse_models_agree(self):
        dev = td.long_pulse_insensitivity_check(
            presets.si_single_mode(),
            presets.si_two_mode(),
            td.DriveTone.rect_photon("e", 0.0, 2e-6),
        )
        assert dev < 0.1

    def test_identical_models_zero_deviation(self):
        m = presets.si_single_mode()
        assert td.long_pulse_insensitivity_check(m, m, short_pulse(60e-9)) == 0.0


class TestPeriodEstimate:
    def test_synthetic_cosine(self):
        t = np.linspace(0, 1e-6, 2000)
        occ = (1 - np.cos(2 * np.pi * 8.7e6 * t)) ** 2
        period = td.estimate_oscillation_period(t, occ)
        assert period == pytest.approx(1 / 8.7e6, rel=0.01)

    def test_too_few_peaks(self):
        t = np.linspace(0, 1.0, 100)
        assert td.estimate_oscillation_period(t, t**2) is None

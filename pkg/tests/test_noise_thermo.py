import numpy as np
import pytest
from hypothesis import given, strategies as st

from transim import noise_thermo as nt


def chain():
    return nt.DetectionChain(0.42, 0.19, 0.60)


def experiment(n_mic=0.0):
    return nt.PulsedExperiment(0.7e-15, 100e3, 60e-9, 40e-9, n_mic)


class TestDetectionChain:
    def test_product(self):
        assert nt.detection_efficiency(chain()) == pytest.approx(0.048, abs=5e-4)

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            nt.DetectionChain(1.2, 0.19, 0.60)
        with pytest.raises(ValueError):
            nt.DetectionChain(0.42, -0.1, 0.60)


class TestSidebandThermometry:
    @given(st.floats(1e-4, 1e3))
    def test_inversion_identity(self, n_th):
        p_red, p_blue = nt.asymmetry_rates(n_th)
        assert nt.occupation_from_asymmetry(p_red, p_blue) == pytest.approx(
            n_th, rel=1e-12
        )

    def test_operating_point(self):
        # r = n/(n+1) with n = 0.41 gives the measured asymmetry
        p_red, p_blue = nt.asymmetry_rates(0.41)
        assert p_red / p_blue == pytest.approx(0.41 / 1.41, rel=1e-12)

    def test_power_correction_applied(self):
        # blue pulse not boosted: its counts come out low by the factor
        p_red, p_blue = nt.asymmetry_rates(0.41)
        n_raw = nt.occupation_from_asymmetry(p_red, p_blue / 1.53)
        n_corr = nt.occupation_from_asymmetry(p_red, p_blue / 1.53, power_correction=1.53)
        assert n_corr == pytest.approx(0.41, rel=1e-12)
        assert n_raw > n_corr

    def test_dark_subtraction(self):
        p_red, p_blue = nt.asymmetry_rates(0.41)
        dark = 0.1 * p_red
        n = nt.occupation_from_asymmetry(p_red + dark, p_blue + dark, dark_per_gate=dark)
        assert n == pytest.approx(0.41, rel=1e-12)

    def test_unphysical_ratio_rejected(self):
        with pytest.raises(nt.ThermometryError):
            nt.occupation_from_asymmetry(1.2, 1.0)
        with pytest.raises(nt.ThermometryError):
            nt.occupation_from_asymmetry(0.5, 0.0)


class TestAddedNoise:
    def test_paper_budget(self):
        assert nt.added_noise(0.41, 0.053) == pytest.approx(7.7, abs=0.1)

    @given(st.floats(1e-3, 10), st.floats(1e-3, 1.0))
    def test_inverse_identity(self, n_th, eta):
        assert nt.added_noise(n_th, eta) * eta == pytest.approx(n_th, rel=1e-12)

    def test_zero_efficiency_rejected(self):
        with pytest.raises(ValueError):
            nt.added_noise(0.41, 0.0)


class TestClickProbability:
    @given(st.floats(0.0, 500.0), st.floats(0.0, 500.0))
    def test_affine_in_input_photons(self, n1, n2):
        eta_em, eta_om, n_add = 0.053, 9.8e-4, 6.2
        p1 = nt.click_probability(experiment(n1), eta_em, eta_om, n_add, chain())
        p2 = nt.click_probability(experiment(n2), eta_em, eta_om, n_add, chain())
        pm = nt.click_probability(
            experiment((n1 + n2) / 2), eta_em, eta_om, n_add, chain()
        )
        assert pm == pytest.approx((p1 + p2) / 2, rel=1e-9, abs=1e-15)

    def test_dark_floor(self):
        dark_chain = nt.DetectionChain(0.42, 0.19, 0.60, dark_rate=100.0)
        p = nt.click_probability(experiment(0.0), 0.053, 9.8e-4, 0.0, dark_chain)
        assert p == pytest.approx(100.0 * 40e-9, rel=1e-9)

    def test_poisson_saturation(self):
        # mean detected number ~ 2: linear estimate exceeds 1 but the
        # Poisson click probability saturates below it
        n = 170.0
        linear = nt.click_probability(experiment(n), 0.5, 0.5, 0.0, chain(), poisson=False)
        sat = nt.click_probability(experiment(n), 0.5, 0.5, 0.0, chain(), poisson=True)
        assert linear > 1.0
        assert 0.5 < sat < 1.0
        assert sat == pytest.approx(1.0 - np.exp(-linear), rel=1e-12)


class TestRepRateNoise:
    def test_reference_rate_is_unity(self):
        model = nt.ThermalModel(n_heat=0.3, tau=2e-6, n_base=0.41)
        assert nt.rep_rate_noise(model, 50e3) == pytest.approx(1.0, rel=1e-12)

    def test_monotone_in_rate(self):
        model = nt.ThermalModel(n_heat=0.3, tau=2e-6, n_base=0.41)
        rates = np.linspace(20e3, 1e6, 30)
        vals = [nt.rep_rate_noise(model, r) for r in rates]
        assert np.all(np.diff(vals) > 0)

    def test_slow_rate_plateau(self):
        model = nt.ThermalModel(n_heat=0.3, tau=2e-6, n_base=0.41)
        assert nt.rep_rate_noise(model, 1e3) == pytest.approx(1.0, abs=2e-3)


class TestSidebandScatter:
    def test_linear_in_energy(self):
        kw = dict(g_om0=2 * np.pi * 561e3, kappa_o=2 * np.pi * 4.99e9,
                  eta_o=0.731, omega_o=2 * np.pi * 193.087e12)
        p1 = nt.sideband_scatter_probability(1e-15, **kw)
        p2 = nt.sideband_scatter_probability(2e-15, **kw)
        assert p2 == pytest.approx(2 * p1, rel=1e-12)

    def test_linearity_warning_flagged(self):
        with pytest.warns(UserWarning):
            nt.sideband_scatter_probability(
                1e-3, g_om0=2 * np.pi * 561e3, kappa_o=2 * np.pi * 4.99e9,
                eta_o=0.731, omega_o=2 * np.pi * 193.087e12,
            )

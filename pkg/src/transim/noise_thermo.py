"""Photon-counting layer: thermometry, added-noise budget, click statistics.

Everything here is closed-form arithmetic on rates and probabilities; the
inputs come either from measurement tables or from the forward models in
freq_domain / time_domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

HBAR = 1.054571817e-34  # J s


class ThermometryError(ValueError):
    """Unphysical or insufficient counting statistics."""


@dataclass(frozen=True)
class DetectionChain:
    eta_fiber: float
    eta_filter: float
    eta_snspd: float
    dark_rate: float = 0.0  # counts/s

    def __post_init__(self):
        for name in ("eta_fiber", "eta_filter", "eta_snspd"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.dark_rate < 0:
            raise ValueError("dark rate must be non-negative")


@dataclass(frozen=True)
class PulsedExperiment:
    pulse_energy: float  # optical pulse energy [J]
    rep_rate: float  # [Hz]
    t_pulse_mw: float  # [s]
    t_pulse_opt: float  # [s]
    n_mic: float  # mean input microwave photons
    scatter_prob_per_quantum: float = 0.0

    def __post_init__(self):
        if self.rep_rate <= 0:
            raise ValueError("repetition rate must be positive")
        if not 0.0 <= self.scatter_prob_per_quantum <= 1.0:
            raise ValueError("scattering probability must be in [0, 1]")


@dataclass(frozen=True)
class ThermalModel:
    n_heat: float  # phonons added per optical pulse
    tau: float  # recovery time [s]
    n_base: float = 0.0  # baseline occupation

    def __post_init__(self):
        if self.n_heat < 0 or self.tau < 0 or self.n_base < 0:
            raise ValueError("thermal model parameters must be non-negative")


def detection_efficiency(chain: DetectionChain) -> float:
    """Product of fiber, filter and SNSPD efficiencies."""
    return chain.eta_fiber * chain.eta_filter * chain.eta_snspd


def occupation_from_asymmetry(
    p_red: float,
    p_blue: float,
    power_correction: float = 1.0,
    dark_per_gate: float = 0.0,
) -> float:
    """Thermal occupation from the red/blue sideband click asymmetry.

    Red-detuned (anti-Stokes) scattering is proportional to n_th, blue
    (Stokes) to n_th + 1, so n = r/(1-r) with r the corrected ratio.
    power_correction rescales the blue counts to equal intracavity pump
    occupation when the blue pulse power was not boosted experimentally.
    """
    p_red = p_red - dark_per_gate
    p_blue = p_blue - dark_per_gate
    if p_red <= 0 or p_blue <= 0:
        raise ThermometryError("insufficient counts after dark subtraction")
    r = p_red / (p_blue * power_correction)
    if r >= 1.0:
        raise ThermometryError(f"unphysical asymmetry ratio r = {r:.3g} >= 1")
    return r / (1.0 - r)


def asymmetry_rates(n_th: float) -> tuple[float, float]:
    """Forward map n_th -> (red, blue) relative scattering rates."""
    return n_th, n_th + 1.0


def added_noise(n_th: float, eta_em: float) -> float:
    """Input-referred added noise N_add = n_th / eta_em."""
    if eta_em <= 0:
        raise ValueError("eta_em must be strictly positive")
    return n_th / eta_em


def click_probability(
    exp: PulsedExperiment,
    eta_em: float,
    eta_om: float,
    n_add: float,
    chain: DetectionChain,
    poisson: bool = False,
) -> float:
    """Mean detector click probability per pulse.

    Converted signal plus optomechanically converted noise, plus dark
    counts over the optical gate. The default linear conversion is exact
    for the means; set poisson=True for P = 1 - exp(-mean).
    """
    for name, v in (("eta_em", eta_em), ("eta_om", eta_om), ("n_add", n_add)):
        if v < 0:
            raise ValueError(f"{name} must be non-negative")
    eta_det = detection_efficiency(chain)
    mean = eta_det * eta_om * (eta_em * exp.n_mic + n_add)
    mean += chain.dark_rate * exp.t_pulse_opt
    if poisson:
        return 1.0 - math.exp(-mean)
    return mean


def rep_rate_noise(model: ThermalModel, rep_rate: float, ref_rate: float = 50e3) -> float:
    """Pre-pulse occupation at a repetition rate, relative to ref_rate.

    Residual phonons accumulate geometrically: with period T = 1/rate the
    steady pre-pulse excess is n_heat e^{-T/tau} / (1 - e^{-T/tau}).
    """
    if rep_rate <= 0 or ref_rate <= 0:
        raise ValueError("repetition rates must be positive")
    if model.tau <= 0:
        raise ValueError("recovery time must be positive")
    return _pre_pulse_occupation(model, rep_rate) / _pre_pulse_occupation(model, ref_rate)


def _pre_pulse_occupation(model: ThermalModel, rep_rate: float) -> float:
    x = math.exp(-1.0 / (rep_rate * model.tau))
    return model.n_base + model.n_heat * x / (1.0 - x)


def sideband_scatter_probability(
    pulse_energy: float,
    g_om0: float,
    kappa_o: float,
    eta_o: float,
    omega_o: float,
) -> float:
    """Optomechanical scattering probability per pulse, linear in energy.

    p_s = eta_o * (2 g_om0 / kappa_o)^2 * (photons in the pulse); only the
    linear-in-energy scaling is relied upon (the model exists to fit
    g_om0 from measured scattering probabilities).
    """
    if min(g_om0, kappa_o, eta_o, omega_o) <= 0 and pulse_energy != 0:
        raise ValueError("rates and frequencies must be positive")
    if pulse_energy < 0:
        raise ValueError("pulse energy must be non-negative")
    n_photons = pulse_energy / (HBAR * omega_o)
    p = eta_o * (2.0 * g_om0 / kappa_o) ** 2 * n_photons
    if p > 0.1:
        import warnings

        warnings.warn("scattering probability exceeds linear regime (p_s > 0.1)")
    return p

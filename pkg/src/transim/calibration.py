"""Calibration arithmetic: 4-port CW efficiency, pulsed efficiency,
microwave loss budget and the sideband power correction.

Uncertainties are propagated first-order with root-sum-square
combination; dB quantities convert through the standard power relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .noise_thermo import HBAR


class CalibrationError(ValueError):
    pass


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(linear: float) -> float:
    if linear <= 0:
        raise CalibrationError("linear power ratio must be positive")
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class FourPortRecord:
    """Linear-magnitude scattering record of the 4-port VNA measurement.

    s_ee / s_oo are the loss-calibration paths (microwave through,
    optical reflection); s_oe / s_eo are up- and downconversion. alpha is
    the measured reduction of s_oo for a red-detuned carrier.
    """

    s_ee: float
    s_oo: float
    s_oe: float
    s_eo: float
    alpha: float = 0.73

    def __post_init__(self):
        if min(self.s_ee, self.s_oo, self.s_oe, self.s_eo) < 0:
            raise CalibrationError("magnitudes must be non-negative")
        if not 0.0 < self.alpha <= 1.0:
            raise CalibrationError("alpha must lie in (0, 1]")


def cw_efficiency(record: FourPortRecord) -> float:
    """Continuous bidirectional efficiency 2 alpha |S_oe||S_eo| / (|S_ee||S_oo|)."""
    if record.s_ee == 0.0 or record.s_oo == 0.0:
        raise CalibrationError("reference paths S_ee / S_oo must be non-zero")
    return 2.0 * record.alpha * record.s_oe * record.s_eo / (record.s_ee * record.s_oo)


def synthetic_four_port(
    s_oe_device: float,
    s_eo_device: float,
    gain_mw: float,
    gain_opt: float,
    alpha: float = 0.73,
) -> FourPortRecord:
    """Assemble a measured-looking record from device-level conversion
    magnitudes and arbitrary amplitude gains on the two paths.

    The reference paths see the gains twice (in and out); S_oo carries
    the 2*alpha sideband reduction that the prefactor in cw_efficiency
    is built to cancel.
    """
    return FourPortRecord(
        s_ee=gain_mw**2,
        s_oo=2.0 * alpha * gain_opt**2,
        s_oe=gain_mw * gain_opt * s_oe_device,
        s_eo=gain_mw * gain_opt * s_eo_device,
        alpha=alpha,
    )


def pulsed_efficiency(
    n_det: float,
    omega_drive: float,
    eta_mw: float,
    eta_det: float,
    p_pulse: float,
    t_pulse: float,
) -> float:
    """Pulsed efficiency n_det hbar omega / (eta_MW eta_det P t).

    eta_mw and eta_det are linear power ratios; p_pulse and t_pulse refer
    to the excitation pulse at the generator output.
    """
    denom = eta_mw * eta_det * p_pulse * t_pulse
    if denom <= 0:
        raise CalibrationError("efficiencies, power and duration must be positive")
    return n_det * HBAR * omega_drive / denom


@dataclass(frozen=True)
class LossBudget:
    """Itemized microwave input loss, all in dB (positive = loss)."""

    circulator_loss_db: float = 0.0
    unattenuated_line_db: float = 0.0
    drive_line_db: float = 0.0
    drive_line_sigma_db: float = 0.0
    segment_db: float = 0.0
    segment_sigma_db: float = 0.0

    def __post_init__(self):
        for f in (
            self.circulator_loss_db,
            self.unattenuated_line_db,
            self.drive_line_db,
            self.segment_db,
        ):
            if f < 0:
                raise CalibrationError("losses must be non-negative dB")
        if self.drive_line_sigma_db < 0 or self.segment_sigma_db < 0:
            raise CalibrationError("uncertainties must be non-negative")


def line_loss_budget(budget: LossBudget) -> tuple[float, float]:
    """Total input attenuation (drive line + device segment) with RSS sigma."""
    total = budget.drive_line_db + budget.segment_db
    sigma = math.hypot(budget.drive_line_sigma_db, budget.segment_sigma_db)
    return total, sigma


def unattenuated_line_loss(
    two_line_through_db: float,
    circulator_db: float = 0.0,
    sigma_through_db: float = 0.0,
    sigma_circulator_db: float = 0.0,
) -> tuple[float, float]:
    """Per-line loss from the symmetric two-line through measurement."""
    loss = (two_line_through_db - circulator_db) / 2.0
    sigma = math.hypot(sigma_through_db, sigma_circulator_db) / 2.0
    if loss < 0:
        raise CalibrationError("negative reconstructed line loss")
    return loss, sigma


def sideband_power_correction(fitted_peak_blue: float, fitted_peak_red: float) -> float:
    """Blue-power correction factor: ratio red/blue of fitted peak rates.

    Measured with the mechanical mode driven to large occupation, where
    the two sidebands must scatter equally; any residual ratio is
    waveguide interference and is applied as an input-power correction.
    """
    if fitted_peak_blue <= 0 or fitted_peak_red <= 0:
        raise CalibrationError("fitted peaks must be positive")
    return fitted_peak_red / fitted_peak_blue


def sideband_power_correction_from_spectra(freq, counts_blue, counts_red) -> float:
    """Fit Lorentzian peaks to the two driven spectra and take their ratio."""
    from .fitkit import fit_lorentzian_peak

    peak_blue = fit_lorentzian_peak(freq, counts_blue).params["height"]
    peak_red = fit_lorentzian_peak(freq, counts_red).params["height"]
    return sideband_power_correction(peak_blue, peak_red)

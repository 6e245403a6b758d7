"""Per-scenario plot specifications.

Each entry maps a scenario name to the PlotSpec list it renders, built
from the documented output filenames of that scenario.
"""

from __future__ import annotations

import math
from pathlib import Path

from .render import PlotSpec

TWO_PI_MHZ = 2.0 * math.pi * 1e6


def _spec(scenario, panel, inputs, out_dir, suffix="", **kw):
    name = scenario + (f"_{suffix}" if suffix else "")
    return PlotSpec(
        scenario=scenario,
        panel=panel,
        inputs=tuple(str(p) for p in inputs),
        output=str(Path(out_dir) / f"{name}.png"),
        **kw,
    )


def specs_for(scenario: str, in_dir: str | Path, out_dir: str | Path) -> list[PlotSpec]:
    if scenario not in BUILDERS:
        raise KeyError(scenario)
    return BUILDERS[scenario](Path(in_dir), out_dir)


def primary_input(scenario: str, in_dir: str | Path) -> Path:
    """The file whose presence marks the scenario as rendered by --all."""
    return Path(in_dir) / PRIMARY_FILES[scenario]


def _tables1(i, o):
    return [
        _spec("tableS1-derived", "bars", [i / "tableS1_derived.csv"], o,
              title="Derived device parameters",
              options={"columns": ["quantity", "value"]})
    ]


def _fig1(i, o):
    return [
        _spec("fig1-spectra", "lines", [i / "fig1_mw_spectrum.csv"], o, suffix="mw",
              title="Microwave reflection", x_label="probe frequency (GHz)",
              y_label="|S_ee|", options={"x_scale": 1e-9}),
        _spec("fig1-spectra", "scatter_fit", [i / "fig1_opt_spectrum.csv"], o,
              suffix="opt", title="Optical reflection",
              x_label="detuning (GHz)", y_label="reflection",
              options={"columns": ["detuning_hz", "reflection"], "x_scale": 1e-9}),
    ]


def _map(scenario, fname, title, i, o):
    return [
        _spec(scenario, "map", [i / fname], o, title=title,
              x_label="probe detuning (MHz)", y_label="control",
              options={"x_scale": 1e-6, "cbar_label": "|S|"})
    ]


def _fig2a(i, o):
    return _map("fig2a-crossing", "fig2a_crossing.csv",
                "Electromechanical avoided crossing", i, o)


def _fig2d(i, o):
    return _map("fig2d-cw-efficiency", "fig2d_cw_efficiency.csv",
                "CW transduction efficiency", i, o)


def _sis4(i, o):
    return _map("si-s4-othermode", "si_s4_othermode.csv",
                "Second transduction mode crossing", i, o)


def _fig2ef(i, o):
    return [
        _spec("fig2ef-step", "lines", [i / "fig2ef_step.csv"], o,
              title="Step response vs detuning", x_label="time (us)",
              y_label="|a_m|^2",
              options={"x_scale": 1e6, "label_scale": 1.0 / TWO_PI_MHZ,
                       "legend_title": "delta_e (MHz)"})
    ]


def _sis2(i, o):
    return [
        _spec("si-s2-loading", "trajectory",
              [i / "si_s2_loading_single.csv", i / "si_s2_loading_double.csv"], o,
              title="Single-photon loading", x_label="time (ns)", y_label="|a|^2")
    ]


def _fig3c(i, o):
    return [
        _spec("fig3c-clicks", "scatter_fit", [i / "fig3c_clicks.csv"], o,
              title="Detection probability vs input photons",
              x_label="input microwave photons", y_label="click probability",
              options={"columns": ["n_mic", "p_click"], "error_column": "sigma_p"})
    ]


def _fig3d(i, o):
    return [
        _spec("fig3d-nadd", "bars", [i / "fig3d_nadd.csv"], o,
              title="Added noise budget", x_label="eta_em", y_label="N_add",
              options={"columns": ["eta_em", "n_add"]})
    ]


def _fig4a(i, o):
    return [
        _spec("fig4a-reprate", "scatter_fit",
              [i / "fig4a_reprate.csv", i / "fig4a_fit.json"], o,
              title="Residual heating vs repetition rate",
              x_label="repetition rate (Hz)", y_label="relative noise",
              options={"columns": ["rep_rate_hz", "noise_rel"],
                       "error_column": "sigma", "log_x": True,
                       "overlay": "recovery"})
    ]


def _sis1(i, o):
    return [
        _spec("si-s1-tuning", "scatter_fit",
              [i / "si_s1_tuning.csv", i / "si_s1_fit.json"], o,
              title="Flux tuning", x_label="coil current (A)",
              y_label="frequency (GHz)",
              options={"columns": ["current_a", "freq_hz"], "y_scale": 1e-9,
                       "overlay": "quadratic"})
    ]


def _sis3(i, o):
    return [
        _spec("si-s3-correction", "scatter_fit", [i / "si_s3_peaks.csv"], o,
              title="Sideband calibration peaks", x_label="detuning (MHz)",
              y_label="counts",
              options={"columns": ["detuning_mhz", "counts_red"],
                       "extra_series": ["counts_blue"]})
    ]


def _eqs1(i, o):
    return [
        _spec("calib-eqS1", "scatter_fit", [i / "calib_eqS1.csv"], o,
              title="Gain cancellation", x_label="microwave line gain",
              y_label="eta_cw",
              options={"columns": ["gain_mw", "eta_cw"], "log_x": True})
    ]


def _eqs2(i, o):
    return [
        _spec("calib-eqS2", "bars", [i / "calib_eqS2.csv"], o,
              title="Pulsed efficiency reconstruction",
              y_label="eta_pulsed",
              options={"columns": ["eta_mw_db", "eta_pulsed"]})
    ]


def _lineloss(i, o):
    return [
        _spec("calib-lineloss", "bars", [i / "calib_lineloss.csv"], o,
              title="Microwave input loss budget", y_label="loss (dB)",
              options={"columns": ["item", "loss_db"], "error_column": "sigma_db"})
    ]


BUILDERS = {
    "tableS1-derived": _tables1,
    "fig1-spectra": _fig1,
    "fig2a-crossing": _fig2a,
    "fig2d-cw-efficiency": _fig2d,
    "fig2ef-step": _fig2ef,
    "si-s2-loading": _sis2,
    "fig3c-clicks": _fig3c,
    "fig3d-nadd": _fig3d,
    "fig4a-reprate": _fig4a,
    "si-s1-tuning": _sis1,
    "si-s3-correction": _sis3,
    "si-s4-othermode": _sis4,
    "calib-eqS1": _eqs1,
    "calib-eqS2": _eqs2,
    "calib-lineloss": _lineloss,
}

PRIMARY_FILES = {
    "tableS1-derived": "tableS1_derived.csv",
    "fig1-spectra": "fig1_mw_spectrum.csv",
    "fig2a-crossing": "fig2a_crossing.csv",
    "fig2d-cw-efficiency": "fig2d_cw_efficiency.csv",
    "fig2ef-step": "fig2ef_step.csv",
    "si-s2-loading": "si_s2_loading_single.csv",
    "fig3c-clicks": "fig3c_clicks.csv",
    "fig3d-nadd": "fig3d_nadd.csv",
    "fig4a-reprate": "fig4a_reprate.csv",
    "si-s1-tuning": "si_s1_tuning.csv",
    "si-s3-correction": "si_s3_peaks.csv",
    "si-s4-othermode": "si_s4_othermode.csv",
    "calib-eqS1": "calib_eqS1.csv",
    "calib-eqS2": "calib_eqS2.csv",
    "calib-lineloss": "calib_lineloss.csv",
}

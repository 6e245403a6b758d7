"""Steady-state response of the N-mode linear model.

Conventions (fixed here, used everywhere):

* Equation of motion d/dt a = A a + ext_in * c_in with
  A[j,j] = -i*Delta_j - kappa_j/2 and A[j,k] = +i*g_jk.
* The two-sided feedline drives its mode with sqrt(kappa_ee/2); the
  one-sided optical port with sqrt(kappa_oe). Output coupling uses the
  same amplitudes, and the feedline through-path adds a direct unity
  term, so on resonance |S_ee| = 1 - kappa_ee/kappa_e.
* The optical mode lives in its own rotating frame at pump + probe
  frequency; with a pump red-detuned by the mechanical frequency all
  detunings coincide at the matched point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import solve_unit_column
from .model_core import (
    FluxTuningCurve,
    ModeKind,
    ModelError,
    TransducerModel,
    PortGeometry,
    flux_tuned_frequency,
    total_linewidth,
)


@dataclass(frozen=True)
class DynamicalMatrix:
    labels: tuple[str, ...]
    A: np.ndarray  # (N, N) complex [rad/s]
    ext_in: np.ndarray  # per-mode input coupling amplitudes [sqrt(rad/s)]
    ext_out: np.ndarray  # per-mode output coupling amplitudes

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass
class SweepGrid2D:
    """Tabular 2-D sweep result: values[i, j] at (y_axis[i], x_axis[j])."""

    x_axis: np.ndarray  # probe detuning/frequency samples [rad/s]
    y_axis: np.ndarray  # control samples (coil current [A] or detuning [rad/s])
    values: np.ndarray
    x_label: str = "probe"
    y_label: str = "control"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (len(self.y_axis), len(self.x_axis)):
            raise ValueError("values dimensions must match axes lengths")


def _port_amplitude(mode) -> float:
    """Effective external coupling amplitude for a port mode."""
    if mode.port_geometry is PortGeometry.TRANSMISSION_TWOSIDED:
        return float(np.sqrt(mode.kappa_ext / 2.0))
    if mode.port_geometry is PortGeometry.REFLECTION_ONESIDED:
        return float(np.sqrt(mode.kappa_ext))
    return 0.0


def _detunings(model: TransducerModel, drive_freq: float, omega_e: float | None = None) -> np.ndarray:
    """Per-mode detunings in the probe rotating frame.

    omega_e overrides the electrical mode frequency (flux tuning).
    """
    deltas = np.empty(len(model.modes))
    for j, m in enumerate(model.modes):
        if m.kind is ModeKind.OPTICAL:
            if model.pump is None:
                raise ModelError("optical mode present but no pump configured")
            # upconverted photon sits at pump + drive frequency
            deltas[j] = -model.pump.detuning - drive_freq
        elif m.kind is ModeKind.ELECTRICAL and omega_e is not None:
            deltas[j] = omega_e - drive_freq
        else:
            deltas[j] = m.omega - drive_freq
    return deltas


def build_dynamical_matrix(
    model: TransducerModel, drive_freq: float, omega_e: float | None = None
) -> DynamicalMatrix:
    """Assemble A for a probe at drive_freq (microwave-frame, [rad/s])."""
    if not model.connected():
        raise ModelError("coupling graph is disconnected")
    n = len(model.modes)
    labels = tuple(m.label for m in model.modes)
    deltas = _detunings(model, drive_freq, omega_e)
    A = np.zeros((n, n), dtype=np.complex128)
    for j, m in enumerate(model.modes):
        A[j, j] = -1j * deltas[j] - total_linewidth(m) / 2.0
    for c in model.couplings:
        ia, ib = labels.index(c.mode_a), labels.index(c.mode_b)
        A[ia, ib] = A[ib, ia] = 1j * c.g
    ext = np.array([_port_amplitude(m) for m in model.modes])
    return DynamicalMatrix(labels=labels, A=A, ext_in=ext, ext_out=ext.copy())


def steady_state(mat: DynamicalMatrix, c_in: complex, port: str) -> np.ndarray:
    """Mode amplitudes a = -A^{-1} ext_in c_in for a CW drive on one port."""
    i = mat.index(port)
    if mat.ext_in[i] == 0.0:
        raise ModelError(f"port {port!r} has no external coupling")
    rhs = np.zeros(mat.dim, dtype=np.complex128)
    rhs[i] = mat.ext_in[i] * c_in
    try:
        return np.linalg.solve(-mat.A, rhs)
    except np.linalg.LinAlgError as exc:
        raise ModelError(
            "singular dynamical matrix (a lossless mode is resonant with the drive)"
        ) from exc


def s_parameter(
    model: TransducerModel, probe_freq: float, from_port: str, to_port: str,
    omega_e: float | None = None,
) -> complex:
    """Scattering parameter between two external ports at one frequency."""
    mat = build_dynamical_matrix(model, probe_freq, omega_e)
    i_in, i_out = mat.index(from_port), mat.index(to_port)
    if mat.ext_in[i_in] == 0.0 or mat.ext_out[i_out] == 0.0:
        raise ModelError("both ports need external coupling")
    try:
        col = np.linalg.solve(-mat.A, np.eye(mat.dim)[:, i_in])
    except np.linalg.LinAlgError as exc:
        raise ModelError("singular dynamical matrix") from exc
    direct = 1.0 if i_in == i_out else 0.0
    return complex(direct - mat.ext_out[i_out] * mat.ext_in[i_in] * col[i_out])


# -- gridded sweeps -------------------------------------------------------


def _sweep_matrices(
    model: TransducerModel,
    probe_freqs: np.ndarray,
    omega_e_values: np.ndarray,
) -> np.ndarray:
    """Stack of M = -A over the (control, probe) grid, shape (B, N, N)."""
    n = len(model.modes)
    labels = [m.label for m in model.modes]
    e_idx = None
    base_deltas = np.empty(n)
    for j, m in enumerate(model.modes):
        if m.kind is ModeKind.ELECTRICAL:
            e_idx = j
        if m.kind is ModeKind.OPTICAL:
            if model.pump is None:
                raise ModelError("optical mode present but no pump configured")
            base_deltas[j] = -model.pump.detuning
        else:
            base_deltas[j] = m.omega
    if e_idx is None:
        raise ModelError("sweeps need an electrical mode")
    kappas = np.array([total_linewidth(m) for m in model.modes])

    ny, nx = len(omega_e_values), len(probe_freqs)
    # detuning of mode j at grid point: base_j - probe, with electrical base
    # replaced by the control value
    probe = probe_freqs[None, :, None]  # (1, nx, 1)
    bases = np.broadcast_to(base_deltas, (ny, nx, n)).copy()
    bases[:, :, e_idx] = omega_e_values[:, None]
    deltas = bases - probe  # (ny, nx, n)

    M = np.zeros((ny, nx, n, n), dtype=np.complex128)
    idx = np.arange(n)
    M[:, :, idx, idx] = 1j * deltas + kappas / 2.0
    for c in model.couplings:
        ia, ib = labels.index(c.mode_a), labels.index(c.mode_b)
        M[:, :, ia, ib] = M[:, :, ib, ia] = -1j * c.g
    return M.reshape(ny * nx, n, n)


def s_parameter_sweep(
    model: TransducerModel,
    probe_freqs: np.ndarray,
    control_values: np.ndarray,
    control: str = "delta_e",
    from_port: str = "e",
    to_port: str = "e",
    flux: FluxTuningCurve | None = None,
) -> SweepGrid2D:
    """Complex S(from->to) on a (control, probe) grid.

    control = "delta_e" interprets control values as the electrical-mode
    detuning from the (first) mechanical mode; "coil_current" maps them
    through the flux tuning curve.
    """
    probe_freqs = np.asarray(probe_freqs, dtype=float)
    control_values = np.asarray(control_values, dtype=float)
    if probe_freqs.size == 0 or control_values.size == 0:
        raise ValueError("sweep ranges must be non-empty")
    if control == "coil_current":
        if flux is None:
            raise ValueError("coil_current control needs a FluxTuningCurve")
        omega_e = np.array([flux_tuned_frequency(flux, i) for i in control_values])
    elif control == "delta_e":
        omega_e = model.mechanical[0].omega + control_values
    else:
        raise ValueError(f"unknown control {control!r}")

    if not model.connected():
        raise ModelError("coupling graph is disconnected")
    labels = [m.label for m in model.modes]
    amp = {m.label: _port_amplitude(m) for m in model.modes}
    if amp[from_port] == 0.0 or amp[to_port] == 0.0:
        raise ModelError("both ports need external coupling")

    mats = _sweep_matrices(model, probe_freqs, omega_e)
    cols = solve_unit_column(mats, labels.index(from_port))
    entry = cols[:, labels.index(to_port)].reshape(len(control_values), len(probe_freqs))
    direct = 1.0 if from_port == to_port else 0.0
    values = direct - amp[to_port] * amp[from_port] * entry
    return SweepGrid2D(
        x_axis=probe_freqs,
        y_axis=control_values,
        values=values,
        x_label="probe",
        y_label=control,
        meta={"from_port": from_port, "to_port": to_port},
    )


def avoided_crossing_map(
    model: TransducerModel,
    probe_range: np.ndarray,
    control_range: np.ndarray,
    control: str = "delta_e",
    from_port: str = "e",
    to_port: str = "e",
    flux: FluxTuningCurve | None = None,
) -> SweepGrid2D:
    """|S| magnitude map across the electromechanical crossing."""
    grid = s_parameter_sweep(
        model, probe_range, control_range, control, from_port, to_port, flux
    )
    grid.values = np.abs(grid.values)
    return grid


def cw_efficiency_map(
    model: TransducerModel,
    probe_range: np.ndarray,
    control_range: np.ndarray,
    control: str = "delta_e",
    flux: FluxTuningCurve | None = None,
) -> SweepGrid2D:
    """Bidirectional waveguide-to-waveguide efficiency |S_oe S_eo| per point."""
    if model.pump is None or model.pump.n_c <= 0:
        grid = s_parameter_sweep(model, probe_range, control_range, control, "e", "e", flux)
        grid.values = np.zeros_like(grid.values, dtype=float)
        return grid
    oe = s_parameter_sweep(
        model, probe_range, control_range, control, "e", model.optical.label, flux
    )
    eo = s_parameter_sweep(
        model, probe_range, control_range, control, model.optical.label, "e", flux
    )
    oe.values = np.abs(oe.values * eo.values)
    oe.meta = {"quantity": "cw_efficiency"}
    return oe


# -- map post-processing --------------------------------------------------


def branch_minima(row: np.ndarray, x_axis: np.ndarray) -> tuple[float, float] | None:
    """Frequencies of the two deepest local minima of one |S_ee| row."""
    v = np.asarray(row, dtype=float)
    interior = (v[1:-1] < v[:-2]) & (v[1:-1] <= v[2:])
    idx = np.nonzero(interior)[0] + 1
    # ignore numerical-noise ripples: a branch dip must reach at least
    # 0.1% of the row's full range below the background level
    span = v.max() - v.min()
    if span > 0:
        idx = idx[v[idx] < v.max() - 1e-3 * span]
    if len(idx) < 2:
        return None
    deepest = idx[np.argsort(v[idx])[:2]]
    lo, hi = sorted(x_axis[deepest])
    return float(lo), float(hi)


def min_splitting(grid: SweepGrid2D) -> float:
    """Minimum branch separation over the control axis [rad/s]."""
    best = np.inf
    for row in np.abs(grid.values):
        pair = branch_minima(row, grid.x_axis)
        if pair is not None:
            best = min(best, pair[1] - pair[0])
    if not np.isfinite(best):
        raise ValueError("no avoided-crossing branches found in map")
    return float(best)

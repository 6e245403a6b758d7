"""Domain types for the transducer and closed-form derived quantities.

All rates are stored internally as angular frequencies [rad/s]. Device
files quote values in Hz (the convention of most published parameter
tables) and are converted on load. The helper :data:`TWO_PI` is used for
that conversion throughout.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

TWO_PI = 2.0 * math.pi


class ModeKind(enum.Enum):
    ELECTRICAL = "electrical"
    MECHANICAL = "mechanical"
    OPTICAL = "optical"


class PortGeometry(enum.Enum):
    """How a mode couples to its external channel.

    A two-sided feedline carries the wave past the resonator, so only half
    of the external coupling rate drives the mode; a one-sided reflection
    port uses the full rate.
    """

    TRANSMISSION_TWOSIDED = "transmission_twosided"
    REFLECTION_ONESIDED = "reflection_onesided"
    NONE = "none"


class ModelError(ValueError):
    """Invalid model construction or degenerate input."""


@dataclass(frozen=True)
class Mode:
    label: str
    kind: ModeKind
    omega: float  # angular frequency [rad/s]
    kappa_int: float  # intrinsic energy loss rate [rad/s]
    kappa_ext: float = 0.0  # external coupling rate [rad/s]
    port_geometry: PortGeometry = PortGeometry.NONE

    def __post_init__(self):
        if not (self.omega > 0):
            raise ModelError(f"mode {self.label}: omega must be positive")
        if self.kappa_int < 0 or self.kappa_ext < 0:
            raise ModelError(f"mode {self.label}: loss rates must be non-negative")
        if not all(map(math.isfinite, (self.omega, self.kappa_int, self.kappa_ext))):
            raise ModelError(f"mode {self.label}: non-finite parameter")


@dataclass(frozen=True)
class Coupling:
    mode_a: str
    mode_b: str
    g: float  # coupling rate [rad/s]

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ModelError("self-coupling is not allowed")
        if self.g < 0 or not math.isfinite(self.g):
            raise ModelError("coupling rate must be finite and non-negative")


@dataclass(frozen=True)
class PumpConfig:
    """Red/blue-detuned optical pump in the linearized picture.

    ``detuning`` is relative to the optical resonance (negative = red).
    ``n_c`` is a free model input; it is never derived from laser power.
    """

    detuning: float  # [rad/s]
    n_c: float  # intracavity photons
    g_om0: float  # single-photon optomechanical rate [rad/s]

    def __post_init__(self):
        if self.n_c < 0:
            raise ModelError("intracavity photon number must be non-negative")
        if self.g_om0 < 0:
            raise ModelError("g_om0 must be non-negative")


@dataclass(frozen=True)
class FluxTuningCurve:
    """Quadratic frequency tuning of a kinetic-inductance resonator."""

    omega0: float  # zero-current frequency [rad/s]
    c2: float  # quadratic coefficient [rad/s per A^2]


@dataclass(frozen=True)
class TransducerModel:
    modes: tuple[Mode, ...]
    couplings: tuple[Coupling, ...]
    pump: PumpConfig | None = None

    def __post_init__(self):
        labels = [m.label for m in self.modes]
        if len(set(labels)) != len(labels):
            raise ModelError("duplicate mode labels")
        for c in self.couplings:
            if c.mode_a not in labels or c.mode_b not in labels:
                raise ModelError(f"coupling references unknown mode {c.mode_a}/{c.mode_b}")
        for kind in (ModeKind.ELECTRICAL, ModeKind.OPTICAL):
            if sum(1 for m in self.modes if m.kind is kind) > 1:
                raise ModelError(f"at most one {kind.value} mode per model")

    # -- lookups ----------------------------------------------------------
    def mode(self, label: str) -> Mode:
        for m in self.modes:
            if m.label == label:
                return m
        raise ModelError(f"no mode labelled {label!r}")

    def index(self, label: str) -> int:
        for i, m in enumerate(self.modes):
            if m.label == label:
                return i
        raise ModelError(f"no mode labelled {label!r}")

    def _single(self, kind: ModeKind) -> Mode | None:
        for m in self.modes:
            if m.kind is kind:
                return m
        return None

    @property
    def electrical(self) -> Mode | None:
        return self._single(ModeKind.ELECTRICAL)

    @property
    def optical(self) -> Mode | None:
        return self._single(ModeKind.OPTICAL)

    @property
    def mechanical(self) -> tuple[Mode, ...]:
        return tuple(m for m in self.modes if m.kind is ModeKind.MECHANICAL)

    def g(self, label_a: str, label_b: str) -> float:
        for c in self.couplings:
            if {c.mode_a, c.mode_b} == {label_a, label_b}:
                return c.g
        return 0.0

    def connected(self) -> bool:
        """True when the coupling graph is structurally connected.

        Couplings with g = 0 still count: a deliberately zeroed rate is a
        valid limit, a missing edge is a model error.
        """
        if len(self.modes) <= 1:
            return True
        adj: dict[str, set[str]] = {m.label: set() for m in self.modes}
        for c in self.couplings:
            adj[c.mode_a].add(c.mode_b)
            adj[c.mode_b].add(c.mode_a)
        seen = {self.modes[0].label}
        stack = [self.modes[0].label]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(self.modes)

    def with_mode(self, label: str, **changes) -> "TransducerModel":
        """Return a copy with one mode's fields replaced."""
        new = tuple(replace(m, **changes) if m.label == label else m for m in self.modes)
        return replace(self, modes=new)

    def with_coupling(self, label_a: str, label_b: str, g: float) -> "TransducerModel":
        """Return a copy with one coupling rate replaced (added if absent)."""
        found = False
        new = []
        for c in self.couplings:
            if {c.mode_a, c.mode_b} == {label_a, label_b}:
                new.append(Coupling(c.mode_a, c.mode_b, g))
                found = True
            else:
                new.append(c)
        if not found:
            new.append(Coupling(label_a, label_b, g))
        return replace(self, couplings=tuple(new))

    def content_hash(self) -> str:
        """Stable short hash of the model parameters, for output sidecars."""
        payload = json.dumps(_model_to_dict(self), sort_keys=True)
        return hashlib.sha1(payload.encode()).hexdigest()[:12]


# -- closed-form derived quantities ---------------------------------------


def total_linewidth(mode: Mode) -> float:
    """Total energy decay rate kappa_int + kappa_ext [rad/s]."""
    return mode.kappa_int + mode.kappa_ext


def coupling_efficiency(mode: Mode) -> float:
    """External coupling efficiency of a port, per its geometry convention.

    Two-sided feedline: kappa_ext / (2 kappa_tot). One-sided reflection:
    kappa_ext / kappa_tot.
    """
    kappa = total_linewidth(mode)
    if kappa <= 0:
        raise ModelError(f"mode {mode.label}: zero total linewidth")
    if mode.port_geometry is PortGeometry.TRANSMISSION_TWOSIDED:
        return mode.kappa_ext / (2.0 * kappa)
    if mode.port_geometry is PortGeometry.REFLECTION_ONESIDED:
        return mode.kappa_ext / kappa
    raise ModelError(f"mode {mode.label} has no external port")


def cooperativity(g: float, kappa_a: float, kappa_b: float) -> float:
    """Dimensionless cooperativity 4 g^2 / (kappa_a kappa_b)."""
    if kappa_a <= 0 or kappa_b <= 0:
        raise ModelError("cooperativity needs strictly positive linewidths")
    return 4.0 * g * g / (kappa_a * kappa_b)


def flux_tuned_frequency(curve: FluxTuningCurve, current: float) -> float:
    """Resonator frequency at a given coil current [rad/s]."""
    return curve.omega0 - curve.c2 * current * current


def pump_enhanced_gom(pump: PumpConfig) -> float:
    """Linearized optomechanical rate g_om0 * sqrt(n_c) [rad/s]."""
    if pump.n_c < 0:
        raise ModelError("intracavity photon number must be non-negative")
    return pump.g_om0 * math.sqrt(pump.n_c)


def matched_transduction_efficiency(
    eta_e: float, eta_o: float, c_em: float, c_om: float
) -> float:
    """Waveguide-to-waveguide photon-number efficiency at matched resonance.

    eta_e * eta_o * 4 C_em C_om / (1 + C_em + C_om)^2 -- the closed-form
    value of |S_oe|^2 when all three modes are resonant with the probe.
    """
    return eta_e * eta_o * 4.0 * c_em * c_om / (1.0 + c_em + c_om) ** 2


# -- device file I/O ------------------------------------------------------


def _model_to_dict(model: TransducerModel) -> dict:
    d = {
        "modes": [
            {
                "label": m.label,
                "kind": m.kind.value,
                "freq_hz": m.omega / TWO_PI,
                "kappa_int_hz": m.kappa_int / TWO_PI,
                "kappa_ext_hz": m.kappa_ext / TWO_PI,
                "port_geometry": m.port_geometry.value,
            }
            for m in model.modes
        ],
        "couplings": [
            {"mode_a": c.mode_a, "mode_b": c.mode_b, "g_hz": c.g / TWO_PI}
            for c in model.couplings
        ],
    }
    if model.pump is not None:
        d["pump"] = {
            "detuning_hz": model.pump.detuning / TWO_PI,
            "n_c": model.pump.n_c,
            "g_om0_hz": model.pump.g_om0 / TWO_PI,
        }
    return d


def model_from_dict(d: dict) -> TransducerModel:
    modes = tuple(
        Mode(
            label=m["label"],
            kind=ModeKind(m["kind"]),
            omega=TWO_PI * m["freq_hz"],
            kappa_int=TWO_PI * m["kappa_int_hz"],
            kappa_ext=TWO_PI * m.get("kappa_ext_hz", 0.0),
            port_geometry=PortGeometry(m.get("port_geometry", "none")),
        )
        for m in d["modes"]
    )
    couplings = tuple(
        Coupling(c["mode_a"], c["mode_b"], TWO_PI * c["g_hz"]) for c in d["couplings"]
    )
    pump = None
    if d.get("pump") is not None:
        p = d["pump"]
        pump = PumpConfig(
            detuning=TWO_PI * p["detuning_hz"],
            n_c=p["n_c"],
            g_om0=TWO_PI * p["g_om0_hz"],
        )
    return TransducerModel(modes=modes, couplings=couplings, pump=pump)


def load_device(path: str | Path) -> TransducerModel:
    """Load a device-parameter JSON file (frequencies in Hz)."""
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def save_device(model: TransducerModel, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(_model_to_dict(model), fh, indent=2)
        fh.write("\n")


def bundled_device(name: str = "device_tableS1.json") -> TransducerModel:
    """Load a device file shipped with the package."""
    text = resources.files("transim.data").joinpath(name).read_text()
    return model_from_dict(json.loads(text))

"""Coupled-mode simulator for a piezo-optomechanical microwave-to-optics
transducer: spectra, avoided crossings, pulse dynamics, transduction
efficiency, added noise, and the associated calibration and fitting
procedures.
"""

from ._backend import BACKEND
from .model_core import (
    Coupling,
    FluxTuningCurve,
    Mode,
    ModeKind,
    ModelError,
    PortGeometry,
    PumpConfig,
    TransducerModel,
    bundled_device,
    load_device,
    save_device,
)

__all__ = [
    "BACKEND",
    "Coupling",
    "FluxTuningCurve",
    "Mode",
    "ModeKind",
    "ModelError",
    "PortGeometry",
    "PumpConfig",
    "TransducerModel",
    "bundled_device",
    "load_device",
    "save_device",
]

__version__ = "1.0.0"

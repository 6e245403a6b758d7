import numpy as np
import pytest

from transim import presets
from transim.model_core import (
    Coupling,
    Mode,
    ModeKind,
    PortGeometry,
    PumpConfig,
    TransducerModel,
)


def random_model(rng, n_modes=3, with_optical=True):
    """A random connected chain e - m - (o), physically sensible rates."""
    modes = [
        Mode("e", ModeKind.ELECTRICAL, rng.uniform(4e9, 6e9) * 2 * np.pi,
             rng.uniform(0.2e6, 3e6) * 2 * np.pi, rng.uniform(0.5e6, 4e6) * 2 * np.pi,
             PortGeometry.TRANSMISSION_TWOSIDED),
        Mode("m", ModeKind.MECHANICAL, rng.uniform(4e9, 6e9) * 2 * np.pi,
             rng.uniform(0.2e6, 4e6) * 2 * np.pi, 0.0),
    ]
    couplings = [Coupling("e", "m", rng.uniform(0.5e6, 9e6) * 2 * np.pi)]
    pump = None
    if with_optical and n_modes >= 3:
        modes.append(
            Mode("o", ModeKind.OPTICAL, 193e12 * 2 * np.pi,
                 rng.uniform(0.5e9, 2e9) * 2 * np.pi, rng.uniform(1e9, 4e9) * 2 * np.pi,
                 PortGeometry.REFLECTION_ONESIDED)
        )
        g_om = rng.uniform(0.1e6, 2e6) * 2 * np.pi
        couplings.append(Coupling("m", "o", g_om))
        pump = PumpConfig(detuning=-modes[1].omega, n_c=1.0, g_om0=g_om)
    return TransducerModel(modes=tuple(modes), couplings=tuple(couplings), pump=pump)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def table_s1():
    return presets.table_s1()

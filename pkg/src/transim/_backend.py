"""Kernel backend selection: compiled extension if present, numpy twin otherwise.

Set TRANSIM_FORCE_PY=1 to force the numpy path (used by the benchmark and
the fallback tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TRANSIM_FORCE_PY"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND: str = kernels.BACKEND
solve_unit_column = kernels.solve_unit_column

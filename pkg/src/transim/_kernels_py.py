"""Pure-numpy twin of the compiled sweep kernel.

Same contract as ``_kernels.solve_unit_column``; used when the extension
is unavailable, and as the reference side of the kernel benchmark.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def solve_unit_column(mats: np.ndarray, col: int) -> np.ndarray:
    """Solve mats[b] @ x = e_col per batch; NaN rows for singular systems."""
    mats = np.asarray(mats, dtype=np.complex128)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("matrix stack must be (B, N, N)")
    n = mats.shape[1]
    if not 0 <= col < n:
        raise ValueError("column index out of range")
    rhs = np.zeros(n, dtype=np.complex128)
    rhs[col] = 1.0
    out = np.empty((mats.shape[0], n), dtype=np.complex128)
    # LAPACK refuses exactly singular batches wholesale; catch and fall
    # back to per-matrix solves only in that case.
    batched_rhs = np.broadcast_to(rhs[:, None], (mats.shape[0], n, 1))
    try:
        out[:] = np.linalg.solve(mats, batched_rhs)[:, :, 0]
        return out
    except np.linalg.LinAlgError:
        pass
    for b in range(mats.shape[0]):
        try:
            out[b] = np.linalg.solve(mats[b], rhs)
        except np.linalg.LinAlgError:
            out[b] = np.nan + 1j * np.nan
    return out

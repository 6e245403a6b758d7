"""CSV/JSON loaders with schema validation.

Every loader checks the header against the columns the panel needs and
raises SchemaError naming the first missing column.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """Input file does not match the documented scenario schema."""


def read_columns(path: str | Path, required: list[str]) -> dict[str, np.ndarray]:
    """Read a header CSV into float columns, enforcing required names."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path} does not exist")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in required:
            if col not in header:
                raise SchemaError(
                    f"{path.name}: missing column {col!r} (header: {', '.join(header) or 'empty'})"
                )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path.name}: no data rows")
    out = {}
    for col in header:
        try:
            out[col] = np.array([float(r[col]) for r in rows])
        except (TypeError, ValueError):
            out[col] = np.array([r[col] for r in rows], dtype=object)
    return out


def read_sweep(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sweep CSV (control, probe_hz, re, im, abs2) -> (control, probe, abs2 grid)."""
    cols = read_columns(path, ["control", "probe_hz", "abs2"])
    control = np.unique(cols["control"])
    probe = np.unique(cols["probe_hz"])
    if len(control) * len(probe) != len(cols["abs2"]):
        raise SchemaError(f"{Path(path).name}: not a complete rectangular grid")
    grid = np.full((len(control), len(probe)), np.nan)
    ci = np.searchsorted(control, cols["control"])
    pi = np.searchsorted(probe, cols["probe_hz"])
    grid[ci, pi] = cols["abs2"]
    return control, probe, grid


def read_trajectory(path: str | Path) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Trajectory CSV (time_s, one |a|^2 column per mode label)."""
    cols = read_columns(path, ["time_s"])
    t = cols.pop("time_s")
    if not cols:
        raise SchemaError(f"{Path(path).name}: no mode columns besides time_s")
    return t, cols


def read_fit_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path} does not exist")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path.name}: invalid JSON ({exc})") from exc
    if "params" not in payload:
        raise SchemaError(f"{path.name}: missing 'params' object")
    return payload

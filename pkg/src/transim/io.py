"""CSV / JSON output contract shared by the scenario runner and the
plotting front-end.

CSV bodies are deterministic (fixed float formatting, no timestamps);
run metadata lives in the JSON sidecar only.
"""

from __future__ import annotations

import csv
import datetime
import json
from pathlib import Path

import numpy as np

from .freq_domain import SweepGrid2D
from .model_core import TWO_PI
from .time_domain import Trajectory

FLOAT_FMT = "{:.10e}"


def _fmt(v) -> str:
    return FLOAT_FMT.format(float(v))


def write_sweep_csv(path: str | Path, grid: SweepGrid2D, x_in_hz: bool = True) -> None:
    """Columns: control, probe_hz, re, im, abs2 (re/im zero for real maps)."""
    values = np.asarray(grid.values)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["control", "probe_hz", "re", "im", "abs2"])
        for y, row in zip(grid.y_axis, values):
            for x, v in zip(grid.x_axis, row):
                xhz = x / TWO_PI if x_in_hz else x
                w.writerow(
                    [
                        _fmt(y),
                        _fmt(xhz),
                        _fmt(np.real(v)),
                        _fmt(np.imag(v)),
                        _fmt(np.abs(v) ** 2 if np.iscomplexobj(values) else v),
                    ]
                )


def read_sweep_csv(path: str | Path) -> SweepGrid2D:
    """Rebuild a SweepGrid2D (complex values) from its CSV form."""
    controls, probes, vals = [], [], {}
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        for row in r:
            c, p = float(row["control"]), float(row["probe_hz"]) * TWO_PI
            if c not in controls:
                controls.append(c)
            if p not in probes:
                probes.append(p)
            vals[(c, p)] = complex(float(row["re"]), float(row["im"]))
    y = np.array(controls)
    x = np.array(probes)
    values = np.array([[vals[(c, p)] for p in probes] for c in controls])
    return SweepGrid2D(x_axis=x, y_axis=y, values=values)


def write_trajectory_csv(path: str | Path, traj: Trajectory) -> None:
    """Columns: time_s, then |a|^2 per mode label."""
    occ = traj.occupations
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["time_s"] + list(traj.labels))
        for j, t in enumerate(traj.times):
            w.writerow([_fmt(t)] + [_fmt(occ[i, j]) for i in range(len(traj.labels))])


def write_table_csv(path: str | Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([x if isinstance(x, str) else _fmt(x) for x in row])


def write_sidecar(path: str | Path, payload: dict) -> None:
    payload = dict(payload)
    payload["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, default=float)
        fh.write("\n")

"""Shared fixtures: small synthetic scenario output files."""

import json
import math

import pytest


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    path.write_text("\r\n".join(lines) + "\r\n")
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    """A 3x5 rectangular sweep grid."""
    rows = []
    for c in (0.1, 0.2, 0.3):
        for k in range(5):
            f = 5e9 + k * 1e6
            re, im = 0.5, 0.1 * k
            rows.append((c, f, re, im, re * re + im * im))
    return _write_csv(tmp_path / "sweep.csv",
                      ["control", "probe_hz", "re", "im", "abs2"], rows)


@pytest.fixture
def trajectory_csv(tmp_path):
    rows = [(i * 1e-9, math.sin(i / 10.0) ** 2, math.cos(i / 10.0) ** 2)
            for i in range(40)]
    return _write_csv(tmp_path / "traj.csv", ["time_s", "mode_a", "mode_b"], rows)


@pytest.fixture
def scatter_csv(tmp_path):
    rows = [(50e3 * 2 ** k, 1.0 + 0.1 * k, 0.02) for k in range(8)]
    return _write_csv(tmp_path / "scatter.csv",
                      ["rep_rate_hz", "noise_rel", "sigma"], rows)


@pytest.fixture
def fit_json(tmp_path):
    path = tmp_path / "fit.json"
    path.write_text(json.dumps(
        {"params": {"tau": 2e-6, "n_heat": 0.4, "n_base": 0.41}}))
    return path


@pytest.fixture
def bars_csv(tmp_path):
    rows = [("circulator", 0.9, 0.05), ("cable", 2.1, 0.1), ("switch", 1.3, 0.08)]
    return _write_csv(tmp_path / "bars.csv", ["item", "loss_db", "sigma_db"], rows)

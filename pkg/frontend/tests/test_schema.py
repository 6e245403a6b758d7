import numpy as np
import pytest

from transim_plot.schema import (
    SchemaError,
    read_columns,
    read_fit_json,
    read_sweep,
    read_trajectory,
)


def test_read_columns_roundtrip(scatter_csv):
    cols = read_columns(scatter_csv, ["rep_rate_hz", "noise_rel"])
    assert set(cols) == {"rep_rate_hz", "noise_rel", "sigma"}
    assert cols["rep_rate_hz"][0] == 50e3
    assert np.all(np.diff(cols["noise_rel"]) > 0)


def test_missing_column_named(scatter_csv):
    with pytest.raises(SchemaError, match=r"missing column 'current_a'"):
        read_columns(scatter_csv, ["current_a"])


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="does not exist"):
        read_columns(tmp_path / "nope.csv", ["x"])


def test_empty_data_rows(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("x,y\r\n")
    with pytest.raises(SchemaError, match="no data rows"):
        read_columns(path, ["x", "y"])


def test_non_numeric_column_kept_as_object(bars_csv):
    cols = read_columns(bars_csv, ["item", "loss_db"])
    assert cols["item"].dtype == object
    assert cols["loss_db"].dtype == float


def test_read_sweep_grid(sweep_csv):
    control, probe, grid = read_sweep(sweep_csv)
    assert control.shape == (3,)
    assert probe.shape == (5,)
    assert grid.shape == (3, 5)
    assert not np.any(np.isnan(grid))


def test_read_sweep_ragged_grid(tmp_path, sweep_csv):
    text = sweep_csv.read_text()
    # drop the last data row to break the rectangle
    lines = text.strip().splitlines()
    (tmp_path / "ragged.csv").write_text("\r\n".join(lines[:-1]) + "\r\n")
    with pytest.raises(SchemaError, match="rectangular"):
        read_sweep(tmp_path / "ragged.csv")


def test_read_trajectory(trajectory_csv):
    t, modes = read_trajectory(trajectory_csv)
    assert t.shape == (40,)
    assert set(modes) == {"mode_a", "mode_b"}


def test_trajectory_requires_mode_columns(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("time_s\r\n0.0\r\n1.0\r\n")
    with pytest.raises(SchemaError, match="no mode columns"):
        read_trajectory(path)


def test_fit_json(fit_json):
    payload = read_fit_json(fit_json)
    assert payload["params"]["tau"] == 2e-6


def test_fit_json_missing_params(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    with pytest.raises(SchemaError, match="params"):
        read_fit_json(path)


def test_fit_json_invalid(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError, match="invalid JSON"):
        read_fit_json(path)

import json
import subprocess
import sys

import numpy as np
import pytest

from transim import cli
from transim import scenarios as sc
from transim.io import read_sweep_csv, write_table_csv


ALL_SCENARIOS = [
    "tableS1-derived", "fig1-spectra", "fig2a-crossing", "fig2d-cw-efficiency",
    "fig2ef-step", "fig3c-clicks", "fig3d-nadd", "fig4a-reprate",
    "si-s1-tuning", "si-s2-loading", "si-s3-correction", "si-s4-othermode",
    "calib-eqS1", "calib-eqS2", "calib-lineloss",
]


class TestRegistry:
    def test_all_scenarios_registered(self):
        assert set(ALL_SCENARIOS) <= set(sc.SCENARIOS)

    def test_unknown_scenario_raises(self, tmp_path):
        with pytest.raises(sc.UnknownScenarioError):
            sc.run("no-such-scenario", {}, tmp_path)

    @pytest.mark.parametrize("name", ALL_SCENARIOS)
    def test_scenario_passes_and_writes_sidecar(self, name, tmp_path):
        report = sc.run(name, {}, tmp_path)
        assert report.passed, [
            (a.quantity, a.expected, a.actual) for a in report.assertions if not a.passed
        ]
        sidecar = json.loads((tmp_path / f"{name}.json").read_text())
        assert sidecar["scenario"] == name
        assert sidecar["passed"] is True
        assert all("provenance" in a for a in sidecar["assertions"])

    def test_deterministic_csv_bodies(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        sc.run("fig4a-reprate", {"seed": 11}, a)
        sc.run("fig4a-reprate", {"seed": 11}, b)
        assert (a / "fig4a_reprate.csv").read_bytes() == (b / "fig4a_reprate.csv").read_bytes()

    def test_seed_changes_noisy_outputs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        sc.run("fig4a-reprate", {"seed": 1}, a)
        sc.run("fig4a-reprate", {"seed": 2}, b)
        assert (a / "fig4a_reprate.csv").read_bytes() != (b / "fig4a_reprate.csv").read_bytes()

    def test_sweep_csv_round_trip(self, tmp_path):
        sc.run("fig1-spectra", {}, tmp_path)
        grid = read_sweep_csv(tmp_path / "fig1_mw_spectrum.csv")
        assert grid.values.shape == (1, 401)
        assert np.abs(grid.values).min() == pytest.approx(1 - 2.213 / 3.439, abs=1e-4)


class TestCli:
    def test_run_pass_exit_zero(self, tmp_path, capsys):
        rc = cli.main(["run", "tableS1-derived", "--out", str(tmp_path)])
        assert rc == 0
        assert "PASS" in capsys.readouterr().out

    def test_run_unknown_exit_two(self, tmp_path, capsys):
        assert cli.main(["run", "nope", "--out", str(tmp_path)]) == 2

    def test_bad_config_exit_three(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "tableS1-derived", "--config", str(bad), "--out", str(tmp_path)])
        assert exc.value.code == 3

    def test_json_report(self, tmp_path, capsys):
        rc = cli.main(["run", "calib-lineloss", "--out", str(tmp_path), "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        assert payload["scenario"] == "calib-lineloss"

    def test_list_contains_all(self, capsys):
        assert cli.main(["list"]) == 0
        out = capsys.readouterr().out
        for name in ALL_SCENARIOS:
            assert name in out

    def test_list_json(self, capsys):
        assert cli.main(["list", "--json"]) == 0
        items = json.loads(capsys.readouterr().out)
        names = {i["name"] for i in items}
        assert set(ALL_SCENARIOS) <= names
        assert all(i["anchor"] for i in items)

    def test_config_dir_env(self, tmp_path, monkeypatch, capsys):
        cfg_dir = tmp_path / "cfgs"
        cfg_dir.mkdir()
        (cfg_dir / "fig4a-reprate.json").write_text('{"seed": 99}')
        monkeypatch.setenv(cli.CONFIG_DIR_ENV, str(cfg_dir))
        rc = cli.main(["run", "fig4a-reprate", "--out", str(tmp_path / "out"), "--json"])
        assert rc == 0
        sidecar = json.loads((tmp_path / "out" / "fig4a-reprate.json").read_text())
        assert sidecar["seed"] == 99

    def test_seed_flag_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed": 5}')
        cli.main([
            "run", "fig4a-reprate", "--config", str(cfg),
            "--out", str(tmp_path / "out"), "--seed", "6",
        ])
        sidecar = json.loads((tmp_path / "out" / "fig4a-reprate.json").read_text())
        assert sidecar["seed"] == 6


class TestFitCommand:
    def test_fit_flux(self, tmp_path, capsys):
        cur = np.linspace(-0.5, 0.5, 11)
        path = tmp_path / "flux.csv"
        write_table_csv(
            path, ["current_a", "freq_hz"],
            np.column_stack([cur, 5.07e9 - 1.8e9 * cur**2]),
        )
        rc = cli.main(["fit", "flux", "--data", str(path), "--json"])
        assert rc == 0
        result = json.loads(capsys.readouterr().out)
        assert result["params"]["c2"] == pytest.approx(1.8e9, rel=1e-9)

    def test_unknown_op_exit_two(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("x,y\n1,2\n")
        assert cli.main(["fit", "zzz", "--data", str(p)]) == 2

    def test_missing_column_exit_three(self, tmp_path, capsys):
        p = tmp_path / "x.csv"
        p.write_text("a,b\n1,2\n")
        assert cli.main(["fit", "flux", "--data", str(p)]) == 3
        assert "current_a" in capsys.readouterr().err

    def test_missing_file_exit_three(self, tmp_path):
        assert cli.main(["fit", "flux", "--data", str(tmp_path / "none.csv")]) == 3

    def test_console_script_installed(self):
        out = subprocess.run(
            [sys.executable, "-m", "transim.cli", "list"],
            capture_output=True, text=True,
        )
        # module execution mirrors the installed console script
        assert out.returncode == 0
        assert "tableS1-derived" in out.stdout

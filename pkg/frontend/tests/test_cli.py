import shutil

from transim_plot import cli, registry


def _make_crossing(in_dir, sweep_csv):
    in_dir.mkdir(exist_ok=True)
    shutil.copy(sweep_csv, in_dir / "fig2a_crossing.csv")


def _make_lineloss(in_dir, bars_csv):
    in_dir.mkdir(exist_ok=True)
    shutil.copy(bars_csv, in_dir / "calib_lineloss.csv")


def test_single_scenario(tmp_path, sweep_csv, capsys):
    in_dir, out_dir = tmp_path / "in", tmp_path / "out"
    _make_crossing(in_dir, sweep_csv)
    rc = cli.main(["fig2a-crossing", "--in", str(in_dir), "--out", str(out_dir)])
    assert rc == 0
    assert (out_dir / "fig2a-crossing.png").exists()
    assert str(out_dir / "fig2a-crossing.png") in capsys.readouterr().out


def test_all_renders_only_present(tmp_path, sweep_csv, bars_csv):
    in_dir, out_dir = tmp_path / "in", tmp_path / "out"
    _make_crossing(in_dir, sweep_csv)
    _make_lineloss(in_dir, bars_csv)
    rc = cli.main(["--all", "--in", str(in_dir), "--out", str(out_dir)])
    assert rc == 0
    written = sorted(p.name for p in out_dir.glob("*.png"))
    assert written == ["calib-lineloss.png", "fig2a-crossing.png"]


def test_all_empty_dir_exit_3(tmp_path, capsys):
    (tmp_path / "in").mkdir()
    rc = cli.main(["--all", "--in", str(tmp_path / "in"),
                   "--out", str(tmp_path / "out")])
    assert rc == 3
    assert "no scenario outputs" in capsys.readouterr().err


def test_unknown_scenario_exit_2(tmp_path, capsys):
    rc = cli.main(["no-such-scenario", "--in", str(tmp_path),
                   "--out", str(tmp_path)])
    assert rc == 2
    err = capsys.readouterr().err
    assert "unknown scenario" in err
    assert "fig2a-crossing" in err  # lists the known names


def test_scenario_and_all_conflict(tmp_path, capsys):
    rc = cli.main(["fig2a-crossing", "--all", "--in", str(tmp_path),
                   "--out", str(tmp_path)])
    assert rc == 2
    assert "exactly one" in capsys.readouterr().err


def test_schema_error_exit_3(tmp_path, bars_csv, capsys):
    in_dir = tmp_path / "in"
    in_dir.mkdir()
    # wrong schema for this scenario: a bars CSV where a sweep is expected
    shutil.copy(bars_csv, in_dir / "fig2a_crossing.csv")
    rc = cli.main(["fig2a-crossing", "--in", str(in_dir),
                   "--out", str(tmp_path / "out")])
    assert rc == 3
    assert "missing column 'control'" in capsys.readouterr().err


def test_registry_covers_all_primary_files():
    assert set(registry.BUILDERS) == set(registry.PRIMARY_FILES)
    for name in registry.BUILDERS:
        specs = registry.specs_for(name, "in", "out")
        assert specs
        for spec in specs:
            assert spec.scenario == name
            assert spec.output.endswith(".png")

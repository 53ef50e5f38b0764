import numpy as np

from pifweno.cli import main


def test_catalog_command(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    for pid in ("burgers-smooth", "lax-harten", "shock-entropy",
                "euler2d-smooth", "double-mach"):
        assert pid in out


def test_run_command_writes_outputs(tmp_path, capsys):
    code = main(["run", "--problem", "burgers-smooth", "--integrator",
                 "pif-taylor", "--mesh", "20", "--cfl", "0.5",
                 "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "burgers-smooth_pif-taylor_m20.csv").exists()
    assert (tmp_path / "burgers-smooth_pif-taylor_m20.metrics.txt").exists()
    assert "mass_drift_max" in capsys.readouterr().out


def test_run_with_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# desk-scale smoke run\n"
        "problem = burgers-smooth\n"
        "integrator = pif-rk4\n"
        "mesh = 16\n"
        "cfl = 0.4\n"
        f"out = {tmp_path}\n")
    assert main(["run", "--config", str(cfg), "--mesh", "24"]) == 0
    assert (tmp_path / "burgers-smooth_pif-rk4_m24.csv").exists()


def test_converge_command(tmp_path, capsys):
    code = main(["converge", "--problem", "burgers-smooth", "--meshes",
                 "10,20,40", "--cfl", "0.5", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "mesh" in out and "order" in out
    assert (tmp_path / "converge_burgers-smooth_pif-taylor.csv").exists()


def test_stability_command(tmp_path, capsys):
    code = main(["stability", "--out", str(tmp_path), "--theta-samples", "64",
                 "--boundary"])
    assert code == 0
    out = capsys.readouterr().out
    assert "stability boundary" in out
    csv = (tmp_path / "stability_taylor.csv").read_text().splitlines()
    assert csv[0] == "nu,theta,abs_g"

    assert main(["stability", "--which", "rk4", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "stability_rk4.csv").exists()


def test_error_category_lines(tmp_path, capsys):
    code = main(["run", "--problem", "no-such-problem"])
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("ERROR config:")
    assert len(err.strip().splitlines()) == 1

    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mystery = 1\n")
    assert main(["run", "--config", str(cfg), "--problem",
                 "burgers-smooth"]) == 2

    assert main(["run", "--config", str(tmp_path / "missing.cfg"),
                 "--problem", "burgers-smooth"]) == 6


def test_mesh_parsing_2d(tmp_path):
    code = main(["run", "--problem", "double-mach", "--mesh", "30x10",
                 "--t-final", "0.001", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "double-mach_pif-taylor_m30x10.csv").exists()

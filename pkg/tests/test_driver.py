import numpy as np
import pytest

from pifweno.driver import (CONTOUR_LEVELS, RunConfig, converge, emit_outputs,
                            run, stability_sweep_csv)
from pifweno.errors import ConfigurationError
from pifweno.exact import l1_relative_error
from pifweno.problems import catalog, get_problem

EXPECTED_IDS = {"burgers-smooth", "lax-harten", "shock-entropy",
                "euler2d-smooth", "double-mach"}


def test_catalog_contents():
    problems = catalog()
    assert set(problems) == EXPECTED_IDS
    harten = problems["lax-harten"]
    x = np.array([0.25, 0.75])
    q = harten.ic(x)
    assert q[0, 0] == 0.445 and q[0, 1] == 0.3111 and q[0, 2] == 8.928
    assert q[1, 0] == 0.5

    dm = problems["double-mach"]
    xg, yg = np.meshgrid(np.array([0.1, 0.4, 2.5]), np.array([0.05, 0.9]),
                         indexing="ij")
    q = dm.ic(xg, yg)
    post_mask = xg < 1.0 / 6.0 + yg / np.sqrt(3.0)
    assert np.allclose(q[post_mask][:, 0], 8.0)
    assert np.allclose(q[~post_mask][:, 0], 1.4)

    with pytest.raises(ConfigurationError):
        get_problem("nonexistent")


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig("burgers-smooth", "rk9").resolve()
    with pytest.raises(ConfigurationError):
        RunConfig("burgers-smooth", mesh=4).resolve()
    with pytest.raises(ConfigurationError):
        RunConfig("burgers-smooth", cfl=-0.1).resolve()
    with pytest.raises(ConfigurationError):
        RunConfig("burgers-smooth", t_final=0.0).resolve()
    problem, mesh, cfl, t_final, params = RunConfig("burgers-smooth").resolve()
    assert mesh == (80,) and cfl == 0.5


def test_run_smoke_and_mass_metric():
    res = run(RunConfig("burgers-smooth", "pif-taylor", mesh=40))
    assert res.metrics["mass_drift_max"] <= 1e-13
    assert res.metrics["steps"] > 0
    assert res.state.t == pytest.approx(0.5 / np.pi)
    err = l1_relative_error(res.state, res.problem.exact)
    assert err < 5e-4


def test_run_determinism(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    cfg = dict(problem="burgers-smooth", integrator="pif-rk4", mesh=32, cfl=0.4)
    run(RunConfig(outdir=str(out1), **cfg))
    run(RunConfig(outdir=str(out2), **cfg))
    f1 = (out1 / "burgers-smooth_pif-rk4_m32.csv").read_bytes()
    f2 = (out2 / "burgers-smooth_pif-rk4_m32.csv").read_bytes()
    assert f1 == f2


def test_emit_outputs_formats(tmp_path):
    res = run(RunConfig("lax-harten", "pif-taylor", mesh=40, t_final=0.02))
    files = emit_outputs(res, tmp_path)
    profile = [f for f in files if f.name.endswith("m40.csv")][0]
    lines = profile.read_text().splitlines()
    assert lines[0] == "x,rho,u,p"
    assert len(lines) == 41
    metrics = [f for f in files if "metrics" in f.name][0]
    text = metrics.read_text()
    assert "mass_drift_max=" in text
    assert "min_density=" in text

    res = run(RunConfig("burgers-smooth", mesh=16, t_final=0.01))
    files = emit_outputs(res, tmp_path)
    assert files[0].read_text().splitlines()[0] == "x,q"


def test_double_mach_outputs_contours(tmp_path):
    res = run(RunConfig("double-mach", "pif-taylor", mesh=(30, 10),
                        t_final=0.002))
    files = emit_outputs(res, tmp_path)
    twod = [f for f in files if f.name.endswith("m30x10.csv")][0]
    assert twod.read_text().splitlines()[0] == "x,y,rho,u,v,p"
    levels = [f for f in files if "contour" in f.name][0]
    vals = [float(s) for s in levels.read_text().splitlines()[1:]]
    assert len(vals) == 30
    assert vals[0] == pytest.approx(1.728)
    assert vals[-1] == pytest.approx(20.74)
    assert np.all(np.diff(vals) > 0)
    assert len(CONTOUR_LEVELS) == 30


def test_converge_with_exact_oracle(tmp_path):
    table = converge("burgers-smooth", "pif-taylor", [20, 40, 80], cfl=0.5,
                     outdir=tmp_path)
    errs = [row[1] for row in table]
    assert errs[0] > errs[1] > errs[2]
    assert table[1][2] > 2.5 and table[2][2] > 3.5
    csv = (tmp_path / "converge_burgers-smooth_pif-taylor.csv").read_text()
    assert csv.splitlines()[0] == "mesh,error,order"
    assert len(csv.splitlines()) == 4


def test_converge_self_convergence_fallback():
    # strip the oracle to exercise the Richardson fallback path
    import pifweno.driver as driver
    from dataclasses import replace

    problem = replace(get_problem("burgers-smooth"), exact=None,
                      uses_reference=False)
    orig = driver.get_problem
    driver.get_problem = lambda pid: problem
    try:
        table = converge("burgers-smooth", "pif-taylor", [20, 40, 80, 160],
                         cfl=0.5)
    finally:
        driver.get_problem = orig
    assert len(table) == 3  # finest mesh has no row
    errs = [row[1] for row in table]
    assert errs[0] > errs[1] > errs[2]


def test_all_catalog_problems_run_briefly():
    # smallest documented desk meshes, shortened horizons for the heavy ones
    cases = {
        "burgers-smooth": dict(mesh=10, t_final=None),
        "lax-harten": dict(mesh=100, t_final=None),
        "shock-entropy": dict(mesh=200, t_final=0.2),
        "euler2d-smooth": dict(mesh=50, t_final=0.1),
        "double-mach": dict(mesh=(60, 20), t_final=0.01),
    }
    for pid, kw in cases.items():
        res = run(RunConfig(pid, "pif-taylor", mesh=kw["mesh"],
                            t_final=kw["t_final"]))
        assert np.all(np.isfinite(res.state.interior))
        if "min_density" in res.metrics and res.metrics["min_density"] != np.inf:
            assert res.metrics["min_density"] > 0.0
            assert res.metrics["min_pressure"] > 0.0


def test_stability_sweep_csv(tmp_path):
    path = stability_sweep_csv(tmp_path / "stab.csv", [0.5, 1.0],
                               theta_samples=32)
    lines = path.read_text().splitlines()
    assert lines[0] == "nu,theta,abs_g"
    assert len(lines) == 65

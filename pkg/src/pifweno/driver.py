"""Experiment driver: configured runs, convergence studies, output emission."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import BlowupError, ConfigurationError
from .exact import l1_relative_error, reference_run, save_profile_csv
from .grid import State, fill_ghosts
from .problems import ProblemSpec, catalog, get_problem
from .reconstruction import compute_dt
from .runge_kutta import pif_rk4_step, ssp_rk3_step
from .taylor import pif_taylor_step
from .weno import WenoParams

INTEGRATORS = {
    "pif-taylor": pif_taylor_step,
    "pif-rk4": pif_rk4_step,
    "ssp-rk3": ssp_rk3_step,
}

MAX_STEPS = 10_000_000

# double-mach density contours reported with the original benchmark
CONTOUR_LEVELS = np.linspace(1.728, 20.74, 30)


@dataclass(frozen=True)
class RunConfig:
    """One solver run: problem, integrator, mesh, CFL, and output options."""

    problem: str
    integrator: str = "pif-taylor"
    mesh: tuple | int | None = None
    cfl: float | None = None
    t_final: float | None = None
    weno_mode: str = "nonlinear"
    weno_p: float = 2.0
    weno_eps: float = 1.0e-6
    outdir: str | None = None

    def resolve(self) -> tuple[ProblemSpec, tuple, float, float, WenoParams]:
        problem = get_problem(self.problem)
        if self.integrator not in INTEGRATORS:
            raise ConfigurationError(
                f"unknown integrator {self.integrator!r}; "
                f"known: {', '.join(sorted(INTEGRATORS))}")
        mesh = self.mesh if self.mesh is not None else problem.default_mesh
        mesh = tuple(int(m) for m in np.atleast_1d(mesh))
        if problem.is_2d and len(mesh) == 1:
            mesh = (mesh[0], mesh[0])
        if any(m < 10 for m in mesh):
            raise ConfigurationError(f"mesh must be at least 10, got {mesh}")
        cfl = self.cfl if self.cfl is not None else problem.default_cfl
        if not cfl > 0.0:
            raise ConfigurationError(f"CFL number must be positive, got {cfl}")
        t_final = self.t_final if self.t_final is not None else problem.t_final
        if not t_final > 0.0:
            raise ConfigurationError(f"final time must be positive, got {t_final}")
        params = WenoParams(p=self.weno_p, eps=self.weno_eps, mode=self.weno_mode)
        return problem, mesh, cfl, t_final, params


@dataclass
class RunResult:
    config: RunConfig
    problem: ProblemSpec
    state: State
    metrics: dict = field(default_factory=dict)


def run(config: RunConfig) -> RunResult:
    """Time loop: fill ghosts, build the time-averaged flux, reconstruct, update."""
    problem, mesh, cfl, t_final, params = config.resolve()
    step = INTEGRATORS[config.integrator]
    model = problem.model
    state = problem.make_state(mesh if problem.is_2d else mesh[0])

    cell = state.grid.dx * (state.grid.dy if state.is_2d else 1.0)
    mass0 = cell * state.interior.sum(axis=tuple(range(state.interior.ndim - 1)))
    mass_scale = np.maximum(np.abs(mass0), 1.0e-30)
    metrics = {"mass_drift_max": 0.0, "steps": 0,
               "min_density": np.inf, "min_pressure": np.inf}
    track_positivity = hasattr(model, "primitives")

    t0 = time.perf_counter()
    n = 0
    while state.t < t_final - 1.0e-14:
        if n >= MAX_STEPS:
            raise ConfigurationError(f"exceeded {MAX_STEPS} steps")
        fill_ghosts(state, problem.bc)
        dt = compute_dt(model, state, cfl, t_final)
        try:
            state = step(model, state, dt, problem.bc, params)
        except BlowupError as exc:
            raise BlowupError(f"step {n}: {exc}", location=exc.location) from exc
        n += 1
        if not np.all(np.isfinite(state.interior)):
            idx = tuple(int(k) for k in np.argwhere(~np.isfinite(state.interior))[0])
            raise BlowupError(f"step {n}: non-finite interior value at {idx}",
                              location=idx)
        mass = cell * state.interior.sum(axis=tuple(range(state.interior.ndim - 1)))
        drift = float(np.max(np.abs(mass - mass0) / mass_scale))
        metrics["mass_drift_max"] = max(metrics["mass_drift_max"], drift)
        if track_positivity:
            prims = model.primitives(state.interior)
            metrics["min_density"] = min(metrics["min_density"], float(prims[0].min()))
            metrics["min_pressure"] = min(metrics["min_pressure"], float(prims[-1].min()))

    metrics["steps"] = n
    metrics["wall_time_s"] = time.perf_counter() - t0
    metrics["t_final"] = state.t
    result = RunResult(config, problem, state, metrics)
    if config.outdir is not None:
        emit_outputs(result, config.outdir)
    return result


def _mesh_tag(state: State) -> str:
    if state.is_2d:
        return f"{state.grid.mx}x{state.grid.my}"
    return str(state.grid.mx)


def _fmt(v) -> str:
    return f"{v:.17g}"


def emit_outputs(result: RunResult, outdir) -> list[Path]:
    """Write the profile CSV, a metrics file, and contour levels if relevant."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    state, problem = result.state, result.problem
    stem = f"{problem.pid}_{result.config.integrator}_m{_mesh_tag(state)}"
    written = []

    profile = outdir / f"{stem}.csv"
    with open(profile, "w") as fh:
        if state.is_2d:
            fh.write("x,y,rho,u,v,p\n")
            rho, u, v, p = problem.model.primitives(state.interior, check=False)
            xs, ys = state.grid.xcenters(), state.grid.ycenters()
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    fh.write(",".join(_fmt(val) for val in
                                      (x, y, rho[i, j], u[i, j], v[i, j], p[i, j])))
                    fh.write("\n")
        elif state.m == 3:
            fh.write("x,rho,u,p\n")
            rho, u, p = problem.model.primitives(state.interior, check=False)
            for x, r_, u_, p_ in zip(state.grid.centers(), rho, u, p):
                fh.write(f"{_fmt(x)},{_fmt(r_)},{_fmt(u_)},{_fmt(p_)}\n")
        else:
            fh.write("x,q\n")
            for x, q in zip(state.grid.centers(), state.interior[:, 0]):
                fh.write(f"{_fmt(x)},{_fmt(q)}\n")
    written.append(profile)

    metrics = outdir / f"{stem}.metrics.txt"
    with open(metrics, "w") as fh:
        fh.write(f"problem={problem.pid}\n")
        fh.write(f"integrator={result.config.integrator}\n")
        fh.write(f"mesh={_mesh_tag(state)}\n")
        for key in sorted(result.metrics):
            fh.write(f"{key}={result.metrics[key]}\n")
    written.append(metrics)

    if problem.pid == "double-mach":
        levels = outdir / f"{stem}.contour_levels.csv"
        with open(levels, "w") as fh:
            fh.write("level\n")
            for lv in CONTOUR_LEVELS:
                fh.write(f"{_fmt(lv)}\n")
        written.append(levels)
    return written


def _block_average(values: np.ndarray, factor: int, two_d: bool) -> np.ndarray:
    if two_d:
        mx, my, m = values.shape
        return values.reshape(mx // factor, factor, my // factor, factor,
                              m).mean(axis=(1, 3))
    mx, m = values.shape
    return values.reshape(mx // factor, factor, m).mean(axis=1)


def converge(problem_id: str, integrator: str, meshes, cfl: float | None = None,
             t_final: float | None = None, outdir=None,
             reference_mesh: int = 2000, reference_cfl: float = 0.1):
    """Error/order table over a mesh sequence; emits CSV when outdir is given.

    Problems with an exact oracle are scored against it; a reference-bound
    problem is scored against the stored fine run; with no oracle at all a
    self-convergence estimate against the Richardson-sharpened finest grid
    is used (the finest mesh then gets no row).
    """
    problem = get_problem(problem_id)
    meshes = [int(m) for m in meshes]
    results = []
    for m in meshes:
        cfg = RunConfig(problem_id, integrator, mesh=m, cfl=cfl, t_final=t_final)
        results.append(run(cfg))

    rows = []
    if problem.exact is not None:
        for m, res in zip(meshes, results):
            rows.append([m, l1_relative_error(res.state, problem.exact,
                                              problem.error_component)])
    elif problem.uses_reference:
        ref = reference_run(problem, mx=reference_mesh, cfl=reference_cfl)
        ref_x = ref.grid.centers()
        ref_rho = ref.interior[:, problem.error_component]
        for m, res in zip(meshes, results):
            x = res.state.grid.centers()
            exact = np.interp(x, ref_x, ref_rho)
            rows.append([m, l1_relative_error(res.state, exact,
                                              problem.error_component)])
    else:
        if len(results) < 3:
            raise ConfigurationError("self-convergence needs at least 3 meshes")
        fine, second = results[-1], results[-2]
        for m, res in zip(meshes[:-1], results[:-1]):
            rf = _block_average(fine.state.interior, fine.state.grid.mx // m,
                                problem.is_2d)
            rs = _block_average(second.state.interior, second.state.grid.mx // m,
                                problem.is_2d)
            # Richardson sharpening at the shock-dominated first order
            reference = 2.0 * rf - rs
            rows.append([m, l1_relative_error(
                res.state, reference[..., problem.error_component],
                problem.error_component)])

    table = []
    for k, (m, err) in enumerate(rows):
        order = np.nan if k == 0 else float(np.log2(rows[k - 1][1] / err))
        table.append((m, err, order))

    if outdir is not None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"converge_{problem_id}_{integrator}.csv"
        with open(path, "w") as fh:
            fh.write("mesh,error,order\n")
            for m, err, order in table:
                fh.write(f"{m},{_fmt(err)},{'' if np.isnan(order) else _fmt(order)}\n")
    return table


def stability_sweep_csv(path, nus, theta_samples: int = 256, which: str = "taylor"):
    from .stability import amplification_sweep

    rows = amplification_sweep(nus, theta_samples, which)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write("nu,theta,abs_g\n")
        for nu, theta, g in rows:
            fh.write(f"{_fmt(nu)},{_fmt(theta)},{_fmt(g)}\n")
    return path

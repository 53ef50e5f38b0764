"""Exact and reference solutions plus the error norms used by every study."""

from __future__ import annotations

import numpy as np

from .errors import OracleError
from .grid import State, fill_ghosts
from .reconstruction import compute_dt
from .runge_kutta import ssp_rk3_step
from .weno import WenoParams


def burgers_exact(q0, t: float, x, tol: float = 1.0e-15, q0_prime=None,
                  max_iter: int = 100):
    """Pre-shock Burgers solution by the method of characteristics.

    Solves xi = x - t*q0(xi) with Newton iteration to |residual| <= tol and
    returns q0(xi).  q0_prime is the derivative of the initial profile; a
    central difference is used when it is not supplied.  The caller is
    responsible for querying only before shock formation.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xi = np.atleast_1d(x).astype(float).copy()

    if q0_prime is None:
        def q0_prime(s, _h=1.0e-7):
            return (q0(s + _h) - q0(s - _h)) / (2.0 * _h)

    residual = xi + t * np.asarray(q0(xi)) - np.atleast_1d(x)
    for _ in range(max_iter):
        todo = np.abs(residual) > tol
        if not np.any(todo):
            break
        slope = 1.0 + t * np.asarray(q0_prime(xi[todo]))
        xi[todo] -= residual[todo] / slope
        residual[todo] = xi[todo] + t * np.asarray(q0(xi[todo])) - np.atleast_1d(x)[todo]
    if np.any(np.abs(residual) > tol):
        raise OracleError(
            "characteristic iteration did not converge (post-shock query?)")
    out = np.asarray(q0(xi))
    return float(out[0]) if scalar else out


def euler2d_smooth_exact(t: float, x, y, gamma: float = 1.4, u: float = 0.7,
                         v: float = 0.3, p: float = 1.0, amplitude: float = 0.2):
    """Conserved 4-vector of the advected density-wave solution."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = 1.0 + amplitude * np.sin(np.pi * (x + y - (u + v) * t))
    energy = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack(np.broadcast_arrays(rho, rho * u, rho * v, energy), axis=-1)


def l1_relative_error(state: State, exact, component: int = 0) -> float:
    """Relative L1 error of one component over the interior points.

    exact is either an array shaped like the interior component or a
    callable evaluated on the interior centers: fn(t, x) in 1D,
    fn(t, x, y) in 2D, returning either the component directly or a full
    conserved vector.
    """
    numeric = state.interior[..., component]
    if callable(exact):
        if state.is_2d:
            xx, yy = np.meshgrid(state.grid.xcenters(), state.grid.ycenters(),
                                 indexing="ij")
            exact = np.asarray(exact(state.t, xx, yy))
        else:
            exact = np.asarray(exact(state.t, state.grid.centers()))
        if exact.ndim == numeric.ndim + 1:
            exact = exact[..., component]
    else:
        exact = np.asarray(exact)
    if exact.shape != numeric.shape:
        raise OracleError(f"exact data shape {exact.shape} does not match "
                          f"interior {numeric.shape}")
    cell = state.grid.dx * (state.grid.dy if state.is_2d else 1.0)
    denom = cell * np.sum(np.abs(exact))
    if denom == 0.0:
        raise OracleError("exact solution has zero L1 norm")
    return float(cell * np.sum(np.abs(numeric - exact)) / denom)


def reference_run(problem, mx: int = 2000, cfl: float = 0.1, ghost: int = 6,
                  out=None) -> State:
    """Fine-mesh, small-CFL SSP-RK3 run used as the reference profile."""
    state = problem.make_state(mx, ghost=ghost)
    params = WenoParams()
    while state.t < problem.t_final - 1.0e-14:
        fill_ghosts(state, problem.bc)
        dt = compute_dt(problem.model, state, cfl, problem.t_final)
        state = ssp_rk3_step(problem.model, state, dt, problem.bc, params)
    if out is not None:
        save_profile_csv(out, problem, state, mx, cfl)
    return state


def save_profile_csv(path, problem, state: State, mesh, cfl: float):
    """Persist a 1D conserved-variable profile with an identifying header."""
    x = state.grid.centers()
    cols = [x] + [state.interior[:, k] for k in range(state.m)]
    header = (f"# problem={problem.pid} mesh={mesh} cfl={cfl}\n"
              + ",".join(["x"] + [f"q{k}" for k in range(state.m)]))
    np.savetxt(path, np.column_stack(cols), delimiter=",", header=header,
               comments="")


def load_profile_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=2)
    return data[:, 0], data[:, 1:]

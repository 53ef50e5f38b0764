"""Third-order Taylor (Lax-Wendroff) time-averaged fluxes.

Temporal flux derivatives are exchanged for spatial ones through the PDE,
using Jacobian and Hessian products of the model together with compact
fourth-order central stencils; cross derivatives in 2D use a second-order
corner stencil because they carry a dt^3 weight.  The builders work on
point values only: no reconstruction and no characteristic information is
used here.
"""

from __future__ import annotations

import numpy as np

from .grid import State, fill_ghosts
from .weno import WenoParams
from .reconstruction import (ALPHA_INFLATION, conservative_update,
                             reconstruct_interface_fluxes)


def central_dx(u, dx: float):
    """Fourth-order first derivative from 5 consecutive values (last axis)."""
    u = np.asarray(u)
    return (u[..., 0] - 8.0 * u[..., 1] + 8.0 * u[..., 3] - u[..., 4]) / (12.0 * dx)


def central_dxx(u, dx: float):
    """Fourth-order second derivative from 5 consecutive values (last axis)."""
    u = np.asarray(u)
    return (-u[..., 0] + 16.0 * u[..., 1] - 30.0 * u[..., 2]
            + 16.0 * u[..., 3] - u[..., 4]) / (12.0 * dx * dx)


def central_dxy(u, dx: float, dy: float):
    """Second-order cross derivative from a 3x3 neighborhood (last two axes)."""
    u = np.asarray(u)
    return (u[..., 2, 2] - u[..., 0, 2] - u[..., 2, 0] + u[..., 0, 0]) / (4.0 * dx * dy)


def _matvec(mat, vec):
    return (mat @ vec[..., None])[..., 0]


def _dx_band(arr, dx, axis):
    sl = [slice(None)] * arr.ndim

    def shifted(lo, hi):
        sl[axis] = slice(lo, arr.shape[axis] + hi)
        return arr[tuple(sl)]

    return (shifted(0, -4) - 8.0 * shifted(1, -3)
            + 8.0 * shifted(3, -1) - shifted(4, 0)) / (12.0 * dx)


def _dxx_band(arr, dx, axis):
    sl = [slice(None)] * arr.ndim

    def shifted(lo, hi):
        sl[axis] = slice(lo, arr.shape[axis] + hi)
        return arr[tuple(sl)]

    return (-shifted(0, -4) + 16.0 * shifted(1, -3) - 30.0 * shifted(2, -2)
            + 16.0 * shifted(3, -1) - shifted(4, 0)) / (12.0 * dx * dx)


def taylor_flux_1d(model, state: State, dt: float) -> np.ndarray:
    """Per-point Taylor flux f + dt/2 df/dt + dt^2/6 d2f/dt2.

    Values are produced on every point whose 5-point stencil fits in the
    array (the interior plus an inner ghost band); the outermost two cells
    per side are poisoned with NaN so an accidental read fails loudly.
    """
    q = state.values
    dx = state.grid.dx
    f = model.flux(q)

    fx = _dx_band(f, dx, 0)
    fxx = _dxx_band(f, dx, 0)
    qx = _dx_band(q, dx, 0)
    qc = q[2:-2]

    jac = model.jacobian(qc)
    dfdt = -_matvec(jac, fx)
    inner = model.hessian_apply(qc, qx, fx) + _matvec(jac, fxx)
    d2fdt2 = model.hessian_apply(qc, fx, fx) + _matvec(jac, inner)

    out = np.full_like(q, np.nan)
    out[2:-2] = f[2:-2] + 0.5 * dt * dfdt + (dt * dt / 6.0) * d2fdt2
    return out


def taylor_flux_2d(model, state: State, dt: float):
    """2D Taylor fluxes (F, G) built from the flux divergence s = f_x + g_y.

    df/dt = -f'(q) s and d2f/dt2 = f''(q)(s, s) + f'(q) [(f'(q) s)_x + (g'(q) s)_y],
    with the bracket expanded so every derivative lives on the same compact
    stencil; the analogous expressions hold for g.
    """
    q = state.values
    dx, dy = state.grid.dx, state.grid.dy
    f = model.flux(q, 0)
    g = model.flux(q, 1)
    core = (slice(2, -2), slice(2, -2))

    fx = _dx_band(f, dx, 0)[:, 2:-2]
    gy = _dx_band(g, dy, 1)[2:-2]
    fxx = _dxx_band(f, dx, 0)[:, 2:-2]
    gyy = _dxx_band(g, dy, 1)[2:-2]
    qx = _dx_band(q, dx, 0)[:, 2:-2]
    qy = _dx_band(q, dy, 1)[2:-2]
    fxy = (f[3:-1, 3:-1] - f[1:-3, 3:-1] - f[3:-1, 1:-3]
           + f[1:-3, 1:-3]) / (4.0 * dx * dy)
    gxy = (g[3:-1, 3:-1] - g[1:-3, 3:-1] - g[3:-1, 1:-3]
           + g[1:-3, 1:-3]) / (4.0 * dx * dy)

    qc = q[core]
    jf = model.jacobian(qc, 0)
    jg = model.jacobian(qc, 1)
    s = fx + gy
    inner = (model.hessian_apply(qc, qx, s, 0) + _matvec(jf, fxx + gxy)
             + model.hessian_apply(qc, qy, s, 1) + _matvec(jg, fxy + gyy))

    dfdt = -_matvec(jf, s)
    d2fdt2 = model.hessian_apply(qc, s, s, 0) + _matvec(jf, inner)
    dgdt = -_matvec(jg, s)
    d2gdt2 = model.hessian_apply(qc, s, s, 1) + _matvec(jg, inner)

    w1, w2 = 0.5 * dt, dt * dt / 6.0
    F = np.full_like(q, np.nan)
    G = np.full_like(q, np.nan)
    F[core] = f[core] + w1 * dfdt + w2 * d2fdt2
    G[core] = g[core] + w1 * dgdt + w2 * d2gdt2
    return F, G


def taylor_flux(model, state: State, dt: float):
    if state.is_2d:
        return taylor_flux_2d(model, state, dt)
    return taylor_flux_1d(model, state, dt)


def pif_taylor_step(model, state: State, dt: float, bc, params: WenoParams,
                    inflation: float = ALPHA_INFLATION) -> State:
    """One single-stage step: Taylor flux build, one reconstruction, update."""
    fill_ghosts(state, bc)
    flux = taylor_flux(model, state, dt)
    fhat = reconstruct_interface_fluxes(model, state, flux, params, True, inflation)
    return conservative_update(state, fhat, dt)

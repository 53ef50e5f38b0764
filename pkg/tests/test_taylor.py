import numpy as np
import pytest

from pifweno.exact import burgers_exact, l1_relative_error
from pifweno.grid import (Grid1D, Grid2D, State, fill_ghosts, periodic_1d,
                          periodic_2d)
from pifweno.reconstruction import compute_dt
from pifweno.systems import advection_model, burgers_model, euler1d_model, euler2d_model
from pifweno.taylor import (central_dx, central_dxx, central_dxy,
                            pif_taylor_step, taylor_flux_1d, taylor_flux_2d)
from pifweno.weno import WenoParams


def test_central_stencils_exact_on_quartics():
    dx = 0.17
    xc = 0.73
    offsets = (np.arange(5) - 2) * dx
    for poly, dpoly, d2poly in (
            (lambda s: s ** 2, lambda s: 2 * s, lambda s: 2.0 + 0 * s),
            (lambda s: s ** 4, lambda s: 4 * s ** 3, lambda s: 12 * s ** 2)):
        u = poly(xc + offsets)
        assert central_dx(u, dx) == pytest.approx(dpoly(xc), rel=1e-12)
        assert central_dxx(u, dx) == pytest.approx(d2poly(xc), rel=1e-12)


def test_central_stencils_fourth_order_on_sine():
    xc = 0.4
    errs_dx, errs_dxx = [], []
    for dx in (0.1, 0.05, 0.025):
        u = np.sin(xc + (np.arange(5) - 2) * dx)
        errs_dx.append(abs(central_dx(u, dx) - np.cos(xc)))
        errs_dxx.append(abs(central_dxx(u, dx) + np.sin(xc)))
    for errs in (errs_dx, errs_dxx):
        ratios = [errs[i] / errs[i + 1] for i in range(2)]
        assert all(13.0 < r < 19.0 for r in ratios)


def test_cross_derivative_stencil():
    dx, dy = 0.2, 0.3
    xs = (np.arange(3) - 1) * dx + 0.5
    ys = (np.arange(3) - 1) * dy - 0.2
    xy = np.outer(xs, ys)
    assert central_dxy(xy, dx, dy) == pytest.approx(1.0, abs=1e-13)
    x_only = np.outer(xs ** 2, np.ones(3))
    assert central_dxy(x_only, dx, dy) == pytest.approx(0.0, abs=1e-13)

    errs = []
    for h in (0.1, 0.05, 0.025):
        grid = np.sin(0.7 + (np.arange(3) - 1) * h)[:, None] * np.sin(
            -0.3 + (np.arange(3) - 1) * h)[None, :]
        exact = np.cos(0.7) * np.cos(-0.3)
        errs.append(abs(central_dxy(grid, h, h) - exact))
    assert all(3.0 < errs[i] / errs[i + 1] < 5.0 for i in range(2))


def test_constant_state_flux_is_plain_flux():
    model = euler1d_model()
    grid = Grid1D(0.0, 1.0, 12)
    state = State.zeros(grid, 3, ghost=6)
    q0 = np.array([1.1, 0.3, 2.2])
    state.values[...] = q0
    F = taylor_flux_1d(model, state, dt=0.05)
    band = F[2:-2]
    assert np.allclose(band, model.flux(q0), atol=1e-15)
    assert np.all(np.isnan(F[:2])) and np.all(np.isnan(F[-2:]))

    model2 = euler2d_model()
    grid2 = Grid2D(0.0, 1.0, 0.0, 1.0, 10, 11)
    state2 = State.zeros(grid2, 4, ghost=6)
    q0 = model2.primitive_to_conserved(1.0, 0.7, 0.3, 1.0)
    state2.values[...] = q0
    F, G = taylor_flux_2d(model2, state2, dt=0.05)
    assert np.allclose(F[2:-2, 2:-2], model2.flux(q0, 0), atol=1e-14)
    assert np.allclose(G[2:-2, 2:-2], model2.flux(q0, 1), atol=1e-14)


def test_advection_flux_matches_independent_stencil_expression():
    # for a linear flux the builder reduces to
    # u*(q - (dt*u/2) q_x + (dt*u)^2/6 q_xx) with the same stencils
    u0 = 1.3
    model = advection_model(u0)
    grid = Grid1D(0.0, 2.0, 40)
    state = State.zeros(grid, 1, ghost=6)
    state.interior[:, 0] = np.sin(np.pi * grid.centers())
    fill_ghosts(state, periodic_1d())
    dt = 0.02
    F = taylor_flux_1d(model, state, dt)

    q = state.values[:, 0]
    dx = grid.dx
    qx = (q[:-4] - 8 * q[1:-3] + 8 * q[3:-1] - q[4:]) / (12 * dx)
    qxx = (-q[:-4] + 16 * q[1:-3] - 30 * q[2:-2] + 16 * q[3:-1] - q[4:]) / (12 * dx * dx)
    expect = u0 * (q[2:-2] - 0.5 * dt * u0 * qx + dt * dt / 6.0 * u0 * u0 * qxx)
    assert np.allclose(F[2:-2, 0], expect, atol=1e-15)


def test_flux_correction_first_order_in_dt():
    model = burgers_model()
    grid = Grid1D(0.0, 2.0, 64)
    state = State.zeros(grid, 1, ghost=6)
    state.interior[:, 0] = 0.5 + np.sin(np.pi * grid.centers())
    fill_ghosts(state, periodic_1d())
    f0 = model.flux(state.values)[2:-2]
    norms = []
    for dt in (0.02, 0.01, 0.005):
        F = taylor_flux_1d(model, state, dt)
        norms.append(np.max(np.abs(F[2:-2] - f0)))
    assert norms[0] / norms[1] == pytest.approx(2.0, rel=0.05)
    assert norms[1] / norms[2] == pytest.approx(2.0, rel=0.05)


def test_2d_reduces_to_1d_on_y_constant_data():
    model2, model1 = euler2d_model(), euler1d_model()
    mx = 20
    grid1 = Grid1D(0.0, 1.0, mx)
    x = grid1.centers()
    rho = 1.0 + 0.2 * np.sin(2 * np.pi * x)
    u = 0.3 * np.cos(2 * np.pi * x)
    p = 1.0 + 0.1 * np.sin(4 * np.pi * x)

    st1 = State.zeros(grid1, 3, ghost=6)
    st1.interior[...] = np.stack([rho, rho * u, p / 0.4 + 0.5 * rho * u * u], axis=-1)
    fill_ghosts(st1, periodic_1d())

    grid2 = Grid2D(0.0, 1.0, 0.0, 1.0, mx, 10)
    st2 = State.zeros(grid2, 4, ghost=6)
    q2 = np.stack([rho, rho * u, np.zeros(mx), p / 0.4 + 0.5 * rho * u * u], axis=-1)
    st2.interior[...] = q2[:, None, :]
    fill_ghosts(st2, periodic_2d())

    dt = 0.004
    F1 = taylor_flux_1d(model1, st1, dt)
    F2, G2 = taylor_flux_2d(model2, st2, dt)
    g = 6
    for j in range(g, g + 10):
        assert np.allclose(F2[2:-2, j][:, [0, 1, 3]], F1[2:-2], atol=1e-14)
        assert np.allclose(F2[2:-2, j][:, 2], 0.0, atol=1e-14)
    # G varies only through x, so its y-differences vanish
    dG = G2[2:-2, g:g + 9] - G2[2:-2, g + 1:g + 10]
    assert np.allclose(dG, 0.0, atol=1e-13)


def test_third_order_in_time_on_burgers():
    # fixed fine mesh, dt halving, self-convergence in time
    model = burgers_model()
    params = WenoParams()
    bc = periodic_1d()
    grid = Grid1D(0.0, 2.0, 200)
    t_final = 0.5 / np.pi

    def run_fixed_dt(dt0):
        state = State.zeros(grid, 1, ghost=6)
        state.interior[:, 0] = 0.5 + np.sin(np.pi * grid.centers())
        while state.t < t_final - 1e-14:
            dt = min(dt0, t_final - state.t)
            state = pif_taylor_step(model, state, dt, bc, params)
        return state.interior[:, 0]

    dt0 = 0.9 * grid.dx / 1.5
    sols = [run_fixed_dt(dt0 / 2 ** k) for k in range(4)]
    diffs = [np.max(np.abs(sols[k] - sols[k + 1])) for k in range(3)]
    orders = [np.log2(diffs[k] / diffs[k + 1]) for k in range(2)]
    assert all(2.6 < o < 3.4 for o in orders)

"""Runge-Kutta time discretizations.

pif_rk4_step builds four stage states with projection-free reconstructions
of the instantaneous fluxes, combines them with Simpson weights into a
time-averaged flux, and applies the full characteristic reconstruction once
per step.  ssp_rk3_step is the classical method-of-lines baseline that runs
the full characteristic procedure in every substep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError
from .grid import State, fill_ghosts
from .weno import WenoParams
from .reconstruction import (ALPHA_INFLATION, conservative_update, flux_divergence,
                             reconstruct_interface_fluxes)


@dataclass(frozen=True)
class StageSet:
    """Four stage snapshots at times t, t+dt/2, t+dt/2, t+dt."""

    q1: State
    q2: State
    q3: State
    q4: State

    def __iter__(self):
        return iter((self.q1, self.q2, self.q3, self.q4))


def _instantaneous_flux(model, state: State):
    if state.is_2d:
        return model.flux(state.values, 0), model.flux(state.values, 1)
    return model.flux(state.values)


def _stage_divergence(model, state: State, params: WenoParams, inflation: float):
    flux = _instantaneous_flux(model, state)
    fhat = reconstruct_interface_fluxes(model, state, flux, params,
                                        projection=False, inflation=inflation)
    return flux_divergence(state, fhat)


def rk4_stages(model, state: State, dt: float, bc, params: WenoParams,
               inflation: float = ALPHA_INFLATION) -> StageSet:
    """Classical RK4 stage states; ghosts are refilled at each stage time."""
    q1 = fill_ghosts(state, bc)
    stages = [q1]
    for k, (weight, offset) in enumerate(((0.5, 0.5), (0.5, 0.5), (1.0, 1.0)),
                                         start=2):
        try:
            div = _stage_divergence(model, stages[-1], params, inflation)
        except SolverError as exc:
            raise type(exc)(f"stage {k}: {exc}") from exc
        qk = q1.copy()
        qk.interior[...] = q1.interior - weight * dt * div
        qk.t = q1.t + offset * dt
        stages.append(fill_ghosts(qk, bc))
    return StageSet(*stages)


def rk_time_avg_flux(model, stages: StageSet):
    """Simpson-weighted per-point flux combination over the four stages."""
    if stages.q1.is_2d:
        fs = [_instantaneous_flux(model, q) for q in stages]
        F = (fs[0][0] + 2.0 * (fs[1][0] + fs[2][0]) + fs[3][0]) / 6.0
        G = (fs[0][1] + 2.0 * (fs[1][1] + fs[2][1]) + fs[3][1]) / 6.0
        return F, G
    fs = [model.flux(q.values) for q in stages]
    return (fs[0] + 2.0 * (fs[1] + fs[2]) + fs[3]) / 6.0


def pif_rk4_step(model, state: State, dt: float, bc, params: WenoParams,
                 inflation: float = ALPHA_INFLATION) -> State:
    """One RK4 step of the time-averaged flux formulation."""
    stages = rk4_stages(model, state, dt, bc, params, inflation)
    flux = rk_time_avg_flux(model, stages)
    fhat = reconstruct_interface_fluxes(model, stages.q1, flux, params,
                                        projection=True, inflation=inflation)
    return conservative_update(stages.q1, fhat, dt)


def _mol_divergence(model, state: State, params: WenoParams, inflation: float):
    flux = _instantaneous_flux(model, state)
    fhat = reconstruct_interface_fluxes(model, state, flux, params,
                                        projection=True, inflation=inflation)
    return flux_divergence(state, fhat)


def ssp_rk3_step(model, state: State, dt: float, bc, params: WenoParams,
                 inflation: float = ALPHA_INFLATION) -> State:
    """Classical three-stage SSP-RK3 step with full characteristic WENO."""
    q0 = fill_ghosts(state, bc)
    u1 = q0.copy()
    u1.interior[...] = q0.interior - dt * _mol_divergence(model, q0, params, inflation)
    u1.t = q0.t + dt
    fill_ghosts(u1, bc)

    u2 = q0.copy()
    u2.interior[...] = (0.75 * q0.interior
                        + 0.25 * (u1.interior
                                  - dt * _mol_divergence(model, u1, params, inflation)))
    u2.t = q0.t + 0.5 * dt
    fill_ghosts(u2, bc)

    out = q0.copy()
    out.interior[...] = (q0.interior / 3.0
                         + 2.0 / 3.0 * (u2.interior
                                        - dt * _mol_divergence(model, u2, params,
                                                               inflation)))
    out.t = q0.t + dt
    return out

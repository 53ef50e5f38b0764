"""Benchmark problem catalog: models, domains, initial data, oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import exact as exact_mod
from .errors import ConfigurationError
from .grid import (DEFAULT_GHOST, BoundarySpec, Grid1D, Grid2D, State,
                   double_mach_bc, double_mach_states, outflow_1d, periodic_1d,
                   periodic_2d)
from .riemann import RiemannState, solve_riemann
from .systems import burgers_model, euler1d_model, euler2d_model

GAMMA = 1.4


@dataclass(frozen=True)
class ProblemSpec:
    """One catalog entry binding model, domain, data, and oracle."""

    pid: str
    model: object
    domain: tuple
    ic: Callable
    bc: BoundarySpec
    t_final: float
    default_mesh: tuple
    default_cfl: float
    # exact(t, x[, y]) for the error component, or None
    exact: Callable | None = None
    uses_reference: bool = False
    error_component: int = 0

    @property
    def is_2d(self) -> bool:
        return len(self.domain) == 4

    def make_grid(self, mesh):
        if self.is_2d:
            mx, my = (mesh, mesh) if np.isscalar(mesh) else mesh
            return Grid2D(*self.domain, mx, my)
        mx = mesh if np.isscalar(mesh) else mesh[0]
        return Grid1D(*self.domain, mx)

    def make_state(self, mesh, ghost: int = DEFAULT_GHOST) -> State:
        return State.from_function(self.make_grid(mesh), self.model.m, self.ic,
                                   ghost=ghost)


def _burgers_ic(x):
    return (0.5 + np.sin(np.pi * x))[:, None]


def _burgers_exact(t, x):
    return exact_mod.burgers_exact(lambda s: 0.5 + np.sin(np.pi * s), t, x,
                                   q0_prime=lambda s: np.pi * np.cos(np.pi * s))


_HARTEN_LEFT = np.array([0.445, 0.3111, 8.928])
_HARTEN_RIGHT = np.array([0.5, 0.0, 1.4275])
_HARTEN_X0 = 0.5


def _harten_ic(x):
    return np.where((x <= _HARTEN_X0)[:, None], _HARTEN_LEFT, _HARTEN_RIGHT)


_harten_solution_cache = []


def harten_riemann_solution():
    if not _harten_solution_cache:
        rs = RiemannState.from_conserved(_HARTEN_LEFT, _HARTEN_RIGHT, GAMMA)
        _harten_solution_cache.append(solve_riemann(rs))
    return _harten_solution_cache[0]


def _harten_exact_density(t, x):
    rho, _, _ = harten_riemann_solution().sample((np.asarray(x) - _HARTEN_X0) / t)
    return rho


_SHOCK_ENTROPY_LEFT = (3.857143, 2.629369, 10.3333)
_SHOCK_ENTROPY_EPS = 0.2


def _shock_entropy_ic(x):
    rho_l, u_l, p_l = _SHOCK_ENTROPY_LEFT
    left = x < -4.0
    rho = np.where(left, rho_l, 1.0 + _SHOCK_ENTROPY_EPS * np.sin(5.0 * x))
    u = np.where(left, u_l, 0.0)
    p = np.where(left, p_l, 1.0)
    energy = p / (GAMMA - 1.0) + 0.5 * rho * u * u
    return np.stack([rho, rho * u, energy], axis=-1)


def _euler2d_smooth_ic(x, y):
    return exact_mod.euler2d_smooth_exact(0.0, x, y, gamma=GAMMA)


def _euler2d_smooth_exact_density(t, x, y):
    return exact_mod.euler2d_smooth_exact(t, x, y, gamma=GAMMA)[..., 0]


def _double_mach_ic(x, y):
    post, pre = double_mach_states(GAMMA)
    is_post = (x < 1.0 / 6.0 + y / np.sqrt(3.0))[..., None]
    return np.where(is_post, post, pre)


def catalog() -> dict[str, ProblemSpec]:
    """All benchmark problems keyed by id."""
    return {
        "burgers-smooth": ProblemSpec(
            pid="burgers-smooth",
            model=burgers_model(),
            domain=(0.0, 2.0),
            ic=_burgers_ic,
            bc=periodic_1d(),
            t_final=0.5 / np.pi,
            default_mesh=(80,),
            default_cfl=0.5,
            exact=_burgers_exact,
        ),
        "lax-harten": ProblemSpec(
            pid="lax-harten",
            model=euler1d_model(GAMMA),
            domain=(0.0, 1.0),
            ic=_harten_ic,
            bc=outflow_1d(),
            t_final=0.16,
            default_mesh=(100,),
            default_cfl=0.4,
            exact=_harten_exact_density,
        ),
        "shock-entropy": ProblemSpec(
            pid="shock-entropy",
            model=euler1d_model(GAMMA),
            domain=(-5.0, 5.0),
            ic=_shock_entropy_ic,
            bc=outflow_1d(),
            t_final=1.8,
            default_mesh=(400,),
            default_cfl=0.4,
            uses_reference=True,
        ),
        "euler2d-smooth": ProblemSpec(
            pid="euler2d-smooth",
            model=euler2d_model(GAMMA),
            domain=(0.0, 2.0, 0.0, 2.0),
            ic=_euler2d_smooth_ic,
            bc=periodic_2d(),
            t_final=1.0,
            default_mesh=(50, 50),
            default_cfl=0.4,
            exact=_euler2d_smooth_exact_density,
        ),
        "double-mach": ProblemSpec(
            pid="double-mach",
            model=euler2d_model(GAMMA),
            domain=(0.0, 3.0, 0.0, 1.0),
            ic=_double_mach_ic,
            bc=double_mach_bc(),
            t_final=0.2,
            default_mesh=(240, 80),
            default_cfl=0.4,
        ),
    }


def get_problem(pid: str) -> ProblemSpec:
    problems = catalog()
    if pid not in problems:
        raise ConfigurationError(
            f"unknown problem {pid!r}; known: {', '.join(sorted(problems))}")
    return problems[pid]

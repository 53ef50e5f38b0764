import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def smooth_euler1d_state(mx=64, seed=1234, ghost=6):
    """Random smooth admissible 1D Euler field on a periodic grid."""
    from pifweno.grid import Grid1D, State

    rng = np.random.default_rng(seed)
    grid = Grid1D(0.0, 2.0, mx)
    x = grid.centers()

    def wave(amp):
        coeffs = rng.normal(scale=amp, size=3)
        return sum(c * np.sin((k + 1) * np.pi * x + rng.uniform(0, 2 * np.pi))
                   for k, c in enumerate(coeffs))

    rho = 1.0 + 0.25 * np.tanh(wave(0.5))
    u = 0.3 * wave(0.5)
    p = 1.0 + 0.25 * np.tanh(wave(0.5))
    energy = p / 0.4 + 0.5 * rho * u * u
    state = State.zeros(grid, 3, ghost=ghost)
    state.interior[...] = np.stack([rho, rho * u, energy], axis=-1)
    return state


@pytest.fixture(scope="session")
def shock_entropy_reference():
    """Shared fine-mesh SSP-RK3 reference profile for the shock-entropy runs."""
    from pifweno.exact import reference_run
    from pifweno.problems import get_problem

    return reference_run(get_problem("shock-entropy"), mx=2000, cfl=0.1)

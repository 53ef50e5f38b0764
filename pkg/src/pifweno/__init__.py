"""Conservative finite-difference WENO solvers on time-averaged fluxes.

Two single-projection time discretizations are provided: a third-order
flux Taylor expansion (Lax-Wendroff style) and a Simpson-weighted RK4
collocation, plus the classical SSP-RK3 method-of-lines baseline, for
1D/2D hyperbolic conservation laws.
"""

from .errors import (BlowupError, ConfigurationError, OracleError,
                     PositivityError, SolverError)
from .grid import (DEFAULT_GHOST, BoundarySpec, Grid1D, Grid2D, State,
                   double_mach_bc, fill_ghosts, outflow_1d, periodic_1d,
                   periodic_2d)
from .systems import (advection_model, burgers_model, euler1d_model,
                      euler2d_model)
from .weno import (LINEAR, NONLINEAR, WenoParams, smoothness_indicators,
                   weno5_minus, weno5_plus)
from .reconstruction import (compute_dt, conservative_update, interface_state,
                             local_wave_speed, reconstruct_interface_fluxes)
from .taylor import (central_dx, central_dxx, central_dxy, pif_taylor_step,
                     taylor_flux, taylor_flux_1d, taylor_flux_2d)
from .runge_kutta import (StageSet, pif_rk4_step, rk4_stages, rk_time_avg_flux,
                          ssp_rk3_step)
from .stability import (g_taylor, max_stable_cfl, rk_linear_amplification,
                        upwind_weno_symbol)
from .riemann import RiemannState, euler_exact_riemann, solve_riemann
from .exact import (burgers_exact, euler2d_smooth_exact, l1_relative_error,
                    reference_run)
from .problems import ProblemSpec, catalog, get_problem
from .driver import RunConfig, RunResult, converge, emit_outputs, run

__version__ = "0.1.0"

"""Von Neumann analysis tools for the linear-weights schemes.

The Taylor amplification factor is a trigonometric polynomial in the CFL
number nu and the phase theta = k*dx.  Its thirty-odd coefficients are the
dominant transcription risk, so they are entered twice by independent
routes: once as a literal rational table, and once derived by convolving
the upwind linear-weights WENO derivative symbol with the central stencil
symbols.  The two tables are compared exactly at import time.

Throughout, the ideal wave speed is assumed (no 10% inflation of the local
speed bound); solver-side comparisons must be run the same way.
"""

from __future__ import annotations

from fractions import Fraction as Fr

import numpy as np

from .errors import ConfigurationError

# --- literal coefficient tables: {phase multiple: coefficient} per power of nu

_NU1_TABLE = {
    2: Fr(1, 20), 1: Fr(-1, 2), 0: Fr(-1, 3), -1: Fr(1), -2: Fr(-1, 4),
    -3: Fr(1, 30),
}
_NU2_TABLE = {
    4: Fr(1, 480), 3: Fr(-3, 80), 2: Fr(11, 72), 1: Fr(61, 360), 0: Fr(-41, 80),
    -1: Fr(-1, 180), -2: Fr(121, 360), -3: Fr(-1, 8), -4: Fr(31, 1440),
    -5: Fr(-1, 720),
}
_NU3_TABLE = {
    4: Fr(-1, 1440), 3: Fr(13, 720), 2: Fr(-55, 432), 1: Fr(71, 540),
    0: Fr(91, 360), -1: Fr(-583, 1080), -2: Fr(731, 2160), -3: Fr(-1, 12),
    -4: Fr(47, 4320), -5: Fr(-1, 2160),
}

# --- derived route: operator symbols as rational coefficient dicts

# gamma-weighted substencil coefficients of the upwind (plus) interface value
_UPWIND5 = {}
for _gamma, _sub in (
        (Fr(1, 10), {-2: Fr(1, 3), -1: Fr(-7, 6), 0: Fr(11, 6)}),
        (Fr(3, 5), {-1: Fr(-1, 6), 0: Fr(5, 6), 1: Fr(1, 3)}),
        (Fr(3, 10), {0: Fr(1, 3), 1: Fr(5, 6), 2: Fr(-1, 6)})):
    for _k, _c in _sub.items():
        _UPWIND5[_k] = _UPWIND5.get(_k, Fr(0)) + _gamma * _c


def _convolve(a: dict, b: dict) -> dict:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[ka + kb] = out.get(ka + kb, Fr(0)) + ca * cb
    return {k: c for k, c in out.items() if c != 0}


def _scale(a: dict, s: Fr) -> dict:
    return {k: c * s for k, c in a.items()}


# derivative of the upwind interface values: (1 - shift^-1) applied after
# the interface interpolation
_SIGMA = _convolve(_UPWIND5, {0: Fr(1), -1: Fr(-1)})
_D1 = {-2: Fr(1, 12), -1: Fr(-8, 12), 1: Fr(8, 12), 2: Fr(-1, 12)}
_D2 = {-2: Fr(-1, 12), -1: Fr(16, 12), 0: Fr(-30, 12), 1: Fr(16, 12), 2: Fr(-1, 12)}

_NU1_DERIVED = _scale(_SIGMA, Fr(-1))
_NU2_DERIVED = _scale(_convolve(_SIGMA, _D1), Fr(1, 2))
_NU3_DERIVED = _scale(_convolve(_SIGMA, _D2), Fr(-1, 6))


def _validate_tables():
    for name, literal, derived in (("nu", _NU1_TABLE, _NU1_DERIVED),
                                   ("nu^2", _NU2_TABLE, _NU2_DERIVED),
                                   ("nu^3", _NU3_TABLE, _NU3_DERIVED)):
        if literal != derived:
            raise AssertionError(
                f"amplification coefficient mismatch in the {name} group: "
                f"literal {literal} vs derived {derived}")
        if sum(literal.values()) != 0:
            raise AssertionError(f"{name} group does not preserve constants")


_validate_tables()


def _as_arrays(table: dict):
    ks = np.array(sorted(table), dtype=float)
    cs = np.array([float(table[int(k)]) for k in ks])
    return ks, cs


_GROUPS = [_as_arrays(t) for t in (_NU1_TABLE, _NU2_TABLE, _NU3_TABLE)]
_SIGMA_KS, _SIGMA_CS = _as_arrays(_SIGMA)


def _trig_poly(ks, cs, theta):
    theta = np.asarray(theta, dtype=float)
    return np.exp(1j * theta[..., None] * ks) @ cs


def upwind_weno_symbol(theta):
    """Fourier symbol of the linear-weights upwind WENO derivative operator.

    The symbol is normalized by the mesh width: the operator approximates
    dx * d/dx.
    """
    return _trig_poly(_SIGMA_KS, _SIGMA_CS, theta)


def g_taylor(nu, theta):
    """Amplification factor of the Taylor scheme on scalar advection."""
    nu = np.asarray(nu, dtype=float)
    theta = np.asarray(theta, dtype=float)
    g = np.ones(np.broadcast_shapes(nu.shape, theta.shape), dtype=complex)
    nu_pow = np.ones_like(nu)
    for ks, cs in _GROUPS:
        nu_pow = nu_pow * nu
        g = g + nu_pow * _trig_poly(ks, cs, theta)
    if g.shape == ():
        return complex(g)
    return g


def rk_linear_amplification(nu, theta):
    """Per-mode factor of one RK4 step on the linear upwind WENO operator."""
    z = -np.asarray(nu, dtype=float) * upwind_weno_symbol(theta)
    g = 1.0 + z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)))
    if np.asarray(g).shape == ():
        return complex(g)
    return g


def _central_symbols(theta):
    theta = np.asarray(theta, dtype=float)
    d1 = _trig_poly(*_as_arrays(_D1), theta=theta)
    d2 = _trig_poly(*_as_arrays(_D2), theta=theta)
    return d1, d2


def taylor_step_amplification(nu, theta):
    """Exact per-mode factor of one Taylor solver step at the ideal speed.

    Unlike g_taylor, this keeps the dissipation of the minus-family
    reconstruction of the split flux (the split carries the state alongside
    the time-averaged flux, so the minus part does not vanish).  The two
    agree to O(nu^2 theta^7) as theta -> 0.
    """
    nu = np.asarray(nu, dtype=float)
    sp = upwind_weno_symbol(theta)
    sm = -np.conj(sp)
    d1, d2 = _central_symbols(theta)
    tau = 1.0 - 0.5 * nu * d1 + nu * nu / 6.0 * d2
    g = 1.0 - 0.5 * nu * (sp * (tau + 1.0) + sm * (tau - 1.0))
    if np.asarray(g).shape == ():
        return complex(g)
    return g


def rk4_step_amplification(nu, theta):
    """Exact per-mode factor of one RK4 solver step at the ideal speed.

    The stages are pure upwind (their split state term cancels exactly);
    the final reconstruction of the Simpson-combined flux is not, which is
    where this differs from rk_linear_amplification, again by
    O(nu^2 theta^7) for small theta.
    """
    nu = np.asarray(nu, dtype=float)
    sp = upwind_weno_symbol(theta)
    sm = -np.conj(sp)
    g2 = 1.0 - 0.5 * nu * sp
    g3 = 1.0 - 0.5 * nu * sp * g2
    g4 = 1.0 - nu * sp * g3
    simpson = (1.0 + 2.0 * (g2 + g3) + g4) / 6.0
    g = 1.0 - 0.5 * nu * ((sp + sm) * simpson + (sp - sm))
    if np.asarray(g).shape == ():
        return complex(g)
    return g


def max_amplification(nu, theta_samples: int = 4096, which: str = "taylor") -> float:
    thetas = np.linspace(0.0, 2.0 * np.pi, theta_samples, endpoint=False)
    fn = g_taylor if which == "taylor" else rk_linear_amplification
    return float(np.max(np.abs(fn(np.asarray(nu), thetas))))


def max_stable_cfl(theta_samples: int = 4096, nu_tolerance: float = 1.0e-4,
                   slack: float = 1.0e-12) -> float:
    """Largest CFL number with |g| <= 1 + slack over all sampled phases.

    Bisection in nu over a dense uniform phase sweep.
    """
    if theta_samples < 1024:
        raise ConfigurationError("need at least 1024 phase samples")

    def stable(nu):
        return max_amplification(nu, theta_samples) <= 1.0 + slack

    lo, hi = 0.5, 1.5
    if not stable(lo):
        raise ConfigurationError("lower bisection bracket is not stable")
    while stable(hi):
        hi *= 1.5
        if hi > 64.0:
            raise ConfigurationError("no unstable CFL found below 64")
    while hi - lo > nu_tolerance:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def amplification_sweep(nus, theta_samples: int = 256, which: str = "taylor"):
    """Rows (nu, theta, abs_g) for CSV output."""
    thetas = np.linspace(0.0, 2.0 * np.pi, theta_samples, endpoint=False)
    fn = g_taylor if which == "taylor" else rk_linear_amplification
    rows = []
    for nu in np.atleast_1d(np.asarray(nus, dtype=float)):
        gabs = np.abs(fn(nu, thetas))
        rows.append(np.column_stack([np.full_like(thetas, nu), thetas, gabs]))
    return np.vstack(rows)

"""Fifth-order WENO interface reconstruction from cell-average-identified data.

The kernels operate on raw scalars (vectorized over any leading shape);
callers are responsible for components and characteristic variables.  A
linear-weights mode replaces the nonlinear weights with the ideal ones,
which is what the stability analysis assumes in smooth regions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NONLINEAR = "nonlinear"
LINEAR = "linear"

# ideal weights of the three substencils
GAMMA0, GAMMA1, GAMMA2 = 0.1, 0.6, 0.3


@dataclass(frozen=True)
class WenoParams:
    """Reconstruction parameters: weight power p, regularization eps, mode.

    eps is added to the smoothness indicator before raising to the power p,
    with no rescaling against the mesh width.  The default eps is the
    classical Jiang-Shu value; the published convergence tables this solver
    reproduces are only attainable with it.
    """

    p: float = 2.0
    eps: float = 1.0e-6
    mode: str = NONLINEAR

    def __post_init__(self):
        if self.p < 1.0:
            raise ValueError(f"power parameter must be >= 1, got {self.p}")
        if not self.eps > 0.0:
            raise ValueError(f"regularization must be positive, got {self.eps}")
        if self.mode not in (NONLINEAR, LINEAR):
            raise ValueError(f"unknown weight mode {self.mode!r}")

    @property
    def linear(self) -> bool:
        return self.mode == LINEAR


def _betas(u0, u1, u2, u3, u4):
    b0 = 13.0 / 12.0 * (u0 - 2.0 * u1 + u2) ** 2 + 0.25 * (u0 - 4.0 * u1 + 3.0 * u2) ** 2
    b1 = 13.0 / 12.0 * (u1 - 2.0 * u2 + u3) ** 2 + 0.25 * (u1 - u3) ** 2
    b2 = 13.0 / 12.0 * (u2 - 2.0 * u3 + u4) ** 2 + 0.25 * (3.0 * u2 - 4.0 * u3 + u4) ** 2
    return b0, b1, b2


def _weno5_plus_parts(u0, u1, u2, u3, u4, params: WenoParams):
    # candidate interface values of the three quadratic substencils
    v0 = (2.0 * u0 - 7.0 * u1 + 11.0 * u2) / 6.0
    v1 = (-u1 + 5.0 * u2 + 2.0 * u3) / 6.0
    v2 = (2.0 * u2 + 5.0 * u3 - u4) / 6.0
    if params.linear:
        return GAMMA0 * v0 + GAMMA1 * v1 + GAMMA2 * v2
    b0, b1, b2 = _betas(u0, u1, u2, u3, u4)
    if params.p == 2.0:
        d0, d1, d2 = b0 + params.eps, b1 + params.eps, b2 + params.eps
        a0 = GAMMA0 / (d0 * d0)
        a1 = GAMMA1 / (d1 * d1)
        a2 = GAMMA2 / (d2 * d2)
    else:
        a0 = GAMMA0 / (b0 + params.eps) ** params.p
        a1 = GAMMA1 / (b1 + params.eps) ** params.p
        a2 = GAMMA2 / (b2 + params.eps) ** params.p
    wsum = a0 + a1 + a2
    return (a0 * v0 + a1 * v1 + a2 * v2) / wsum


def smoothness_indicators(stencil):
    """The three quadratic smoothness measures of a 5-point stencil.

    The stencil axis is the last one; returns (beta0, beta1, beta2).
    """
    u = np.asarray(stencil, dtype=float)
    return _betas(u[..., 0], u[..., 1], u[..., 2], u[..., 3], u[..., 4])


def weno5_plus(stencil, params: WenoParams):
    """Interface value right of the center cell from [u_{i-2} .. u_{i+2}]."""
    u = np.asarray(stencil, dtype=float)
    return _weno5_plus_parts(u[..., 0], u[..., 1], u[..., 2], u[..., 3], u[..., 4],
                             params)


def weno5_minus(stencil, params: WenoParams):
    """Mirror-image reconstruction from [u_{i-1} .. u_{i+3}].

    Defined by symmetry as the plus kernel applied to the reversed stencil.
    """
    u = np.asarray(stencil, dtype=float)
    return _weno5_plus_parts(u[..., 4], u[..., 3], u[..., 2], u[..., 1], u[..., 0],
                             params)


def nonlinear_weights(stencil, params: WenoParams):
    """Normalized weights for the plus orientation; sums to one."""
    u = np.asarray(stencil, dtype=float)
    if params.linear:
        shape = u.shape[:-1] + (3,)
        return np.broadcast_to(np.array([GAMMA0, GAMMA1, GAMMA2]), shape).copy()
    b = np.stack(_betas(u[..., 0], u[..., 1], u[..., 2], u[..., 3], u[..., 4]), axis=-1)
    a = np.array([GAMMA0, GAMMA1, GAMMA2]) / (b + params.eps) ** params.p
    return a / a.sum(axis=-1, keepdims=True)

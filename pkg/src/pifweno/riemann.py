"""Exact Riemann solver for the 1D Euler equations.

Star-region pressure is found by Newton iteration on the standard two-sided
pressure function; the self-similar solution is then sampled at xi = x/t.
Used as the reference for the shock-tube benchmarks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OracleError


@dataclass(frozen=True)
class RiemannState:
    """Left/right primitive states (rho, u, p) of a Riemann problem."""

    rho_l: float
    u_l: float
    p_l: float
    rho_r: float
    u_r: float
    p_r: float
    gamma: float = 1.4

    def __post_init__(self):
        if min(self.rho_l, self.p_l, self.rho_r, self.p_r) <= 0.0:
            raise OracleError("Riemann data requires positive density and pressure")

    @classmethod
    def from_conserved(cls, left, right, gamma: float = 1.4) -> "RiemannState":
        def prim(q):
            rho, mom, energy = q
            u = mom / rho
            return rho, u, (gamma - 1.0) * (energy - 0.5 * rho * u * u)

        return cls(*prim(left), *prim(right), gamma)


def _pressure_fn(p, rho_k, p_k, c_k, gamma):
    """One-sided pressure function and its derivative."""
    if p > p_k:  # shock branch
        a = 2.0 / ((gamma + 1.0) * rho_k)
        b = (gamma - 1.0) / (gamma + 1.0) * p_k
        root = np.sqrt(a / (p + b))
        return (p - p_k) * root, root * (1.0 - 0.5 * (p - p_k) / (p + b))
    # rarefaction branch
    ratio = (p / p_k) ** ((gamma - 1.0) / (2.0 * gamma))
    f = 2.0 * c_k / (gamma - 1.0) * (ratio - 1.0)
    df = (p / p_k) ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k)
    return f, df


class RiemannSolution:
    """Star state and wave structure of a solved Riemann problem."""

    def __init__(self, rs: RiemannState, tol: float = 1.0e-12, max_iter: int = 100):
        self.state = rs
        g = rs.gamma
        self.c_l = np.sqrt(g * rs.p_l / rs.rho_l)
        self.c_r = np.sqrt(g * rs.p_r / rs.rho_r)
        du = rs.u_r - rs.u_l
        if 2.0 * (self.c_l + self.c_r) / (g - 1.0) <= du:
            raise OracleError("initial states generate vacuum")

        # two-rarefaction guess keeps the iterate positive
        z = (g - 1.0) / (2.0 * g)
        guess = ((self.c_l + self.c_r - 0.5 * (g - 1.0) * du)
                 / (self.c_l / rs.p_l ** z + self.c_r / rs.p_r ** z)) ** (1.0 / z)
        p = max(guess, 1.0e-12)
        for _ in range(max_iter):
            f_l, df_l = _pressure_fn(p, rs.rho_l, rs.p_l, self.c_l, g)
            f_r, df_r = _pressure_fn(p, rs.rho_r, rs.p_r, self.c_r, g)
            step = (f_l + f_r + du) / (df_l + df_r)
            p_new = p - step
            if p_new <= 0.0:
                p_new = 0.5 * p
            if abs(p_new - p) < tol * 0.5 * (p_new + p):
                p = p_new
                break
            p = p_new
        else:
            raise OracleError("star-pressure iteration did not converge")

        self.p_star = p
        f_l, _ = _pressure_fn(p, rs.rho_l, rs.p_l, self.c_l, g)
        f_r, _ = _pressure_fn(p, rs.rho_r, rs.p_r, self.c_r, g)
        self.u_star = 0.5 * (rs.u_l + rs.u_r) + 0.5 * (f_r - f_l)

        beta = (g - 1.0) / (g + 1.0)
        if p > rs.p_l:
            self.left_wave = "shock"
            self.rho_star_l = rs.rho_l * (p / rs.p_l + beta) / (beta * p / rs.p_l + 1.0)
            self.left_speed = rs.u_l - self.c_l * np.sqrt(
                (g + 1.0) / (2.0 * g) * p / rs.p_l + (g - 1.0) / (2.0 * g))
        else:
            self.left_wave = "rarefaction"
            self.rho_star_l = rs.rho_l * (p / rs.p_l) ** (1.0 / g)
            c_star = self.c_l * (p / rs.p_l) ** ((g - 1.0) / (2.0 * g))
            self.left_head = rs.u_l - self.c_l
            self.left_tail = self.u_star - c_star
        if p > rs.p_r:
            self.right_wave = "shock"
            self.rho_star_r = rs.rho_r * (p / rs.p_r + beta) / (beta * p / rs.p_r + 1.0)
            self.right_speed = rs.u_r + self.c_r * np.sqrt(
                (g + 1.0) / (2.0 * g) * p / rs.p_r + (g - 1.0) / (2.0 * g))
        else:
            self.right_wave = "rarefaction"
            self.rho_star_r = rs.rho_r * (p / rs.p_r) ** (1.0 / g)
            c_star = self.c_r * (p / rs.p_r) ** ((g - 1.0) / (2.0 * g))
            self.right_head = rs.u_r + self.c_r
            self.right_tail = self.u_star + c_star

    def sample(self, xi):
        """Primitive (rho, u, p) at similarity coordinates xi = x/t."""
        xi = np.asarray(xi, dtype=float)
        rs, g = self.state, self.state.gamma
        rho = np.empty_like(xi)
        u = np.empty_like(xi)
        p = np.empty_like(xi)

        left_of_contact = xi <= self.u_star

        if self.left_wave == "shock":
            pre = left_of_contact & (xi <= self.left_speed)
            star = left_of_contact & (xi > self.left_speed)
            fan = np.zeros_like(pre)
        else:
            pre = left_of_contact & (xi <= self.left_head)
            fan = left_of_contact & (xi > self.left_head) & (xi < self.left_tail)
            star = left_of_contact & (xi >= self.left_tail)
        rho[pre], u[pre], p[pre] = rs.rho_l, rs.u_l, rs.p_l
        rho[star], u[star], p[star] = self.rho_star_l, self.u_star, self.p_star
        if np.any(fan):
            x = xi[fan]
            u[fan] = 2.0 / (g + 1.0) * (self.c_l + 0.5 * (g - 1.0) * rs.u_l + x)
            c = self.c_l - 0.5 * (g - 1.0) * (u[fan] - rs.u_l)
            rho[fan] = rs.rho_l * (c / self.c_l) ** (2.0 / (g - 1.0))
            p[fan] = rs.p_l * (c / self.c_l) ** (2.0 * g / (g - 1.0))

        right_side = ~left_of_contact
        if self.right_wave == "shock":
            pre = right_side & (xi >= self.right_speed)
            star = right_side & (xi < self.right_speed)
            fan = np.zeros_like(pre)
        else:
            pre = right_side & (xi >= self.right_head)
            fan = right_side & (xi < self.right_head) & (xi > self.right_tail)
            star = right_side & (xi <= self.right_tail)
        rho[pre], u[pre], p[pre] = rs.rho_r, rs.u_r, rs.p_r
        rho[star], u[star], p[star] = self.rho_star_r, self.u_star, self.p_star
        if np.any(fan):
            x = xi[fan]
            u[fan] = 2.0 / (g + 1.0) * (-self.c_r + 0.5 * (g - 1.0) * rs.u_r + x)
            c = self.c_r + 0.5 * (g - 1.0) * (u[fan] - rs.u_r)
            rho[fan] = rs.rho_r * (c / self.c_r) ** (2.0 / (g - 1.0))
            p[fan] = rs.p_r * (c / self.c_r) ** (2.0 * g / (g - 1.0))
        return rho, u, p


def solve_riemann(rs: RiemannState, tol: float = 1.0e-12) -> RiemannSolution:
    return RiemannSolution(rs, tol=tol)


def euler_exact_riemann(rs: RiemannState, xi):
    """Primitive (rho, u, p) of the exact solution at xi = x/t."""
    return solve_riemann(rs).sample(xi)

"""Conservation-law models: fluxes, Jacobians, Hessian products, eigensystems.

All evaluations are vectorized over leading array dimensions; conserved
vectors live on the last axis.  Euler Hessian products are hand-derived
closed forms (the Taylor flux builder calls them at every grid point) and
are validated against finite differences of the Jacobians in the test
suite.
"""

from __future__ import annotations

import numpy as np

from .errors import PositivityError


def _check_positive(rho, p, context: str):
    bad = ~(np.isfinite(rho) & np.isfinite(p) & (rho > 0.0) & (p > 0.0))
    if np.any(bad):
        idx = tuple(int(k) for k in np.argwhere(bad)[0])
        rho_v = float(np.asarray(rho)[idx])
        p_v = float(np.asarray(p)[idx])
        raise PositivityError(
            f"{context}: non-positive state rho={rho_v:.6g} p={p_v:.6g} at index {idx}",
            location=idx)


class SystemModel:
    """Contract for an m-component conservation law q_t + f(q)_x (+ g(q)_y) = 0."""

    m: int = 0
    ndim: int = 1
    name: str = "system"

    def flux(self, q, axis: int = 0):
        raise NotImplementedError

    def jacobian(self, q, axis: int = 0):
        raise NotImplementedError

    def hessian_apply(self, q, u, v, axis: int = 0):
        """Vector with components sum_jk d2f_i/dq_j dq_k * u_j * v_k."""
        raise NotImplementedError

    def eigenvalues(self, q, axis: int = 0):
        raise NotImplementedError

    def eigensystem(self, q, axis: int = 0):
        """Return (lam, R, Rinv) with jacobian = R diag(lam) Rinv."""
        raise NotImplementedError

    def speed_range(self, q, axis: int = 0):
        """(slowest, fastest) characteristic speed per point."""
        lam = self.eigenvalues(q, axis)
        return lam.min(axis=-1), lam.max(axis=-1)

    def _axis_check(self, axis: int):
        if not 0 <= axis < self.ndim:
            raise ValueError(f"{self.name} has no flux along axis {axis}")


class AdvectionModel(SystemModel):
    """Scalar transport q_t + (u q)_x = 0 at constant speed u."""

    m = 1
    ndim = 1
    name = "advection"

    def __init__(self, u: float):
        self.u = float(u)

    def flux(self, q, axis: int = 0):
        self._axis_check(axis)
        return self.u * np.asarray(q)

    def jacobian(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        return np.full(q.shape[:-1] + (1, 1), self.u)

    def hessian_apply(self, q, u, v, axis: int = 0):
        self._axis_check(axis)
        return np.zeros_like(np.asarray(q))

    def eigenvalues(self, q, axis: int = 0):
        self._axis_check(axis)
        return np.full_like(np.asarray(q), self.u)

    def eigensystem(self, q, axis: int = 0):
        q = np.asarray(q)
        ones = np.ones(q.shape[:-1] + (1, 1))
        return self.eigenvalues(q, axis), ones, ones.copy()

    def speed_range(self, q, axis: int = 0):
        self._axis_check(axis)
        speeds = np.full(np.asarray(q).shape[:-1], self.u)
        return speeds, speeds


class BurgersModel(SystemModel):
    """Inviscid Burgers equation q_t + (q^2/2)_x = 0."""

    m = 1
    ndim = 1
    name = "burgers"

    def flux(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        return 0.5 * q * q

    def jacobian(self, q, axis: int = 0):
        self._axis_check(axis)
        return np.asarray(q)[..., None]

    def hessian_apply(self, q, u, v, axis: int = 0):
        self._axis_check(axis)
        return np.asarray(u) * np.asarray(v)

    def eigenvalues(self, q, axis: int = 0):
        self._axis_check(axis)
        return np.asarray(q)

    def eigensystem(self, q, axis: int = 0):
        q = np.asarray(q)
        ones = np.ones(q.shape[:-1] + (1, 1))
        return self.eigenvalues(q, axis), ones, ones.copy()

    def speed_range(self, q, axis: int = 0):
        self._axis_check(axis)
        q0 = np.asarray(q)[..., 0]
        return q0, q0


class Euler1D(SystemModel):
    """1D Euler equations for an ideal gas, conserved (rho, rho*u, E)."""

    m = 3
    ndim = 1
    name = "euler1d"

    def __init__(self, gamma: float = 1.4):
        if not gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {gamma}")
        self.gamma = float(gamma)

    def primitives(self, q, check: bool = True):
        """Return (rho, u, p)."""
        q = np.asarray(q)
        rho = q[..., 0]
        u = q[..., 1] / rho
        p = (self.gamma - 1.0) * (q[..., 2] - 0.5 * rho * u * u)
        if check:
            _check_positive(rho, p, self.name)
        return rho, u, p

    def sound_speed(self, q):
        rho, _, p = self.primitives(q)
        return np.sqrt(self.gamma * p / rho)

    def flux(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        rho, u, p = self.primitives(q)
        out = np.empty_like(q)
        out[..., 0] = q[..., 1]
        out[..., 1] = q[..., 1] * u + p
        out[..., 2] = (q[..., 2] + p) * u
        return out

    def jacobian(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        g = self.gamma
        rho, u, _ = self.primitives(q)
        E = q[..., 2]
        u2 = u * u
        J = np.zeros(q.shape[:-1] + (3, 3))
        J[..., 0, 1] = 1.0
        J[..., 1, 0] = 0.5 * (g - 3.0) * u2
        J[..., 1, 1] = (3.0 - g) * u
        J[..., 1, 2] = g - 1.0
        J[..., 2, 0] = (g - 1.0) * u2 * u - g * u * E / rho
        J[..., 2, 1] = g * E / rho - 1.5 * (g - 1.0) * u2
        J[..., 2, 2] = g * u
        return J

    def hessian_apply(self, q, a, b, axis: int = 0):
        self._axis_check(axis)
        q, a, b = np.asarray(q), np.asarray(a), np.asarray(b)
        g = self.gamma
        rho, u, _ = self.primitives(q)
        E = q[..., 2]
        a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2]
        b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
        # symmetric pair products keep hessian_apply(q,a,b) == (q,b,a) exact
        s11 = a1 * b1
        s12 = a1 * b2 + a2 * b1
        s13 = a1 * b3 + a3 * b1
        s22 = a2 * b2
        s23 = a2 * b3 + a3 * b2
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape, q.shape))
        out[..., 1] = (3.0 - g) / rho * (u * u * s11 - u * s12 + s22)
        out[..., 2] = (
            (2.0 * g * u * E / rho ** 2 - 3.0 * (g - 1.0) * u ** 3 / rho) * s11
            + (-g * E / rho ** 2 + 3.0 * (g - 1.0) * u * u / rho) * s12
            - g * u / rho * s13
            - 3.0 * (g - 1.0) * u / rho * s22
            + g / rho * s23
        )
        return out

    def eigenvalues(self, q, axis: int = 0):
        self._axis_check(axis)
        rho, u, p = self.primitives(q)
        c = np.sqrt(self.gamma * p / rho)
        return np.stack([u - c, u, u + c], axis=-1)

    def speed_range(self, q, axis: int = 0):
        self._axis_check(axis)
        rho, u, p = self.primitives(q)
        c = np.sqrt(self.gamma * p / rho)
        return u - c, u + c

    def eigensystem(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        g = self.gamma
        rho, u, p = self.primitives(q)
        c = np.sqrt(g * p / rho)
        H = (q[..., 2] + p) / rho
        lam = np.stack([u - c, u, u + c], axis=-1)

        R = np.empty(q.shape[:-1] + (3, 3))
        R[..., 0, 0] = 1.0
        R[..., 1, 0] = u - c
        R[..., 2, 0] = H - u * c
        R[..., 0, 1] = 1.0
        R[..., 1, 1] = u
        R[..., 2, 1] = 0.5 * u * u
        R[..., 0, 2] = 1.0
        R[..., 1, 2] = u + c
        R[..., 2, 2] = H + u * c

        b1 = (g - 1.0) / (c * c)
        b2 = 0.5 * b1 * u * u
        Ri = np.empty_like(R)
        Ri[..., 0, 0] = 0.5 * (b2 + u / c)
        Ri[..., 0, 1] = -0.5 * (b1 * u + 1.0 / c)
        Ri[..., 0, 2] = 0.5 * b1
        Ri[..., 1, 0] = 1.0 - b2
        Ri[..., 1, 1] = b1 * u
        Ri[..., 1, 2] = -b1
        Ri[..., 2, 0] = 0.5 * (b2 - u / c)
        Ri[..., 2, 1] = -0.5 * (b1 * u - 1.0 / c)
        Ri[..., 2, 2] = 0.5 * b1
        return lam, R, Ri


class Euler2D(SystemModel):
    """2D Euler equations, conserved (rho, rho*u, rho*v, E)."""

    m = 4
    ndim = 2
    name = "euler2d"

    def __init__(self, gamma: float = 1.4):
        if not gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {gamma}")
        self.gamma = float(gamma)

    def primitives(self, q, check: bool = True):
        """Return (rho, u, v, p)."""
        q = np.asarray(q)
        rho = q[..., 0]
        u = q[..., 1] / rho
        v = q[..., 2] / rho
        p = (self.gamma - 1.0) * (q[..., 3] - 0.5 * rho * (u * u + v * v))
        if check:
            _check_positive(rho, p, self.name)
        return rho, u, v, p

    def flux(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        rho, u, v, p = self.primitives(q)
        out = np.empty_like(q)
        if axis == 0:
            out[..., 0] = q[..., 1]
            out[..., 1] = q[..., 1] * u + p
            out[..., 2] = q[..., 1] * v
            out[..., 3] = (q[..., 3] + p) * u
        else:
            out[..., 0] = q[..., 2]
            out[..., 1] = q[..., 2] * u
            out[..., 2] = q[..., 2] * v + p
            out[..., 3] = (q[..., 3] + p) * v
        return out

    def jacobian(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        g = self.gamma
        rho, u, v, p = self.primitives(q)
        E = q[..., 3]
        ke = 0.5 * (u * u + v * v)
        J = np.zeros(q.shape[:-1] + (4, 4))
        if axis == 0:
            J[..., 0, 1] = 1.0
            J[..., 1, 0] = (g - 1.0) * ke - u * u
            J[..., 1, 1] = (3.0 - g) * u
            J[..., 1, 2] = -(g - 1.0) * v
            J[..., 1, 3] = g - 1.0
            J[..., 2, 0] = -u * v
            J[..., 2, 1] = v
            J[..., 2, 2] = u
            J[..., 3, 0] = 2.0 * (g - 1.0) * u * ke - g * u * E / rho
            J[..., 3, 1] = g * E / rho - (g - 1.0) * (ke + u * u)
            J[..., 3, 2] = -(g - 1.0) * u * v
            J[..., 3, 3] = g * u
        else:
            J[..., 0, 2] = 1.0
            J[..., 1, 0] = -u * v
            J[..., 1, 1] = v
            J[..., 1, 2] = u
            J[..., 2, 0] = (g - 1.0) * ke - v * v
            J[..., 2, 1] = -(g - 1.0) * u
            J[..., 2, 2] = (3.0 - g) * v
            J[..., 2, 3] = g - 1.0
            J[..., 3, 0] = 2.0 * (g - 1.0) * v * ke - g * v * E / rho
            J[..., 3, 1] = -(g - 1.0) * u * v
            J[..., 3, 2] = g * E / rho - (g - 1.0) * (ke + v * v)
            J[..., 3, 3] = g * v
        return J

    def hessian_apply(self, q, a, b, axis: int = 0):
        self._axis_check(axis)
        q, a, b = np.asarray(q), np.asarray(a), np.asarray(b)
        g = self.gamma
        rho, u, v, p = self.primitives(q)
        E = q[..., 3]
        q2 = u * u + v * v
        a1, a2, a3, a4 = (a[..., k] for k in range(4))
        b1, b2, b3, b4 = (b[..., k] for k in range(4))
        # symmetric pair products keep hessian_apply(q,a,b) == (q,b,a) exact
        s11 = a1 * b1
        s12 = a1 * b2 + a2 * b1
        s13 = a1 * b3 + a3 * b1
        s14 = a1 * b4 + a4 * b1
        s22 = a2 * b2
        s23 = a2 * b3 + a3 * b2
        s24 = a2 * b4 + a4 * b2
        s33 = a3 * b3
        s34 = a3 * b4 + a4 * b3
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape, q.shape))
        # shear momentum component rho*u*v is shared by both directions
        uv_comp = (2.0 * u * v / rho * s11 - v / rho * s12 - u / rho * s13
                   + s23 / rho)
        if axis == 0:
            out[..., 1] = (
                ((3.0 - g) * u * u - (g - 1.0) * v * v) / rho * s11
                - (3.0 - g) * u / rho * s12
                + (g - 1.0) * v / rho * s13
                + (3.0 - g) / rho * s22
                - (g - 1.0) / rho * s33
            )
            out[..., 2] = uv_comp
            out[..., 3] = (
                (2.0 * g * u * E / rho ** 2 - 3.0 * (g - 1.0) * u * q2 / rho) * s11
                + (-g * E / rho ** 2 + (g - 1.0) * (3.0 * u * u + v * v) / rho) * s12
                + 2.0 * (g - 1.0) * u * v / rho * s13
                - g * u / rho * s14
                - 3.0 * (g - 1.0) * u / rho * s22
                - (g - 1.0) * v / rho * s23
                + g / rho * s24
                - (g - 1.0) * u / rho * s33
            )
        else:
            out[..., 1] = uv_comp
            out[..., 2] = (
                ((3.0 - g) * v * v - (g - 1.0) * u * u) / rho * s11
                + (g - 1.0) * u / rho * s12
                - (3.0 - g) * v / rho * s13
                - (g - 1.0) / rho * s22
                + (3.0 - g) / rho * s33
            )
            out[..., 3] = (
                (2.0 * g * v * E / rho ** 2 - 3.0 * (g - 1.0) * v * q2 / rho) * s11
                + 2.0 * (g - 1.0) * u * v / rho * s12
                + (-g * E / rho ** 2 + (g - 1.0) * (u * u + 3.0 * v * v) / rho) * s13
                - g * v / rho * s14
                - (g - 1.0) * v / rho * s22
                - (g - 1.0) * u / rho * s23
                - 3.0 * (g - 1.0) * v / rho * s33
                + g / rho * s34
            )
        return out

    def eigenvalues(self, q, axis: int = 0):
        self._axis_check(axis)
        rho, u, v, p = self.primitives(q)
        c = np.sqrt(self.gamma * p / rho)
        un = u if axis == 0 else v
        return np.stack([un - c, un, un, un + c], axis=-1)

    def speed_range(self, q, axis: int = 0):
        self._axis_check(axis)
        rho, u, v, p = self.primitives(q)
        c = np.sqrt(self.gamma * p / rho)
        un = u if axis == 0 else v
        return un - c, un + c

    def eigensystem(self, q, axis: int = 0):
        self._axis_check(axis)
        q = np.asarray(q)
        g = self.gamma
        rho, u, v, p = self.primitives(q)
        c = np.sqrt(g * p / rho)
        H = (q[..., 3] + p) / rho
        un, ut = (u, v) if axis == 0 else (v, u)
        lam = np.stack([un - c, un, un, un + c], axis=-1)

        # normal momentum row and tangential momentum row of the state vector
        rn = 1 if axis == 0 else 2
        rt = 2 if axis == 0 else 1

        R = np.zeros(q.shape[:-1] + (4, 4))
        R[..., 0, 0] = 1.0
        R[..., rn, 0] = un - c
        R[..., rt, 0] = ut
        R[..., 3, 0] = H - un * c
        R[..., 0, 1] = 1.0
        R[..., rn, 1] = un
        R[..., rt, 1] = ut
        R[..., 3, 1] = 0.5 * (u * u + v * v)
        R[..., rt, 2] = 1.0
        R[..., 3, 2] = ut
        R[..., 0, 3] = 1.0
        R[..., rn, 3] = un + c
        R[..., rt, 3] = ut
        R[..., 3, 3] = H + un * c

        b1 = (g - 1.0) / (c * c)
        b2 = 0.5 * b1 * (u * u + v * v)
        Ri = np.zeros_like(R)
        Ri[..., 0, 0] = 0.5 * (b2 + un / c)
        Ri[..., 0, rn] = -0.5 * (b1 * un + 1.0 / c)
        Ri[..., 0, rt] = -0.5 * b1 * ut
        Ri[..., 0, 3] = 0.5 * b1
        Ri[..., 1, 0] = 1.0 - b2
        Ri[..., 1, rn] = b1 * un
        Ri[..., 1, rt] = b1 * ut
        Ri[..., 1, 3] = -b1
        Ri[..., 2, 0] = -ut
        Ri[..., 2, rt] = 1.0
        Ri[..., 3, 0] = 0.5 * (b2 - un / c)
        Ri[..., 3, rn] = -0.5 * (b1 * un - 1.0 / c)
        Ri[..., 3, rt] = -0.5 * b1 * ut
        Ri[..., 3, 3] = 0.5 * b1
        return lam, R, Ri

    def primitive_to_conserved(self, rho, u, v, p):
        rho = np.asarray(rho, dtype=float)
        E = p / (self.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
        return np.stack(np.broadcast_arrays(rho, rho * u, rho * v, E), axis=-1)


def burgers_model() -> BurgersModel:
    return BurgersModel()


def advection_model(u: float) -> AdvectionModel:
    return AdvectionModel(u)


def euler1d_model(gamma: float = 1.4) -> Euler1D:
    return Euler1D(gamma)


def euler2d_model(gamma: float = 1.4) -> Euler2D:
    return Euler2D(gamma)

"""Uniform structured grids, solution state storage, and ghost-cell filling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# The flux builder reads +-2 points and the interface reconstruction reads
# +-3 more relative to an interface, so 6 ghosts cover the composed footprint
# in a single fill per step.
DEFAULT_GHOST = 6

PERIODIC = "periodic"
EXTRAPOLATE = "extrapolate"
REFLECT = "reflect"
DOUBLE_MACH = "double-mach"

_KINDS_1D = (PERIODIC, EXTRAPOLATE, REFLECT)
_KINDS_2D = (PERIODIC, EXTRAPOLATE, REFLECT, DOUBLE_MACH)

DM_WEDGE_X = 1.0 / 6.0
_DM_GAMMA = 1.4
# Mach-10 oblique shock, primitive (rho, u, v, p)
_DM_POST_PRIM = (8.0, 8.25 * np.sqrt(3.0) / 2.0, -8.25 / 2.0, 116.5)
_DM_PRE_PRIM = (1.4, 0.0, 0.0, 1.0)


def double_mach_states(gamma: float = _DM_GAMMA):
    """Post- and pre-shock conserved states used by the double-mach padding."""

    def conserved(rho, u, v, p):
        energy = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
        return np.array([rho, rho * u, rho * v, energy])

    return conserved(*_DM_POST_PRIM), conserved(*_DM_PRE_PRIM)


def double_mach_shock_x(t: float) -> float:
    """Incident-shock position along the top edge y = 1 at time t."""
    return DM_WEDGE_X + (20.0 * t + 1.0) / np.sqrt(3.0)


def double_mach_locus(y, t: float):
    """x coordinate of the oblique incident shock at height y and time t."""
    return DM_WEDGE_X + (np.asarray(y) + 20.0 * t) / np.sqrt(3.0)


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of mx cell-centered points on [a, b]."""

    a: float
    b: float
    mx: int

    def __post_init__(self):
        if self.mx < 1:
            raise ConfigurationError(f"mx must be positive, got {self.mx}")
        if not self.b > self.a:
            raise ConfigurationError(f"need b > a, got [{self.a}, {self.b}]")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.mx

    def centers(self, ghost: int = 0) -> np.ndarray:
        return self.a + (np.arange(-ghost, self.mx + ghost) + 0.5) * self.dx


@dataclass(frozen=True)
class Grid2D:
    """Tensor-product uniform grid of (mx, my) cell-centered points."""

    ax: float
    bx: float
    ay: float
    by: float
    mx: int
    my: int

    def __post_init__(self):
        if self.mx < 1 or self.my < 1:
            raise ConfigurationError(f"mesh must be positive, got {self.mx}x{self.my}")
        if not (self.bx > self.ax and self.by > self.ay):
            raise ConfigurationError("domain endpoints out of order")

    @property
    def dx(self) -> float:
        return (self.bx - self.ax) / self.mx

    @property
    def dy(self) -> float:
        return (self.by - self.ay) / self.my

    def xcenters(self, ghost: int = 0) -> np.ndarray:
        return self.ax + (np.arange(-ghost, self.mx + ghost) + 0.5) * self.dx

    def ycenters(self, ghost: int = 0) -> np.ndarray:
        return self.ay + (np.arange(-ghost, self.my + ghost) + 0.5) * self.dy


@dataclass(frozen=True)
class BoundarySpec:
    """Boundary kind per side.

    1D uses (left, right); 2D additionally (bottom, top).  Periodic must be
    used on both matching sides of an axis.  The double-mach kind implements
    the oblique-shock padding of the standard benchmark: analytic pre/post
    shock values on left/right/top (the top row is split at the printed
    shock-locus formula) and a reflecting wall for x > 1/6 on the bottom.
    """

    left: str
    right: str
    bottom: str | None = None
    top: str | None = None

    def __post_init__(self):
        two_d = self.bottom is not None or self.top is not None
        kinds = _KINDS_2D if two_d else _KINDS_1D
        sides = [("left", self.left), ("right", self.right)]
        if two_d:
            if self.bottom is None or self.top is None:
                raise ConfigurationError("2D boundary spec needs all four sides")
            sides += [("bottom", self.bottom), ("top", self.top)]
        for name, kind in sides:
            if kind not in kinds:
                raise ConfigurationError(f"unknown boundary kind {kind!r} on {name}")
        for lo, hi, axis in ((self.left, self.right, "x"), (self.bottom, self.top, "y")):
            if (lo == PERIODIC) != (hi == PERIODIC):
                raise ConfigurationError(f"periodic must pair both {axis} sides")

    @property
    def is_2d(self) -> bool:
        return self.bottom is not None


def periodic_1d() -> BoundarySpec:
    return BoundarySpec(PERIODIC, PERIODIC)


def outflow_1d() -> BoundarySpec:
    return BoundarySpec(EXTRAPOLATE, EXTRAPOLATE)


def periodic_2d() -> BoundarySpec:
    return BoundarySpec(PERIODIC, PERIODIC, PERIODIC, PERIODIC)


def double_mach_bc() -> BoundarySpec:
    return BoundarySpec(DOUBLE_MACH, DOUBLE_MACH, DOUBLE_MACH, DOUBLE_MACH)


class State:
    """Grid plus per-point conserved vectors with a ghost layer on every side.

    values has shape (mx + 2g, m) in 1D and (mx + 2g, my + 2g, m) in 2D,
    with the interior occupying the central block.
    """

    __slots__ = ("grid", "m", "ghost", "values", "t")

    def __init__(self, grid, m: int, values: np.ndarray, t: float = 0.0,
                 ghost: int = DEFAULT_GHOST):
        self.grid = grid
        self.m = m
        self.ghost = ghost
        self.values = values
        self.t = t
        if values.shape != self._expected_shape():
            raise ConfigurationError(
                f"state shape {values.shape} does not match grid {self._expected_shape()}")

    def _expected_shape(self):
        g = self.ghost
        if isinstance(self.grid, Grid1D):
            return (self.grid.mx + 2 * g, self.m)
        return (self.grid.mx + 2 * g, self.grid.my + 2 * g, self.m)

    @property
    def is_2d(self) -> bool:
        return isinstance(self.grid, Grid2D)

    @property
    def interior(self) -> np.ndarray:
        g = self.ghost
        if self.is_2d:
            return self.values[g:-g, g:-g, :]
        return self.values[g:-g, :]

    def copy(self) -> "State":
        return State(self.grid, self.m, self.values.copy(), self.t, self.ghost)

    @classmethod
    def zeros(cls, grid, m: int, ghost: int = DEFAULT_GHOST, t: float = 0.0) -> "State":
        if isinstance(grid, Grid1D):
            shape = (grid.mx + 2 * ghost, m)
        else:
            shape = (grid.mx + 2 * ghost, grid.my + 2 * ghost, m)
        return cls(grid, m, np.zeros(shape), t, ghost)

    @classmethod
    def from_function(cls, grid, m: int, fn, ghost: int = DEFAULT_GHOST,
                      t: float = 0.0) -> "State":
        """Initialize interior point values from fn(x) or fn(x, y)."""
        state = cls.zeros(grid, m, ghost, t)
        if isinstance(grid, Grid1D):
            state.interior[...] = np.asarray(fn(grid.centers()))
        else:
            xx, yy = np.meshgrid(grid.xcenters(), grid.ycenters(), indexing="ij")
            state.interior[...] = np.asarray(fn(xx, yy))
        return state


def _momentum_index(axis: int, m: int) -> int:
    # conserved layout (rho, rho*u[, rho*v], E)
    if m < axis + 2 or m < 3:
        raise ConfigurationError("reflecting wall needs a momentum component")
    return axis + 1


def _fill_1d(state: State, bc: BoundarySpec):
    q, g, mx = state.values, state.ghost, state.grid.mx
    n = q.shape[0]
    if bc.left == PERIODIC:
        q[:g] = q[mx:mx + g]
        q[n - g:] = q[g:2 * g]
        return
    for side, kind in (("left", bc.left), ("right", bc.right)):
        if kind == EXTRAPOLATE:
            if side == "left":
                q[:g] = q[g]
            else:
                q[n - g:] = q[n - g - 1]
        elif kind == REFLECT:
            mom = _momentum_index(0, state.m)
            if side == "left":
                mirror = q[g:2 * g][::-1].copy()
                mirror[:, mom] *= -1.0
                q[:g] = mirror
            else:
                mirror = q[n - 2 * g:n - g][::-1].copy()
                mirror[:, mom] *= -1.0
                q[n - g:] = mirror
        else:
            raise ConfigurationError(f"boundary kind {kind!r} not valid in 1D")


def _fill_2d_axis(state: State, kind_lo: str, kind_hi: str, axis: int, t: float):
    """Fill ghost slabs of one axis across the full extent of the other."""
    q, g = state.values, state.ghost
    n = q.shape[axis]
    mi = state.grid.mx if axis == 0 else state.grid.my

    def slab(sl):
        return (sl, slice(None)) if axis == 0 else (slice(None), sl)

    if kind_lo == PERIODIC:
        q[slab(slice(0, g))] = q[slab(slice(mi, mi + g))]
        q[slab(slice(n - g, n))] = q[slab(slice(g, 2 * g))]
        return
    for hi, kind in ((False, kind_lo), (True, kind_hi)):
        if kind == EXTRAPOLATE:
            if hi:
                q[slab(slice(n - g, n))] = q[slab(slice(n - g - 1, n - g))]
            else:
                q[slab(slice(0, g))] = q[slab(slice(g, g + 1))]
        elif kind == REFLECT:
            mom = _momentum_index(axis, state.m)
            src = slice(n - 2 * g, n - g) if hi else slice(g, 2 * g)
            mirror = np.flip(q[slab(src)], axis=axis).copy()
            mirror[..., mom] *= -1.0
            q[slab(slice(n - g, n) if hi else slice(0, g))] = mirror
        elif kind == DOUBLE_MACH:
            _fill_double_mach_side(state, axis, hi, t)
        else:
            raise ConfigurationError(f"boundary kind {kind!r} not valid here")


def _fill_double_mach_side(state: State, axis: int, hi: bool, t: float):
    if state.m != 4:
        raise ConfigurationError("double-mach boundary needs a 4-component system")
    q, g = state.values, state.ghost
    post, pre = double_mach_states()
    xg = state.grid.xcenters(g)
    yg = state.grid.ycenters(g)
    if axis == 0:
        # Left column is always behind the shock; the right column is split
        # by the oblique locus evaluated at each ghost point.
        sl = slice(q.shape[0] - g, None) if hi else slice(0, g)
        xs = xg[sl]
        locus = double_mach_locus(yg[None, :], t)
        is_post = xs[:, None] < locus
        q[sl] = np.where(is_post[..., None], post, pre)
    elif not hi:
        # Bottom: post-shock padding ahead of the wedge tip, reflecting wall past it.
        sl = slice(0, g)
        mirror = np.flip(q[:, g:2 * g], axis=1).copy()
        mirror[..., 2] *= -1.0
        pad = (xg <= DM_WEDGE_X)[:, None, None]
        q[:, sl] = np.where(pad, post, mirror)
    else:
        # Top: split every ghost row at the printed y = 1 shock position.
        sl = slice(q.shape[1] - g, None)
        is_post = (xg < double_mach_shock_x(t))[:, None, None]
        q[:, sl] = np.where(is_post, post, pre)


def fill_ghosts(state: State, bc: BoundarySpec, t: float | None = None) -> State:
    """Populate every ghost point; interior values are never modified.

    Time-dependent padding (double-mach) is evaluated at t, defaulting to
    the state's own time.
    """
    if t is None:
        t = state.t
    if state.is_2d != bc.is_2d:
        raise ConfigurationError("boundary spec dimensionality does not match state")
    if state.is_2d:
        # x sides first over the full height, then y sides over the full
        # width so the ghost corners pick up consistent values.
        _fill_2d_axis(state, bc.left, bc.right, 0, t)
        _fill_2d_axis(state, bc.bottom, bc.top, 1, t)
    else:
        _fill_1d(state, bc)
    return state

"""Explicit time stepper for the coupled flow / microrotation / heat system.

State lives on a fixed rectangular (z, xi) grid obtained by rescaling the
radial coordinate with the instantaneous wall radius, xi = r/R(z, t). One
``advance`` performs, in order:

1. evaluate the wall (R, dR/dz, dR/dt) at the current time,
2. Jacobi updates of u, w, theta at interior nodes from level-k data,
3. advance time, re-evaluate the wall,
4. zero-axial-gradient copy at the inlet/outlet columns,
5. axis and wall boundary conditions,
6. radial velocity from the mass closure using the new u and new wall.

The three interior updates share only level-k inputs, so their relative
order is immaterial (bitwise). The radial velocity is evaluated at the
new level so the wall condition v = dR/dt holds exactly after every step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import forcing, geometry
from .errors import DivergenceError
from .geometry import WallState
from .kernels import select_backend

OVERFLOW_GUARD = 1.0e6


@dataclass
class FlowField:
    """The four unknown fields at one time level, plus bookkeeping.

    Arrays are (M+1, N+1): axis 0 runs along the tube (i), axis 1 from
    the centerline (j=0) to the wall (j=N).
    """

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    theta: np.ndarray
    t: float = 0.0
    step: int = 0
    # scratch buffers for the Jacobi update; swapped into place each step
    _u2: np.ndarray = field(default=None, repr=False)
    _w2: np.ndarray = field(default=None, repr=False)
    _th2: np.ndarray = field(default=None, repr=False)
    # memo of the last wall evaluation: (t, shape, z, WallState)
    _wall: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self._u2 is None:
            self._u2 = np.empty_like(self.u)
            self._w2 = np.empty_like(self.w)
            self._th2 = np.empty_like(self.theta)

    def copy(self) -> "FlowField":
        return FlowField(u=self.u.copy(), v=self.v.copy(), w=self.w.copy(),
                         theta=self.theta.copy(), t=self.t, step=self.step)


def make_grid(params, numerics):
    """Axial and radial node coordinates (z_i = i*dz, xi_j = j*dxi)."""
    z = np.linspace(0.0, params.shape.L, numerics.M + 1)
    xi = np.linspace(0.0, 1.0, numerics.N + 1)
    return z, xi


def stability_limit(params, numerics) -> float:
    """Largest time step admitted by the stiffest radial-diffusion term.

    dt_max = alpha^2 * R_min^2 * dxi^2 / (2*(1+K)) with R_min the
    tightest wall radius over the whole cycle.
    """
    rmin = params.shape.min_radius()
    return (params.alpha ** 2) * (rmin ** 2) * (numerics.dxi ** 2) / (2.0 * (1.0 + params.K))


def init_state(params, numerics) -> FlowField:
    """Rest start: u = v = w = 0, theta = xi^2 (wall value 1, zero axis slope)."""
    params.validate()
    numerics.validate(params.shape.L)
    shape = (numerics.M + 1, numerics.N + 1)
    _, xi = make_grid(params, numerics)
    theta = np.broadcast_to(xi * xi, shape).copy()
    theta[:, -1] = 1.0
    return FlowField(
        u=np.zeros(shape),
        v=np.zeros(shape),
        w=np.zeros(shape),
        theta=theta,
        t=0.0,
        step=0,
    )


def apply_axial_boundary(*fields):
    """Zero-axial-gradient policy: copy the nearest interior column."""
    for f in fields:
        f[0, :] = f[1, :]
        f[-1, :] = f[-2, :]


def apply_axis_bc(u, w, theta):
    """Centerline: w = 0 and second-order zero-slope closure for u, theta."""
    w[:, 0] = 0.0
    u[:, 0] = (4.0 * u[:, 1] - u[:, 2]) / 3.0
    theta[:, 0] = (4.0 * theta[:, 1] - theta[:, 2]) / 3.0


def apply_wall_bc(u, w, theta):
    """Wall: no slip, no spin, unit temperature."""
    u[:, -1] = 0.0
    w[:, -1] = 0.0
    theta[:, -1] = 1.0


def _check_finite(state, names_arrays):
    for name, arr in names_arrays:
        amax = np.abs(arr).max()
        if not amax < OVERFLOW_GUARD:
            flat = np.abs(arr)
            flat = np.where(np.isnan(flat), np.inf, flat)
            i, j = np.unravel_index(int(np.argmax(flat)), arr.shape)
            raise DivergenceError(name, int(i), int(j), arr[i, j], state.step, state.t)


def advance(state: FlowField, params, numerics, grid=None, backend=None) -> FlowField:
    """One explicit step; mutates and returns ``state``."""
    kr = backend if backend is not None else select_backend()
    z, xi = grid if grid is not None else make_grid(params, numerics)
    sh, fo = params.shape, params.forcing
    dz, dxi, dt = numerics.dz, numerics.dxi, numerics.dt

    memo = state._wall
    if memo is not None and memo[0] == state.t and memo[1] is sh and memo[2] is z:
        wall = memo[3]
    else:
        wall = geometry.wall_state(sh, z, state.t)
    G = forcing.body_accel(fo, state.t)
    press = forcing.pressure_gradient(fo, state.t)

    u_new, w_new, th_new = state._u2, state._w2, state._th2
    kr.step_axial(state.u, state.w, state.v, wall.R, wall.dRdz, wall.dRdt, xi,
                  dz, dxi, dt, params.K, params.alpha, params.H, G, press, u_new)
    kr.step_micro(state.u, state.w, state.v, wall.R, wall.dRdz, wall.dRdt, xi,
                  dz, dxi, dt, params.K, params.alpha, params.J, params.m, w_new)
    kr.step_temp(state.u, state.v, state.theta, wall.R, wall.dRdz, wall.dRdt, xi,
                 dz, dxi, dt, params.alpha, params.Pr, params.Ec, params.H, th_new)

    t_new = state.t + dt
    wall_new = geometry.wall_state(sh, z, t_new)

    apply_axial_boundary(u_new, w_new, th_new)
    apply_axis_bc(u_new, w_new, th_new)
    apply_wall_bc(u_new, w_new, th_new)
    kr.radial_closure(u_new, wall_new.dRdz, wall_new.dRdt, xi, state.v)

    state._u2, state.u = state.u, u_new
    state._w2, state.w = state.w, w_new
    state._th2, state.theta = state.theta, th_new
    state.t = t_new
    state.step += 1
    state._wall = (t_new, sh, z, wall_new)

    _check_finite(state, (("u", state.u), ("w", state.w),
                          ("theta", state.theta), ("v", state.v)))
    return state


# ---------------------------------------------------------------------------
# Single-update entry points. These wrap the kernels functionally (fresh
# output array, boundaries untouched) for verification work; the run loop
# uses advance() with scratch buffers instead.

def step_axial(state, params, numerics, wall: WallState, xi, backend=None) -> np.ndarray:
    kr = backend if backend is not None else select_backend()
    G = forcing.body_accel(params.forcing, state.t)
    press = forcing.pressure_gradient(params.forcing, state.t)
    out = state.u.copy()
    kr.step_axial(state.u, state.w, state.v, wall.R, wall.dRdz, wall.dRdt, xi,
                  numerics.dz, numerics.dxi, numerics.dt,
                  params.K, params.alpha, params.H, G, press, out)
    return out


def step_microrotation(state, params, numerics, wall: WallState, xi, backend=None) -> np.ndarray:
    kr = backend if backend is not None else select_backend()
    out = state.w.copy()
    kr.step_micro(state.u, state.w, state.v, wall.R, wall.dRdz, wall.dRdt, xi,
                  numerics.dz, numerics.dxi, numerics.dt,
                  params.K, params.alpha, params.J, params.m, out)
    return out


def step_temperature(state, params, numerics, wall: WallState, xi, backend=None) -> np.ndarray:
    kr = backend if backend is not None else select_backend()
    out = state.theta.copy()
    kr.step_temp(state.u, state.v, state.theta, wall.R, wall.dRdz, wall.dRdt, xi,
                 numerics.dz, numerics.dxi, numerics.dt,
                 params.alpha, params.Pr, params.Ec, params.H, out)
    return out


def update_radial(u, wall: WallState, xi, backend=None) -> np.ndarray:
    kr = backend if backend is not None else select_backend()
    out = np.empty_like(u)
    kr.radial_closure(u, wall.dRdz, wall.dRdt, xi, out)
    return out


def continuity_residual(state, wall: WallState, numerics, xi) -> np.ndarray:
    """Mass-closure consistency diagnostic at interior axial nodes.

    residual = du/dz - 4*(xi^2 - 1)/R * dR/dt + (2/R)*dR/dz * u
    with du/dz by central differences; the boundary columns are zero.
    """
    res = np.zeros_like(state.u)
    u = state.u
    Rc = wall.R[1:-1, None]
    Rz = wall.dRdz[1:-1, None]
    Rt = wall.dRdt[1:-1, None]
    xi2 = (xi * xi)[None, :]
    du_dz = (u[2:, :] - u[:-2, :]) / (2.0 * numerics.dz)
    res[1:-1, :] = du_dz - 4.0 * (xi2 - 1.0) / Rc * Rt + 2.0 / Rc * Rz * u[1:-1, :]
    return res


def bc_violations(state: FlowField, params, numerics, grid=None) -> float:
    """Max absolute violation over the eight boundary equalities."""
    z, xi = grid if grid is not None else make_grid(params, numerics)
    wall = geometry.wall_state(params.shape, z, state.t)
    u, v, w, th = state.u, state.v, state.w, state.theta
    checks = [
        np.abs(u[:, -1]).max(),
        np.abs(w[:, -1]).max(),
        np.abs(th[:, -1] - 1.0).max(),
        np.abs(v[:, -1] - wall.dRdt).max(),
        np.abs(v[:, 0]).max(),
        np.abs(w[:, 0]).max(),
        np.abs(u[:, 0] - (4.0 * u[:, 1] - u[:, 2]) / 3.0).max(),
        np.abs(th[:, 0] - (4.0 * th[:, 1] - th[:, 2]) / 3.0).max(),
    ]
    return float(max(checks))


def run_to_steady(params, numerics, tol: float = 1e-10, max_steps: int = 200_000,
                  backend=None):
    """March until the per-step change in u drops below ``tol``.

    Returns (state, n_steps). Meant for constant forcing (a0 = Kp = Kr = 0);
    raises NoSteadyStateError past the step budget.
    """
    from .errors import NoSteadyStateError

    state = init_state(params, numerics)
    grid = make_grid(params, numerics)
    u_prev = state.u.copy()
    for k in range(1, max_steps + 1):
        advance(state, params, numerics, grid=grid, backend=backend)
        delta = np.abs(state.u - u_prev).max()
        if delta < tol:
            return state, k
        np.copyto(u_prev, state.u)
    raise NoSteadyStateError(
        f"no steady state after {max_steps} steps (last |du|_inf = {delta:.3e})"
    )


def period_steps(numerics) -> int:
    """Number of steps spanning one 2*pi forcing period (rounded up)."""
    return int(math.ceil(2.0 * np.pi / numerics.dt - 1e-9))

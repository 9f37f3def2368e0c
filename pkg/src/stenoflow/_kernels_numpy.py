"""Vectorized numpy implementation of the per-step field updates.

This is the fallback backend; the numba backend mirrors the same
expressions node by node so both produce identical floating-point
results. All arrays are (M+1, N+1) with axis 0 = z (index i) and
axis 1 = xi (index j). Interior updates cover 1 <= i <= M-1,
1 <= j <= N-1; boundary nodes are owned by the caller.

Each update is a forward-Euler step built from central differences of
the level-k fields (Jacobi update): the three field steppers read only
their input arrays and never the output of a sibling update.
"""

from __future__ import annotations

import numpy as np


def step_axial(u, w, v, R, dRdz, dRdt, xi, dz, dxi, dt,
               K, alpha, H, G, press, out):
    """Advance axial velocity at interior nodes into ``out``.

    ``press`` is the positive driving gradient -dp/dz at the current time,
    ``G`` the body acceleration.
    """
    a2 = alpha * alpha
    uc = u[1:-1, 1:-1]
    u_zp = u[2:, 1:-1]
    u_zm = u[:-2, 1:-1]
    u_xp = u[1:-1, 2:]
    u_xm = u[1:-1, :-2]
    wc = w[1:-1, 1:-1]
    w_xp = w[1:-1, 2:]
    w_xm = w[1:-1, :-2]
    vc = v[1:-1, 1:-1]
    Rc = R[1:-1, None]
    Rz = dRdz[1:-1, None]
    Rt = dRdt[1:-1, None]
    xj = xi[None, 1:-1]

    du_dxi = (u_xp - u_xm) / (2.0 * dxi)
    mesh = (xj * (Rt + uc * Rz) - vc) / Rc
    conv = du_dxi * mesh - uc * (u_zp - u_zm) / (2.0 * dz)
    lap = (u_xp - 2.0 * uc + u_xm) / (dxi * dxi) + du_dxi / xj
    couple = (w_xp - w_xm) / (2.0 * dxi) + wc / xj
    rhs = (conv
           + (1.0 + K) / (a2 * Rc * Rc) * lap
           + K / (a2 * Rc) * couple
           + (G + press - H * H * uc) / a2)
    out[1:-1, 1:-1] = uc + dt * rhs


def step_micro(u, w, v, R, dRdz, dRdt, xi, dz, dxi, dt,
               K, alpha, J, m, out):
    """Advance microrotation at interior nodes into ``out``."""
    a2 = alpha * alpha
    uc = u[1:-1, 1:-1]
    wc = w[1:-1, 1:-1]
    vc = v[1:-1, 1:-1]
    w_zp = w[2:, 1:-1]
    w_zm = w[:-2, 1:-1]
    w_xp = w[1:-1, 2:]
    w_xm = w[1:-1, :-2]
    u_xp = u[1:-1, 2:]
    u_xm = u[1:-1, :-2]
    v_zp = v[2:, 1:-1]
    v_zm = v[:-2, 1:-1]
    v_xp = v[1:-1, 2:]
    v_xm = v[1:-1, :-2]
    Rc = R[1:-1, None]
    Rz = dRdz[1:-1, None]
    Rt = dRdt[1:-1, None]
    xj = xi[None, 1:-1]

    dw_dxi = (w_xp - w_xm) / (2.0 * dxi)
    mesh = (xj * (Rt + uc * Rz) - vc) / Rc
    conv = dw_dxi * mesh - uc * (w_zp - w_zm) / (2.0 * dz)
    vortex = (K / (a2 * J)) * (2.0 * wc - (v_zp - v_zm) / (2.0 * dz))
    shear = (K / (a2 * J)) / Rc * ((u_xp - u_xm) / (2.0 * dxi)
                                   + xj * Rz * (v_xp - v_xm) / (2.0 * dxi))
    lap = ((w_xp - 2.0 * wc + w_xm) / (dxi * dxi)
           + dw_dxi / xj - wc / (xj * xj))
    rhs = conv - vortex - shear + m / (a2 * J) / (Rc * Rc) * lap
    out[1:-1, 1:-1] = wc + dt * rhs


def step_temp(u, v, theta, R, dRdz, dRdt, xi, dz, dxi, dt,
              alpha, Pr, Ec, H, out):
    """Advance temperature at interior nodes into ``out``."""
    a2 = alpha * alpha
    uc = u[1:-1, 1:-1]
    vc = v[1:-1, 1:-1]
    tc = theta[1:-1, 1:-1]
    t_zp = theta[2:, 1:-1]
    t_zm = theta[:-2, 1:-1]
    t_xp = theta[1:-1, 2:]
    t_xm = theta[1:-1, :-2]
    Rc = R[1:-1, None]
    Rz = dRdz[1:-1, None]
    Rt = dRdt[1:-1, None]
    xj = xi[None, 1:-1]

    dth_dxi = (t_xp - t_xm) / (2.0 * dxi)
    mesh = (xj * (Rt + uc * Rz) - vc) / Rc
    conv = dth_dxi * mesh - uc * (t_zp - t_zm) / (2.0 * dz)
    lap = (t_xp - 2.0 * tc + t_xm) / (dxi * dxi) + dth_dxi / xj
    rhs = conv + 1.0 / (a2 * Pr) / (Rc * Rc) * lap + (Ec * H * H / a2) * (uc * uc)
    out[1:-1, 1:-1] = tc + dt * rhs


def radial_closure(u, dRdz, dRdt, xi, out):
    """Radial velocity v = xi*(u*dR/dz + (2 - xi^2)*dR/dt) at every node."""
    out[:, :] = xi[None, :] * (u * dRdz[:, None]
                               + (2.0 - xi * xi)[None, :] * dRdt[:, None])

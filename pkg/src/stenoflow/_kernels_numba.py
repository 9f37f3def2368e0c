"""Numba implementation of the per-step field updates.

Loops mirror the numpy backend expression for expression (same
association order, no fastmath), so both backends produce bitwise
identical results. See _kernels_numpy for the layout contract.
"""

from __future__ import annotations

from numba import njit


@njit(cache=True)
def step_axial(u, w, v, R, dRdz, dRdt, xi, dz, dxi, dt,
               K, alpha, H, G, press, out):
    a2 = alpha * alpha
    two_dxi = 2.0 * dxi
    two_dz = 2.0 * dz
    dxi2 = dxi * dxi
    h2 = H * H
    gp = G + press
    M1, N1 = u.shape
    for i in range(1, M1 - 1):
        Ri = R[i]
        Rzi = dRdz[i]
        Rti = dRdt[i]
        cdiff = (1.0 + K) / (a2 * Ri * Ri)
        ccpl = K / (a2 * Ri)
        for j in range(1, N1 - 1):
            xj = xi[j]
            uc = u[i, j]
            du_dxi = (u[i, j + 1] - u[i, j - 1]) / two_dxi
            mesh = (xj * (Rti + uc * Rzi) - v[i, j]) / Ri
            conv = du_dxi * mesh - uc * (u[i + 1, j] - u[i - 1, j]) / two_dz
            lap = (u[i, j + 1] - 2.0 * uc + u[i, j - 1]) / dxi2 + du_dxi / xj
            couple = (w[i, j + 1] - w[i, j - 1]) / two_dxi + w[i, j] / xj
            rhs = (conv + cdiff * lap + ccpl * couple
                   + (gp - h2 * uc) / a2)
            out[i, j] = uc + dt * rhs


@njit(cache=True)
def step_micro(u, w, v, R, dRdz, dRdt, xi, dz, dxi, dt,
               K, alpha, J, m, out):
    a2 = alpha * alpha
    two_dxi = 2.0 * dxi
    two_dz = 2.0 * dz
    dxi2 = dxi * dxi
    cv = K / (a2 * J)
    cm = m / (a2 * J)
    M1, N1 = u.shape
    for i in range(1, M1 - 1):
        Ri = R[i]
        Rzi = dRdz[i]
        Rti = dRdt[i]
        cshear = cv / Ri
        cdiff = cm / (Ri * Ri)
        for j in range(1, N1 - 1):
            xj = xi[j]
            uc = u[i, j]
            wc = w[i, j]
            dw_dxi = (w[i, j + 1] - w[i, j - 1]) / two_dxi
            mesh = (xj * (Rti + uc * Rzi) - v[i, j]) / Ri
            conv = dw_dxi * mesh - uc * (w[i + 1, j] - w[i - 1, j]) / two_dz
            vortex = cv * (2.0 * wc - (v[i + 1, j] - v[i - 1, j]) / two_dz)
            shear = cshear * ((u[i, j + 1] - u[i, j - 1]) / two_dxi
                              + xj * Rzi * (v[i, j + 1] - v[i, j - 1]) / two_dxi)
            lap = ((w[i, j + 1] - 2.0 * wc + w[i, j - 1]) / dxi2
                   + dw_dxi / xj - wc / (xj * xj))
            rhs = conv - vortex - shear + cdiff * lap
            out[i, j] = wc + dt * rhs


@njit(cache=True)
def step_temp(u, v, theta, R, dRdz, dRdt, xi, dz, dxi, dt,
              alpha, Pr, Ec, H, out):
    a2 = alpha * alpha
    two_dxi = 2.0 * dxi
    two_dz = 2.0 * dz
    dxi2 = dxi * dxi
    ct = 1.0 / (a2 * Pr)
    cs = Ec * H * H / a2
    M1, N1 = u.shape
    for i in range(1, M1 - 1):
        Ri = R[i]
        Rzi = dRdz[i]
        Rti = dRdt[i]
        cdiff = ct / (Ri * Ri)
        for j in range(1, N1 - 1):
            xj = xi[j]
            uc = u[i, j]
            tc = theta[i, j]
            dth_dxi = (theta[i, j + 1] - theta[i, j - 1]) / two_dxi
            mesh = (xj * (Rti + uc * Rzi) - v[i, j]) / Ri
            conv = dth_dxi * mesh - uc * (theta[i + 1, j] - theta[i - 1, j]) / two_dz
            lap = (theta[i, j + 1] - 2.0 * tc + theta[i, j - 1]) / dxi2 + dth_dxi / xj
            rhs = conv + cdiff * lap + cs * (uc * uc)
            out[i, j] = tc + dt * rhs


@njit(cache=True)
def radial_closure(u, dRdz, dRdt, xi, out):
    M1, N1 = u.shape
    for i in range(M1):
        Rzi = dRdz[i]
        Rti = dRdt[i]
        for j in range(N1):
            xj = xi[j]
            out[i, j] = xj * (u[i, j] * Rzi + (2.0 - xj * xj) * Rti)

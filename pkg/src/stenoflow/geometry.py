"""Time-dependent wall radius of the constricted tube and its derivatives.

The radius is a cosine bump times a sinusoidal wall-motion factor:

    R(z, t) = Rbar * [1 - (delta/2) * (1 + cos(2*pi*(z - d - l0/2)/l0))]
                   * (1 + Kr*sin(t + phi_r))        for d < z < d + l0
    R(z, t) = Rbar * (1 + Kr*sin(t + phi_r))        elsewhere

Derivatives are analytic, not numerical, so the stepping scheme sees no
extra discretization error from the moving boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass
class WallState:
    """Radius and its z/t derivatives sampled on the axial grid."""

    R: np.ndarray
    dRdz: np.ndarray
    dRdt: np.ndarray


def _check_z(shape, z):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0) or np.any(z > shape.L):
        raise ValueError(f"z must lie in [0, {shape.L}]")
    return z


def _bump(shape, z):
    """Stationary radial profile (unit outside the bump)."""
    inside = (z > shape.d) & (z < shape.d + shape.l0)
    phase = TWO_PI * (z - shape.d - 0.5 * shape.l0) / shape.l0
    prof = 1.0 - 0.5 * shape.delta * (1.0 + np.cos(phase))
    return np.where(inside, prof, 1.0)


def _bump_dz(shape, z):
    inside = (z > shape.d) & (z < shape.d + shape.l0)
    phase = TWO_PI * (z - shape.d - 0.5 * shape.l0) / shape.l0
    slope = (shape.delta * np.pi / shape.l0) * np.sin(phase)
    return np.where(inside, slope, 0.0)


def _motion(shape, t):
    return 1.0 + shape.Kr * np.sin(t + shape.phi_r)


def radius(shape, z, t):
    """Wall radius R(z, t); z may be a scalar or an array."""
    z = _check_z(shape, z)
    r = shape.Rbar * _bump(shape, z) * _motion(shape, t)
    return float(r) if r.ndim == 0 else r


def radius_dz(shape, z, t):
    """Analytic dR/dz; identically zero outside the bump."""
    z = _check_z(shape, z)
    g = shape.Rbar * _bump_dz(shape, z) * _motion(shape, t)
    return float(g) if g.ndim == 0 else g


def radius_dt(shape, z, t):
    """Analytic dR/dt (wall velocity)."""
    z = _check_z(shape, z)
    g = shape.Rbar * _bump(shape, z) * shape.Kr * np.cos(t + shape.phi_r)
    return float(g) if g.ndim == 0 else g


def wall_state(shape, z, t) -> WallState:
    """Evaluate radius and both derivatives on the axial grid at time t."""
    z = _check_z(shape, z)
    bump = _bump(shape, z)
    mot = _motion(shape, t)
    R = shape.Rbar * bump * mot
    dRdz = shape.Rbar * _bump_dz(shape, z) * mot
    dRdt = shape.Rbar * bump * shape.Kr * np.cos(t + shape.phi_r)
    return WallState(R=R, dRdz=dRdz, dRdt=dRdt)

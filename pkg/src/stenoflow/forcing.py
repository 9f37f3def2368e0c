"""Time-periodic driving terms: body acceleration and pressure gradient."""

from __future__ import annotations

import math


def body_accel(fp, t: float) -> float:
    """Body acceleration a0*cos(b*t + phi_g)."""
    return fp.a0 * math.cos(fp.b * t + fp.phi_g)


def pressure_gradient(fp, t: float) -> float:
    """The driving gradient -dp/dz = Kbar + Kp*cos(t).

    Positive values drive flow in +z. Spatially uniform: one scalar per
    time level.
    """
    return fp.Kbar + fp.Kp * math.cos(t)

"""Independent reference solutions used to verify the stepper.

Two steady limits of the axial momentum equation in a rigid straight
tube admit closed forms:

* no magnetic field:  u(xi) = (Kbar/4)*(1 - xi^2)
* Hartmann damping:   u(xi) = (Kbar/H^2)*(1 - I0(H*xi)/I0(H))

I0 is the modified Bessel function of the first kind, order zero,
evaluated here by its power series so the oracle shares no code with
anything it checks. Verification of the coupled micropolar-pulsatile
case is by self-convergence (refine_compare); no analytic solution
exists there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solver import run_to_steady


def bessel_i0(x: float, rtol: float = 1e-12, max_terms: int = 200) -> float:
    """Power series sum_k (x^2/4)^k / (k!)^2 with a term-ratio stop."""
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, max_terms):
        term *= q / (k * k)
        total += term
        if term < rtol * total:
            return total
    raise RuntimeError(f"I0 series did not converge for x = {x!r}")


def bessel_i0_terms(x: float, rtol: float = 1e-12) -> int:
    """Number of series terms consumed (for the convergence guarantee)."""
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 200):
        term *= q / (k * k)
        total += term
        if term < rtol * total:
            return k + 1
    raise RuntimeError(f"I0 series did not converge for x = {x!r}")


@dataclass
class SteadyProfile:
    """Analytic steady profile sampled on radial points."""

    xi: np.ndarray
    u: np.ndarray
    Kbar: float
    H: float = 0.0


def poiseuille(Kbar: float, xi) -> SteadyProfile:
    """Parabolic profile of steady pressure-driven flow, u = (Kbar/4)*(1-xi^2)."""
    if Kbar <= 0.0:
        raise ValueError("Kbar must be > 0")
    xi = np.asarray(xi, dtype=float)
    return SteadyProfile(xi=xi, u=0.25 * Kbar * (1.0 - xi * xi), Kbar=Kbar)


def hartmann_pipe(Kbar: float, H: float, xi) -> SteadyProfile:
    """Steady profile under transverse magnetic damping."""
    if H <= 0.0:
        raise ValueError("H must be > 0 (use poiseuille for H = 0)")
    xi = np.asarray(xi, dtype=float)
    i0_wall = bessel_i0(H)
    u = (Kbar / (H * H)) * (1.0 - np.array([bessel_i0(H * x) for x in xi]) / i0_wall)
    return SteadyProfile(xi=xi, u=u, Kbar=Kbar, H=H)


def steady_params(base, H: float = 0.0, K: float | None = None):
    """Strip a parameter set down to the steady rigid straight-tube limit."""
    from dataclasses import replace

    shape = replace(base.shape, delta=0.0, Kr=0.0)
    fo = replace(base.forcing, a0=0.0, Kp=0.0)
    return replace(base, H=H, K=base.K if K is None else K, shape=shape, forcing=fo)


def steady_runner(params, numerics, tol: float = 1e-10, max_steps: int = 200_000,
                  backend=None):
    """Converged mid-tube numerical profile under constant forcing.

    ``params`` must already describe the steady limit (zero pulsatile
    amplitudes, rigid straight wall). Returns (xi, u_profile, n_steps).
    """
    fo, sh = params.forcing, params.shape
    if fo.a0 != 0.0 or fo.Kp != 0.0 or sh.Kr != 0.0 or sh.delta != 0.0:
        raise ValueError("steady_runner needs a0 = Kp = Kr = delta = 0")
    state, n = run_to_steady(params, numerics, tol=tol, max_steps=max_steps,
                             backend=backend)
    mid = numerics.M // 2
    xi = np.linspace(0.0, 1.0, numerics.N + 1)
    return xi, state.u[mid, :].copy(), n


def richardson_orders(errors, factor: float = 2.0):
    """Observed convergence orders from errors on successively refined levels."""
    errors = list(errors)
    orders = []
    for a, b in zip(errors, errors[1:]):
        if a == b:
            raise ValueError("identical results on successive levels: order undefined")
        orders.append(math.log(a / b) / math.log(factor))
    return orders


def refine_compare_spatial(params, base_n: int = 10, levels: int = 3,
                           backend=None):
    """Max-norm error vs the Hartmann/Poiseuille oracle on halved radial grids.

    Returns (errors, orders). Requires a steady-limit parameter set with
    H > 0 so the exact solution is not a grid polynomial (the parabola is
    reproduced exactly and would measure roundoff only).
    """
    errors = []
    for lv in range(levels):
        N = base_n * 2 ** lv
        dxi = 1.0 / N
        dz = params.shape.L / (2 * base_n * 2 ** lv)
        from .params import NumericalParams
        from .solver import stability_limit

        num = NumericalParams.from_spacings(params.shape.L, dz, dxi, dt=1.0,
                                            warmup_periods=0, measure_periods=1)
        dt = 0.5 * stability_limit(params, num)
        num = NumericalParams.from_spacings(params.shape.L, dz, dxi, dt=dt,
                                            warmup_periods=0, measure_periods=1)
        xi, u_num, _ = steady_runner(params, num, backend=backend)
        exact = (hartmann_pipe(params.forcing.Kbar, params.H, xi)
                 if params.H > 0 else poiseuille(params.forcing.Kbar, xi))
        errors.append(float(np.abs(u_num - exact.u).max()))
    return errors, richardson_orders(errors)


def refine_compare_temporal(params, numerics, horizon_steps: int = 1200,
                            levels: int = 3, backend=None):
    """Self-convergence in dt at a fixed grid and fixed final time.

    Runs ``horizon_steps`` steps at dt, then 2x steps at dt/2, etc.;
    the observed order of u(T_final) differences should be ~1 for the
    forward-Euler update.
    """
    from dataclasses import replace

    from .solver import advance, init_state, make_grid

    finals = []
    for lv in range(levels + 1):
        num = replace(numerics, dt=numerics.dt / 2 ** lv)
        state = init_state(params, num)
        grid = make_grid(params, num)
        for _ in range(horizon_steps * 2 ** lv):
            advance(state, params, num, grid=grid, backend=backend)
        finals.append(state.u.copy())
    diffs = [float(np.abs(a - b).max()) for a, b in zip(finals, finals[1:])]
    return diffs, richardson_orders(diffs)

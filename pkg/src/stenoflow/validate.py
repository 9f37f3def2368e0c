"""Self-check suite behind the ``validate`` CLI subcommand.

Runs the analytic oracles against the stepper plus the structural
invariants of every module. Each check prints one line; the suite
passes only if all checks do.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from . import geometry
from .config import parse_config
from .errors import DivergenceError
from .oracles import (bessel_i0, bessel_i0_terms, hartmann_pipe, poiseuille,
                      steady_params, steady_runner)
from .params import NumericalParams
from .runner import run_simulation
from .solver import (advance, bc_violations, init_state, make_grid,
                     stability_limit)


class _Report:
    def __init__(self, verbose=True):
        self.verbose = verbose
        self.failures = 0

    def check(self, name, ok, detail=""):
        ok = bool(ok)
        self.failures += not ok
        if self.verbose:
            tag = "ok  " if ok else "FAIL"
            print(f"[{tag}] {name}" + (f": {detail}" if detail else ""))
        return ok


def run_validation(verbose: bool = True) -> bool:
    rep = _Report(verbose)
    cfg = parse_config("")
    params, numerics = cfg.params, cfg.numerics

    # --- special function oracle -------------------------------------------------
    rep.check("I0(0) == 1", bessel_i0(0.0) == 1.0)
    terms = max(bessel_i0_terms(x) for x in np.linspace(0.1, 10.0, 40))
    rep.check("I0 series uses <= 40 terms up to x = 10", terms <= 40,
              f"max terms {terms}")
    prof = hartmann_pipe(7.30, 2.0, np.linspace(0.05, 0.95, 50))
    h = 0.01
    res_max = 0.0
    for x in prof.xi:
        up = [hartmann_pipe(7.30, 2.0, [x + k * h]).u[0] for k in (-2, -1, 0, 1, 2)]
        d2 = (-up[4] + 16 * up[3] - 30 * up[2] + 16 * up[1] - up[0]) / (12 * h * h)
        d1 = (-up[4] + 8 * up[3] - 8 * up[1] + up[0]) / (12 * h)
        res_max = max(res_max, abs(d2 + d1 / x - 4.0 * up[2] + 7.30))
    rep.check("Hartmann profile satisfies its ODE", res_max < 1e-8,
              f"max residual {res_max:.2e}")

    # --- geometry derivatives ----------------------------------------------------
    rng = np.random.default_rng(7)
    sh = params.shape
    worst = 0.0
    for _ in range(100):
        z = rng.uniform(0.1, sh.L - 0.1)
        t = rng.uniform(0.0, 20.0)
        h = 1e-5
        fd_z = (geometry.radius(sh, z + h, t) - geometry.radius(sh, z - h, t)) / (2 * h)
        fd_t = (geometry.radius(sh, z, t + h) - geometry.radius(sh, z, t - h)) / (2 * h)
        worst = max(worst,
                    abs(fd_z - geometry.radius_dz(sh, z, t)),
                    abs(fd_t - geometry.radius_dt(sh, z, t)))
    rep.check("wall derivatives match finite differences", worst < 1e-8,
              f"max deviation {worst:.2e}")

    # --- steady oracles ----------------------------------------------------------
    p0 = steady_params(params, H=0.0, K=0.0)
    xi, u_num, n0 = steady_runner(p0, numerics)
    exact = poiseuille(p0.forcing.Kbar, xi)
    err0 = np.abs(u_num - exact.u).max() / exact.u.max()
    rep.check("steady flow matches parabolic profile (0.5%)", err0 < 0.005,
              f"relative max error {err0:.2e} after {n0} steps")

    p2 = steady_params(params, H=2.0, K=0.0)
    xi, u_num, n2 = steady_runner(p2, numerics)
    exact2 = hartmann_pipe(p2.forcing.Kbar, 2.0, xi)
    err2 = np.abs(u_num - exact2.u).max() / exact2.u.max()
    rep.check("steady flow matches magnetically damped profile (1%)", err2 < 0.01,
              f"relative max error {err2:.2e} after {n2} steps")

    # --- boundary conditions on the reference configuration ----------------------
    state = init_state(params, numerics)
    grid = make_grid(params, numerics)
    worst_bc = 0.0
    for _ in range(200):
        advance(state, params, numerics, grid=grid)
        worst_bc = max(worst_bc, bc_violations(state, params, numerics, grid))
    rep.check("boundary equalities hold after every step", worst_bc == 0.0,
              f"max violation {worst_bc:.2e}")

    # --- stability guard probe ----------------------------------------------------
    bad = replace(numerics, dt=4.0 * stability_limit(params, numerics))
    probe_state = init_state(params, bad)
    caught = False
    try:
        for _ in range(5000):
            advance(probe_state, params, bad, grid=grid)
    except DivergenceError:
        caught = True
    rep.check("4x stability limit detected as divergence", caught,
              f"after {probe_state.step} steps")

    # --- local accuracy: two half steps vs one double step ------------------------
    def local_gap(dt):
        num1 = replace(numerics, dt=dt)
        num2 = replace(numerics, dt=2 * dt)
        s1 = init_state(params, num1)
        for _ in range(10):
            advance(s1, params, num1, grid=grid)
        s2 = init_state(params, num2)
        for _ in range(5):
            advance(s2, params, num2, grid=grid)
        return np.abs(s1.u - s2.u).max()

    # over a 10-step horizon T = 10*dt the halved-step gap scales as dt^2
    g1 = local_gap(numerics.dt / 4)
    g2 = local_gap(numerics.dt / 8)
    ratio = g1 / g2
    rep.check("step-halving gap shrinks at second order over a fixed step count",
              2.5 < ratio < 6.0, f"gap ratio {ratio:.2f} (expect ~4)")

    # --- determinism ---------------------------------------------------------------
    short = NumericalParams.from_spacings(params.shape.L, numerics.dz, numerics.dxi,
                                          numerics.dt, warmup_periods=0,
                                          measure_periods=1)
    r1 = run_simulation(params, short, cadence=20)
    r2 = run_simulation(params, short, cadence=20)
    same = (np.array_equal(r1.state.u, r2.state.u)
            and r1.summary.Q_mean == r2.summary.Q_mean)
    rep.check("identical configs give bitwise identical results", same)

    if verbose:
        status = "PASS" if rep.failures == 0 else f"{rep.failures} FAILURE(S)"
        print(f"validation: {status}")
    return rep.failures == 0

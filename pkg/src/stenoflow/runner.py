"""Run orchestration: warm-up, measurement window, profile sampling."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import forcing, geometry
from .diagnostics import CycleStats, SeriesCollector, TWO_PI, throat_accel_row
from .errors import ConfigError
from .solver import FlowField, advance, init_state, make_grid, stability_limit

PROFILE_PHASES = (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi)


@dataclass
class ProfileSample:
    """Radial profiles at the throat at one phase of the measured cycle."""

    phase: float
    t: float
    u: np.ndarray
    w: np.ndarray
    theta: np.ndarray
    F: np.ndarray


@dataclass
class RunResult:
    params: object
    numerics: object
    z: np.ndarray
    xi: np.ndarray
    i_throat: int
    cycles: list
    measured: list
    defect: float
    timeseries: list          # rows (t, T, Q_throat, tau_throat, lambda_inst)
    profiles: list            # ProfileSample per requested phase
    tau_peak_z: np.ndarray
    nu_mean_z: np.ndarray
    state: FlowField
    stability_margin_used: float
    walltime: float = 0.0

    @property
    def summary(self) -> CycleStats:
        """Stats of the last measured cycle."""
        return self.measured[-1]


def run_simulation(params, numerics, cadence: int = 5, phases=PROFILE_PHASES,
                   enforce_stability: bool = True, backend=None) -> RunResult:
    """Time-march warm-up plus measured cycles and gather diagnostics."""
    t_start = time.perf_counter()
    params.validate()
    numerics.validate(params.shape.L)
    limit = stability_limit(params, numerics)
    if enforce_stability and numerics.dt > limit:
        raise ConfigError(
            f"dt = {numerics.dt!r} exceeds the stability limit {limit:.6g}; "
            "reduce dt or set dt = auto"
        )

    z, xi = make_grid(params, numerics)
    state = init_state(params, numerics)
    collector = SeriesCollector(params, numerics, xi, cadence=cadence)
    it = collector.i_throat

    total_cycles = numerics.warmup_periods + numerics.measure_periods
    n_steps = int(np.ceil(total_cycles * TWO_PI / numerics.dt - 1e-9))
    measure_start = numerics.warmup_periods * TWO_PI
    targets = sorted(measure_start + p for p in phases)
    next_target = 0
    profiles: list[ProfileSample] = []

    u_prev = state.u.copy()
    wall_prev = geometry.wall_state(params.shape, z, state.t)
    grid = (z, xi)

    for _ in range(n_steps):
        np.copyto(u_prev, state.u)
        advance(state, params, numerics, grid=grid, backend=backend)
        wall = state._wall[3]  # wall at the new level, memoized by advance
        press = forcing.pressure_gradient(params.forcing, state.t)
        collector.observe(state, wall, wall_prev, u_prev, press)

        while next_target < len(targets) and state.t >= targets[next_target] - 1e-12:
            phase = targets[next_target] - measure_start
            F_row = throat_accel_row(u_prev, state.u, wall_prev, xi,
                                      numerics.dz, numerics.dt, it)
            profiles.append(ProfileSample(
                phase=phase, t=state.t,
                u=state.u[it, :].copy(), w=state.w[it, :].copy(),
                theta=state.theta[it, :].copy(), F=F_row.copy()))
            next_target += 1
        wall_prev = wall

    collector.finalize()
    measured = collector.measured_cycles
    if not measured:
        raise RuntimeError("no measured cycle completed; check warmup/measure settings")

    return RunResult(
        params=params,
        numerics=numerics,
        z=z,
        xi=xi,
        i_throat=it,
        cycles=collector.cycles,
        measured=measured,
        defect=collector.defect,
        timeseries=collector.rows,
        profiles=profiles,
        tau_peak_z=collector.tau_peak_z,
        nu_mean_z=collector.nu_mean_z(),
        state=state,
        stability_margin_used=numerics.dt / limit,
        walltime=time.perf_counter() - t_start,
    )

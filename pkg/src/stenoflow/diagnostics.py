"""Derived quantities and per-cycle statistics.

Per axial node i:

* flow rate        Q_i  = 2*pi*R_i^2 * integral_0^1 xi*u dxi   (trapezoid)
* wall shear       tau_i = -(1+K)/R_i * du/dxi|_{xi=1}          (one-sided, 2nd order)
* Nusselt number   Nu_i = (theta_{i,N} - theta_{i,N-1}) / (R_i^2 * dxi)
* fluid accel      F     = du/dt + u*du/dz - (xi/R)*(dR/dt + u*dR/dz)*du/dxi

The Nusselt formula keeps its first-order difference on purpose; all other
derivatives in the scheme are second order.

Flow resistance: instantaneous lambda(t) = L*|dp/dz|/Q diverges whenever Q
crosses zero, so cycle-level reporting uses lambda = L*Kbar/Q_mean.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCycleError

TWO_PI = 2.0 * np.pi


def _quadrature_weights(xi):
    """Trapezoid weights for integral_0^1 xi*u dxi on the radial grid."""
    dxi = xi[1] - xi[0]
    wq = xi * dxi
    wq[0] *= 0.5
    wq[-1] *= 0.5
    return wq


def flow_rate(state, wall, xi, i=None):
    """Volumetric flow rate per axial node (or at one node i)."""
    wq = _quadrature_weights(xi)
    if i is not None:
        return float(TWO_PI * wall.R[i] ** 2 * (state.u[i, :] @ wq))
    return TWO_PI * wall.R ** 2 * (state.u @ wq)


def wall_shear(state, wall, params, i=None):
    """Wall shear stress, positive for forward flow.

    tau = -(1+K)/R * (3u_N - 4u_{N-1} + u_{N-2}) / (2*dxi); the micropolar
    contribution K*w vanishes because w = 0 on the wall.
    """
    u = state.u
    dxi = 1.0 / (u.shape[1] - 1)
    grad = (3.0 * u[:, -1] - 4.0 * u[:, -2] + u[:, -3]) / (2.0 * dxi)
    tau = -(1.0 + params.K) * grad / wall.R
    if i is not None:
        return float(tau[i])
    return tau


def nusselt(state, wall, i=None):
    """Wall heat-transfer rate, first-order one-sided difference."""
    th = state.theta
    dxi = 1.0 / (th.shape[1] - 1)
    nu = (th[:, -1] - th[:, -2]) / dxi / (wall.R ** 2)
    if i is not None:
        return float(nu[i])
    return nu


def fluid_accel(u_prev, u_now, wall_prev, xi, dz, dt):
    """Material acceleration field between two consecutive levels.

    Evaluated with the level-k field u_prev and the level-k wall; the
    time derivative uses both levels. The wall column is pinned to zero
    (u vanishes there at every level) and the inlet/outlet columns copy
    their interior neighbor.
    """
    dxi = xi[1] - xi[0]
    F = np.zeros_like(u_now)
    du_dt = (u_now[1:-1, :] - u_prev[1:-1, :]) / dt
    du_dz = (u_prev[2:, :] - u_prev[:-2, :]) / (2.0 * dz)
    F[1:-1, :] = du_dt + u_prev[1:-1, :] * du_dz
    mesh = (xi[None, 1:-1] / wall_prev.R[1:-1, None]) * (
        wall_prev.dRdt[1:-1, None] + u_prev[1:-1, 1:-1] * wall_prev.dRdz[1:-1, None])
    du_dxi = (u_prev[1:-1, 2:] - u_prev[1:-1, :-2]) / (2.0 * dxi)
    F[1:-1, 1:-1] -= mesh * du_dxi
    F[:, -1] = 0.0
    F[0, :] = F[1, :]
    F[-1, :] = F[-2, :]
    return F


def instantaneous_resistance(press, Q, L):
    """lambda(t) = L*|dp/dz| / Q; nan when Q is (near) zero."""
    Q = np.asarray(Q, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = L * abs(press) / Q
    return np.where(np.abs(Q) < 1e-300, np.nan, lam)


@dataclass
class CycleStats:
    """Functionals of one completed 2*pi forcing cycle at the throat."""

    index: int
    Q_mean: float
    Q_peak: float
    Q_min: float
    tau_peak: float
    tau_min: float
    tau_amplitude: float
    Nu_throat_mean: float
    Nu_max: float
    F_peak: float
    u_center_phase0: float
    theta_center_phase0: float
    theta_center_mean: float
    lambda_cycle: float = float("nan")
    periodicity_defect: float = float("nan")


def flow_resistance_cycle(stats: CycleStats, params) -> float:
    """Cycle flow resistance lambda = L*Kbar / Q_mean."""
    if not stats.Q_mean > 0.0:
        raise DegenerateCycleError(
            f"cycle {stats.index}: Q_mean = {stats.Q_mean!r} <= 0, resistance undefined"
        )
    return params.shape.L * params.forcing.Kbar / stats.Q_mean


def periodicity_defect(prev: CycleStats, cur: CycleStats) -> float:
    """Max relative change of the flow functionals between two cycles.

    Monitors Q and tau_w only: the momentum field settles onto its
    periodic orbit within a few cycles, while the temperature keeps a
    slow conductive transient (Pr is large) that is reported as-is.
    """
    pairs = [
        (prev.Q_mean, cur.Q_mean),
        (prev.Q_peak, cur.Q_peak),
        (prev.Q_min, cur.Q_min),
        (prev.tau_peak, cur.tau_peak),
        (prev.tau_min, cur.tau_min),
    ]
    worst = 0.0
    for a, b in pairs:
        scale = max(abs(a), abs(b), 1e-30)
        worst = max(worst, abs(b - a) / scale)
    return worst


@dataclass
class _CycleAccumulator:
    index: int
    n: int = 0
    Q_sum: float = 0.0
    Q_peak: float = -np.inf
    Q_min: float = np.inf
    tau_peak: float = -np.inf
    tau_min: float = np.inf
    Nu_sum: float = 0.0
    Nu_max: float = -np.inf
    F_peak: float = 0.0
    u_center_phase0: float = np.nan
    theta_center_phase0: float = np.nan
    theta_center_sum: float = 0.0

    def close(self) -> CycleStats:
        return CycleStats(
            index=self.index,
            Q_mean=self.Q_sum / max(self.n, 1),
            Q_peak=self.Q_peak,
            Q_min=self.Q_min,
            tau_peak=self.tau_peak,
            tau_min=self.tau_min,
            tau_amplitude=self.tau_peak - self.tau_min,
            Nu_throat_mean=self.Nu_sum / max(self.n, 1),
            Nu_max=self.Nu_max,
            F_peak=self.F_peak,
            u_center_phase0=self.u_center_phase0,
            theta_center_phase0=self.theta_center_phase0,
            theta_center_mean=self.theta_center_sum / max(self.n, 1),
        )


class SeriesCollector:
    """Accumulates time series and per-cycle statistics during a run.

    ``observe`` is called once after every accepted step. Cycles are the
    2*pi periods of the pressure pulse; a cycle's stats close when the
    first sample of the next cycle arrives. Timeseries rows and axial
    aggregates are only kept inside the measurement window.
    """

    def __init__(self, params, numerics, xi, cadence: int = 5):
        self.params = params
        self.numerics = numerics
        self.xi = xi
        self.cadence = max(int(cadence), 1)
        self.i_throat = int(round(params.shape.throat / numerics.dz))
        self.measure_from = numerics.warmup_periods
        self.measure_until = numerics.warmup_periods + numerics.measure_periods
        self.cycles: list[CycleStats] = []
        self.defect = float("nan")
        self.rows: list[tuple] = []          # (t, T, Q_throat, tau_throat, lambda_inst)
        self.tau_peak_z = None               # cycle-peak tau per axial node
        self.nu_sum_z = None
        self.nu_n = 0
        self._acc: _CycleAccumulator | None = None

    def _close_cycle(self):
        stats = self._acc.close()
        try:
            stats.lambda_cycle = flow_resistance_cycle(stats, self.params)
        except DegenerateCycleError:
            stats.lambda_cycle = float("nan")
        if self.cycles:
            stats.periodicity_defect = periodicity_defect(self.cycles[-1], stats)
            self.defect = stats.periodicity_defect
        self.cycles.append(stats)

    def observe(self, state, wall, wall_prev, u_prev, press):
        it = self.i_throat
        cyc = int(state.t / TWO_PI - 1e-9)  # cycle this sample belongs to
        if self._acc is None or cyc > self._acc.index:
            if self._acc is not None:
                self._close_cycle()
            self._acc = _CycleAccumulator(index=cyc)
        acc = self._acc

        Q_t = flow_rate(state, wall, self.xi, i=it)
        tau = wall_shear(state, wall, self.params)
        nu = nusselt(state, wall)
        tau_t = float(tau[it])
        nu_t = float(nu[it])

        acc.n += 1
        acc.Q_sum += Q_t
        acc.Q_peak = max(acc.Q_peak, Q_t)
        acc.Q_min = min(acc.Q_min, Q_t)
        acc.tau_peak = max(acc.tau_peak, tau_t)
        acc.tau_min = min(acc.tau_min, tau_t)
        acc.Nu_sum += nu_t
        acc.Nu_max = max(acc.Nu_max, float(nu.max()))
        acc.theta_center_sum += float(state.theta[it, 0])
        if np.isnan(acc.u_center_phase0):  # first sample of the cycle = phase 0
            acc.u_center_phase0 = float(state.u[it, 0])
            acc.theta_center_phase0 = float(state.theta[it, 0])

        measured = self.measure_from <= cyc < self.measure_until
        if measured:
            F_row = throat_accel_row(u_prev, state.u, wall_prev, self.xi,
                                      self.numerics.dz, self.numerics.dt, it)
            acc.F_peak = max(acc.F_peak, float(np.abs(F_row).max()))
            if self.tau_peak_z is None:
                self.tau_peak_z = tau.copy()
                self.nu_sum_z = nu.copy()
                self.nu_n = 1
            else:
                np.maximum(self.tau_peak_z, tau, out=self.tau_peak_z)
                self.nu_sum_z += nu
                self.nu_n += 1
            if state.step % self.cadence == 0:
                lam = float(instantaneous_resistance(press, Q_t, self.params.shape.L))
                T = state.t / (TWO_PI * self.params.f_p)
                self.rows.append((state.t, T, Q_t, tau_t, lam))

    def finalize(self):
        # close a trailing accumulator only if it spans a full cycle;
        # the run loop normally overshoots into the next cycle by one step
        if self._acc is not None:
            if self._acc.n >= int(0.9 * TWO_PI / self.numerics.dt):
                self._close_cycle()
            self._acc = None

    @property
    def measured_cycles(self) -> list[CycleStats]:
        return [c for c in self.cycles
                if self.measure_from <= c.index < self.measure_until]

    def nu_mean_z(self):
        if self.nu_sum_z is None:
            return None
        return self.nu_sum_z / max(self.nu_n, 1)


def throat_accel_row(u_prev, u_now, wall_prev, xi, dz, dt, i):
    """Fluid-acceleration profile at one interior axial node."""
    dxi = xi[1] - xi[0]
    du_dt = (u_now[i, :] - u_prev[i, :]) / dt
    du_dz = (u_prev[i + 1, :] - u_prev[i - 1, :]) / (2.0 * dz)
    row = du_dt + u_prev[i, :] * du_dz
    mesh = (xi[1:-1] / wall_prev.R[i]) * (wall_prev.dRdt[i]
                                          + u_prev[i, 1:-1] * wall_prev.dRdz[i])
    row[1:-1] -= mesh * (u_prev[i, 2:] - u_prev[i, :-2]) / (2.0 * dxi)
    row[-1] = 0.0
    return row

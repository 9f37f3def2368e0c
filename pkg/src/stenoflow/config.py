"""Flat key=value run configuration.

One assignment per line, ``#`` starts a comment. Every key has a default
(the reference data set), so an empty file is a valid configuration.
``dt = auto`` resolves to stability_margin times the computed stability
limit. ``sweep_<name> = v1, v2, ...`` declares a parameter sweep; several
sweep keys form a cartesian product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .errors import ConfigError
from .params import DimensionlessParams, ForcingParams, NumericalParams, StenosisShape
from .solver import stability_limit

DEFAULTS = {
    # geometry
    "L": 5.0, "d": 2.0, "l0": 1.0, "delta": 0.25, "Rbar": 1.0,
    "Kr": 0.05, "phi_r": 0.0,
    # forcing
    "a0": 1.0, "b": 1.0, "phi_g": 0.0, "Kbar": 7.30, "Kp": 1.46,
    # fluid groups
    "K": 0.1, "J": 0.1, "m": 0.1, "alpha": 3.0, "H": 2.0,
    "Ec": 0.0002, "Pr": 21.0, "f_p": 1.2,
    # numerics
    "dxi": 0.025, "dz": 0.05, "dt": 0.001,
    "warmup_periods": 3, "measure_periods": 1,
    "stability_margin": 0.8, "cadence": 5,
}

INT_KEYS = {"warmup_periods", "measure_periods", "cadence"}

# physics scalars that may appear in sweep_<name> keys
SWEEPABLE = {"delta", "Kr", "phi_r", "a0", "b", "phi_g", "Kbar", "Kp",
             "K", "J", "m", "alpha", "H", "Ec", "Pr", "f_p"}


@dataclass(frozen=True)
class RunConfig:
    params: DimensionlessParams
    numerics: NumericalParams
    cadence: int
    dt_auto: bool
    sweep: tuple  # ((name, (values...)), ...) in declaration order

    def sweep_points(self):
        """Cartesian product of sweep values as (overrides dict) per point."""
        if not self.sweep:
            return [{}]
        names = [name for name, _ in self.sweep]
        grids = [values for _, values in self.sweep]
        return [dict(zip(names, combo)) for combo in itertools.product(*grids)]


def _parse_scalar(key: str, text: str):
    if key in INT_KEYS:
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{key} must be an integer (got {text!r})") from None
    if key == "dt" and text.strip().lower() == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key} must be a number (got {text!r})") from None


def _parse_values(key: str, text: str):
    parts = [p for chunk in text.split(",") for p in chunk.split()]
    if not parts:
        raise ConfigError(f"{key} needs at least one value")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"{key} must be a list of numbers (got {text!r})") from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text, filling defaults."""
    values = dict(DEFAULTS)
    sweeps: list[tuple[str, tuple]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if key.startswith("sweep_"):
            name = key[len("sweep_"):]
            if name not in SWEEPABLE:
                raise ConfigError(f"line {lineno}: {name!r} is not sweepable")
            sweeps.append((name, _parse_values(key, val)))
        elif key in DEFAULTS:
            values[key] = _parse_scalar(key, val)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return resolve(values, tuple(sweeps))


def resolve(values: dict, sweeps: tuple = ()) -> RunConfig:
    """Build validated parameter objects from a flat value mapping."""
    shape = StenosisShape(Rbar=values["Rbar"], delta=values["delta"], d=values["d"],
                          l0=values["l0"], Kr=values["Kr"], phi_r=values["phi_r"],
                          L=values["L"])
    fo = ForcingParams(a0=values["a0"], b=values["b"], phi_g=values["phi_g"],
                       Kbar=values["Kbar"], Kp=values["Kp"])
    params = DimensionlessParams(K=values["K"], m=values["m"], J=values["J"],
                                 alpha=values["alpha"], H=values["H"],
                                 Pr=values["Pr"], Ec=values["Ec"],
                                 f_p=values["f_p"], shape=shape, forcing=fo)
    try:
        params.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    dt_auto = values["dt"] == "auto"
    probe = NumericalParams(dz=values["dz"], dxi=values["dxi"], dt=1.0,
                            M=int(round(values["L"] / values["dz"])),
                            N=int(round(1.0 / values["dxi"])),
                            warmup_periods=values["warmup_periods"],
                            measure_periods=values["measure_periods"],
                            stability_margin=values["stability_margin"])
    limit = stability_limit(params, probe)
    dt = probe.stability_margin * limit if dt_auto else float(values["dt"])
    numerics = replace(probe, dt=dt)
    try:
        numerics.validate(shape.L)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if numerics.dt > limit:
        raise ConfigError(
            f"dt = {numerics.dt!r} exceeds the stability limit "
            f"{limit:.6g} for this configuration; reduce dt or set dt = auto"
        )

    cadence = values["cadence"]
    if cadence < 1:
        raise ConfigError("cadence must be >= 1")

    for name, vals in sweeps:
        for v in vals:
            trial = dict(values)
            trial[name] = v
            trial["dt"] = "auto" if dt_auto else values["dt"]
            try:
                resolve(trial)  # each sweep value must be valid in isolation
            except ConfigError as exc:
                raise ConfigError(f"sweep_{name} value {v!r}: {exc}") from None

    return RunConfig(params=params, numerics=numerics, cadence=cadence,
                     dt_auto=dt_auto, sweep=tuple(sweeps))


def config_values(cfg: RunConfig) -> dict:
    """Flat mapping equivalent to the parsed configuration (dt resolved)."""
    p, n = cfg.params, cfg.numerics
    sh, fo = p.shape, p.forcing
    return {
        "L": sh.L, "d": sh.d, "l0": sh.l0, "delta": sh.delta, "Rbar": sh.Rbar,
        "Kr": sh.Kr, "phi_r": sh.phi_r,
        "a0": fo.a0, "b": fo.b, "phi_g": fo.phi_g, "Kbar": fo.Kbar, "Kp": fo.Kp,
        "K": p.K, "J": p.J, "m": p.m, "alpha": p.alpha, "H": p.H,
        "Ec": p.Ec, "Pr": p.Pr, "f_p": p.f_p,
        "dxi": n.dxi, "dz": n.dz, "dt": n.dt,
        "warmup_periods": n.warmup_periods, "measure_periods": n.measure_periods,
        "stability_margin": n.stability_margin, "cadence": cfg.cadence,
    }


def format_config(cfg: RunConfig) -> str:
    """Echo of the fully resolved configuration; parses back to the same config."""
    values = config_values(cfg)
    lines = [f"{key} = {values[key]!r}" for key in DEFAULTS]
    for name, vals in cfg.sweep:
        lines.append(f"sweep_{name} = " + ", ".join(repr(v) for v in vals))
    return "\n".join(lines) + "\n"


def with_overrides(cfg: RunConfig, overrides: dict) -> RunConfig:
    """New config with some physics values replaced (used by sweep points)."""
    values = config_values(cfg)
    values.update(overrides)
    if cfg.dt_auto:
        values["dt"] = "auto"
    return resolve(values, sweeps=())

"""Pulsatile magneto-micropolar flow and heat transfer in a stenosed tube."""

from .config import DEFAULTS, RunConfig, format_config, parse_config
from .errors import (ConfigError, DegenerateCycleError, DivergenceError,
                     NoSteadyStateError)
from .geometry import WallState, radius, radius_dt, radius_dz, wall_state
from .params import (DimensionlessParams, ForcingParams, NumericalParams,
                     StenosisShape)
from .runner import RunResult, run_simulation
from .solver import (FlowField, advance, init_state, make_grid,
                     stability_limit)

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DegenerateCycleError", "DivergenceError", "NoSteadyStateError",
    "DimensionlessParams", "ForcingParams", "NumericalParams", "StenosisShape",
    "WallState", "FlowField", "RunConfig", "RunResult", "DEFAULTS",
    "radius", "radius_dt", "radius_dz", "wall_state",
    "advance", "init_state", "make_grid", "stability_limit",
    "parse_config", "format_config", "run_simulation",
    "__version__",
]

"""Backend selection for the hot per-step kernels.

Two interchangeable implementations exist:

* ``numba`` - @njit loops (default when numba imports cleanly)
* ``numpy`` - pure vectorized fallback

Selection order: explicit ``name`` argument, then the STENOFLOW_BACKEND
environment variable, then numba if available. Both backends produce
bitwise identical fields; see benchmarks/bench_advance.py for the speed
comparison.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable without it
    _kernels_numba = None

_ENV_VAR = "STENOFLOW_BACKEND"
_BACKENDS = {"numpy": _kernels_numpy}
if _kernels_numba is not None:
    _BACKENDS["numba"] = _kernels_numba


def available_backends() -> tuple:
    return tuple(sorted(_BACKENDS))


def select_backend(name: str | None = None):
    """Resolve a kernel backend module by name, env var, or default."""
    if name is None:
        name = os.environ.get(_ENV_VAR, "")
    if not name:
        name = "numba" if "numba" in _BACKENDS else "numpy"
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r} (choose from {available_backends()}, "
            f"env var {_ENV_VAR})"
        ) from None


def backend_name(module) -> str:
    for key, mod in _BACKENDS.items():
        if mod is module:
            return key
    return module.__name__

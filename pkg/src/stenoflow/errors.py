"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Raised for invalid or malformed run configuration."""


class DivergenceError(RuntimeError):
    """Raised when a field exceeds the overflow guard or turns non-finite.

    Carries enough context to locate the blow-up: which field, at which
    (i, j) node, at what step and simulation time.
    """

    def __init__(self, field, i, j, value, step, t):
        self.field = field
        self.node = (i, j)
        self.value = value
        self.step = step
        self.t = t
        super().__init__(
            f"solution diverged: |{field}[{i},{j}]| = {value!r} "
            f"at step {step} (t = {t:.6f})"
        )


class DegenerateCycleError(RuntimeError):
    """Raised when cycle-averaged flow rate is non-positive, so the
    cycle flow resistance is undefined."""


class NoSteadyStateError(RuntimeError):
    """Raised when a steady run fails to converge within its step budget."""

"""Exception types raised by the spinvalve package."""


class SpinValveError(Exception):
    """Base class for all package errors."""


class InvalidParameters(SpinValveError, ValueError):
    pass


class DegenerateSteadyState(SpinValveError):
    """The zero eigenvalue of the Liouvillian is not simple."""

    def __init__(self, nullspace_dim):
        super().__init__(f"steady state is not unique (null space dimension {nullspace_dim})")
        self.nullspace_dim = nullspace_dim


class NumericalFailure(SpinValveError):
    pass


class Indeterminate(SpinValveError):
    """Both currents entering a contrast ratio vanish."""


class AlphaZero(SpinValveError, ValueError):
    pass


class BoundaryMaximum(SpinValveError):
    """Contrast maximum found on the edge of the search range."""

    def __init__(self, b_edge, polarization):
        super().__init__(
            f"contrast maximum at search-range edge B={b_edge:.6g} (P={polarization:.6g}); widen the range"
        )
        self.b_edge = b_edge
        self.polarization = polarization


class SizeExceeded(SpinValveError, ValueError):
    pass


class NormDrift(SpinValveError):
    pass


class WindowInvalid(SpinValveError, ValueError):
    pass


class ConfigError(SpinValveError, ValueError):
    """Invalid sweep configuration; ``line`` is set for syntax errors."""

    def __init__(self, message, line=None, key=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.key = key

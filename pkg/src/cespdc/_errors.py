class CespdcError(Exception):
    """Base class for all errors raised by cespdc."""


class DomainError(CespdcError, ValueError):
    """A parameter lies outside the range where the model is defined."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class ThresholdError(DomainError):
    """Gain at or above the oscillation threshold r_th = -log(r1 r2)."""


class DegenerateCombError(DomainError):
    """Comb has no weight to normalize by (zero gain)."""


class ConvergenceError(CespdcError, RuntimeError):
    """Iteration or integration failed to reach the requested accuracy."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate

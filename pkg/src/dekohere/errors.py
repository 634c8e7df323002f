"""Exception types used across the package."""


class DekohereError(Exception):
    """Base class for all package errors."""


class ParameterError(DekohereError):
    """Invalid physical parameter (negative time constant, bad exponent, ...)."""


class NumericalError(DekohereError):
    """A numerical procedure failed to converge; message carries the diagnostic."""


class EnvelopeError(DekohereError):
    """Envelope is malformed or violates the decoupling symmetry constraint."""


class ConfigurationError(DekohereError):
    """Scenario configuration is inconsistent (grid, control, commensuration)."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class MetricError(DekohereError):
    """A metric is undefined for the given trajectory."""

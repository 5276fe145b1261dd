"""Exception types raised across the package."""


class FluxcatError(Exception):
    """Base class for all package errors."""


class UnsupportedBasisError(FluxcatError):
    pass


class InvalidBasisError(FluxcatError):
    pass


class TruncationError(FluxcatError):
    """Raised when a Fock truncation is too small for the requested operator.

    ``suggested_dim`` is a dimension at which the guard would be satisfied.
    """

    def __init__(self, message, suggested_dim=None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


class DomainError(FluxcatError):
    pass


class NotHermitianError(FluxcatError):
    pass


class ConvergenceError(FluxcatError):
    """Optimizer or integrator did not converge; ``last`` holds the final iterate."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class ProtocolError(FluxcatError):
    pass


class FitError(FluxcatError):
    pass


class IntegrationError(FluxcatError):
    pass


class ConfigError(FluxcatError):
    """Config validation failure; ``errors`` lists every problem found."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class TruncationWarning(UserWarning):
    pass


class ConvergenceWarning(UserWarning):
    pass

"""Exception hierarchy shared by every part of the package."""


class HulthenError(Exception):
    """Base class for all errors raised by :mod:`hulthen`."""

    exit_code = 1


class DomainError(HulthenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    exit_code = 3


class ParseError(HulthenError, ValueError):
    exit_code = 2


class NoBoundState(DomainError):
    """The requested state is not bound at the given screening.

    ``delta_max`` is the largest screening for which ``eps_nl >= 0``.
    """

    exit_code = 4

    def __init__(self, message, delta_max=None):
        super().__init__(message)
        self.delta_max = delta_max


class NotNormalizable(DomainError):
    exit_code = 5


class ConfigurationError(HulthenError, ValueError):
    exit_code = 6


class ConvergenceError(HulthenError, RuntimeError):
    """An iterative solver did not converge; ``diagnostics`` holds its last state."""

    exit_code = 7

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

"""Exception types shared by all modules.

Every error raised on a precondition or validation path derives from
``MTBError`` so the CLI can map it to exit code 2 in one place.
"""


class MTBError(Exception):
    """Base class for library errors."""


class DomainError(MTBError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ValidationError(MTBError, ValueError):
    """Malformed input object (non-Hermitian matrix, bad weights, bad JSON)."""


class PreconditionError(MTBError, ValueError):
    """A bound was requested outside the range where it is claimed."""


class ConvergenceError(MTBError, RuntimeError):
    """Iterative routine did not reach its tolerance."""


class DivergenceError(MTBError, ValueError):
    """An Orlicz-type expectation is infinite for every scale."""


class ConfigError(MTBError, ValueError):
    """Simulation configuration could not be parsed or is inconsistent."""

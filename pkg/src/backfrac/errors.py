"""Exception hierarchy. The CLI maps these onto its exit codes."""


class BackfracError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 4


class DomainError(BackfracError, ValueError):
    """An argument lies outside the domain an operation supports."""

    exit_code = 2


class ConfigError(BackfracError, ValueError):
    """An experiment configuration is invalid or inconsistent."""

    exit_code = 2


class DimensionError(BackfracError, ValueError):
    """Field, grid or coefficient sizes do not match."""

    exit_code = 2


class InfeasibleDiscrepancyError(BackfracError):
    """The discrepancy equation has no root (tau * eps >= ||f||)."""

    exit_code = 3


class DegenerateDataError(BackfracError, ValueError):
    """Data is identically zero, or too degenerate to fit."""

    exit_code = 3


class NumericalFailure(BackfracError, ArithmeticError):
    """A numerical routine failed to reach its accuracy target."""

    exit_code = 4

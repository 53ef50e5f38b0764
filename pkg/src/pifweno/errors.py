"""Exception types shared across the solver."""


class SolverError(Exception):
    """Base class for all solver failures."""


class ConfigurationError(SolverError):
    """Invalid run configuration, grid, or boundary setup."""


class PositivityError(SolverError):
    """Density or pressure lost positivity at an evaluation point."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class BlowupError(SolverError):
    """Non-finite values appeared in the numerical solution."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class OracleError(SolverError):
    """An exact or reference solution computation failed."""

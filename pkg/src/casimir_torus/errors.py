"""Exception hierarchy shared by every module of the package."""


class CasimirError(Exception):
    """Base class for all errors raised by casimir_torus."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the function."""


class OrderError(DomainError):
    """Negative Bessel order."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole of a gamma factor."""


class ConvergenceError(DomainError):
    """The defining series does not converge for these arguments."""


class UnsupportedDimensionError(CasimirError, NotImplementedError):
    """No formula is available for the requested dimension."""


class MissingTemperatureError(DomainError):
    """A temperature-dependent quantity was requested without a beta."""


class BudgetError(CasimirError, ArithmeticError):
    """A series hit its term budget before meeting the requested tolerance."""

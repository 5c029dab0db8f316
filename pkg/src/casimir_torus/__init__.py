"""Casimir pressure of a scalar field on a spatial circle at finite temperature.

The pressure is obtained from Epstein-Hurwitz zeta functions and split into a
vacuum, a thermal and a mixed component. See :mod:`casimir_torus.pressure` for
the physics entry points and :mod:`casimir_torus.asymptotics` for the massless
temperature-inversion machinery.
"""

from .epstein import ZetaArgs, ZetaResult, zeta_continued, zeta_direct
from .errors import (
    BudgetError,
    CasimirError,
    ConvergenceError,
    DomainError,
    MissingTemperatureError,
    OrderError,
    PoleError,
    UnsupportedDimensionError,
)
from .pressure import (
    CavityConfig,
    Field,
    PressureReport,
    dirichlet_pressure,
    mixed_pressure,
    mixed_pressure_massless,
    normalized_vacuum_pressure,
    thermal_pressure,
    thermal_pressure_massless,
    total_pressure,
    vacuum_pressure,
    vacuum_pressure_massless,
)
from .series import SeriesControl, SeriesResult

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CasimirError",
    "CavityConfig",
    "ConvergenceError",
    "DomainError",
    "Field",
    "MissingTemperatureError",
    "OrderError",
    "PoleError",
    "PressureReport",
    "SeriesControl",
    "SeriesResult",
    "UnsupportedDimensionError",
    "ZetaArgs",
    "ZetaResult",
    "dirichlet_pressure",
    "mixed_pressure",
    "mixed_pressure_massless",
    "normalized_vacuum_pressure",
    "thermal_pressure",
    "thermal_pressure_massless",
    "total_pressure",
    "vacuum_pressure",
    "vacuum_pressure_massless",
    "zeta_continued",
    "zeta_direct",
]

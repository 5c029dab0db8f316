"""Casimir pressure T_33 of a scalar field on a spatial circle of length L,
optionally at finite temperature 1/beta.

With the imaginary-time circle present the pressure splits into

* ``vacuum``  -- the spatial compactification alone,
* ``thermal`` -- the imaginary-time compactification alone,
* ``mixed``   -- the cross term coupling L and beta.

Massive components are Bessel-K series. Every summand is written via the
bounded combination ``z^nu K_nu(z)`` so that small masses do not overflow. At
``mass == 0`` the closed forms (or, for the mixed term, the algebraic double
sum) are used instead. Signs follow the usual convention: negative pressure
contracts the compact dimension.

All quantities are in natural units, hbar = c = k_B = 1.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError, MissingTemperatureError, UnsupportedDimensionError
from .series import (
    DEFAULT_CONTROL,
    SeriesControl,
    SeriesResult,
    aspect_ratio,
    richardson_box,
    sum_lattice,
    sum_series,
)

__all__ = [
    "CavityConfig",
    "PressureReport",
    "Field",
    "vacuum_pressure",
    "vacuum_pressure_massless",
    "thermal_pressure",
    "thermal_pressure_massless",
    "mixed_pressure",
    "mixed_pressure_massless",
    "normalized_vacuum_pressure",
    "total_pressure",
    "dirichlet_pressure",
]


@dataclass(frozen=True)
class CavityConfig:
    """Physical parameters of the compactified space.

    ``beta=None`` is the zero-temperature configuration, where the
    imaginary-time direction is not compactified at all.
    """

    dimension: int
    mass: float
    length: float
    beta: float | None = None

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.dimension}")
        if not self.mass >= 0 or math.isinf(self.mass):
            raise DomainError(f"mass must be finite and nonnegative, got {self.mass}")
        if not 0 < self.length < math.inf:
            raise DomainError(f"length must be positive and finite, got {self.length}")
        if self.beta is not None and not 0 < self.beta < math.inf:
            raise DomainError(f"beta must be positive and finite, got {self.beta}")
        object.__setattr__(self, "dimension", int(self.dimension))
        object.__setattr__(self, "mass", float(self.mass))
        object.__setattr__(self, "length", float(self.length))
        if self.beta is not None:
            object.__setattr__(self, "beta", float(self.beta))

    @property
    def a1(self) -> float:
        return self.length ** -2

    @property
    def a2(self) -> float:
        return self._require_beta() ** -2

    @property
    def c(self) -> float:
        return self.mass / (2 * math.pi)

    def _require_beta(self) -> float:
        if self.beta is None:
            raise MissingTemperatureError("this quantity needs a finite inverse temperature beta")
        return self.beta


@dataclass(frozen=True)
class PressureReport:
    vacuum: float
    thermal: float
    mixed: float
    total: float
    convergence: dict[str, SeriesResult] = field(default_factory=dict)


class Field(str, enum.Enum):
    SCALAR = "scalar"
    ELECTROMAGNETIC = "electromagnetic"

    @property
    def degrees_of_freedom(self) -> int:
        return 2 if self is Field.ELECTROMAGNETIC else 1


def _zk(nu, z):
    """z^nu K_nu(z); tends to 2^(nu-1) Gamma(nu) as z -> 0."""
    return z**nu * specfun.bessel_k(nu, z)


def _massless_sum(dimension: int) -> float:
    # Gamma(D/2) zeta(D) / pi^(D/2): the m -> 0 limit shared by the vacuum and thermal series
    return specfun.gamma(dimension / 2) * specfun.riemann_zeta(dimension) / math.pi ** (dimension / 2)


def _require_mass(cfg: CavityConfig):
    if cfg.mass <= 0:
        raise DomainError("the Bessel-series path requires mass > 0; use the massless function")


def _vacuum_series(cfg: CavityConfig, ctrl: SeriesControl) -> SeriesResult:
    _require_mass(cfg)
    D, m, L = cfg.dimension, cfg.mass, cfg.length
    h = D / 2
    scale = 2.0 / (2 * math.pi) ** h

    def term(n):
        z = m * n * L
        return scale / (n * L) ** D * ((1 - D) * _zk(h, z) - z * z * _zk(h - 1, z))

    return sum_series(term, ctrl)


def _thermal_series(cfg: CavityConfig, ctrl: SeriesControl) -> SeriesResult:
    _require_mass(cfg)
    beta = cfg._require_beta()
    D, m = cfg.dimension, cfg.mass
    h = D / 2
    scale = 2.0 / (2 * math.pi) ** h
    return sum_series(lambda n: scale / (n * beta) ** D * _zk(h, m * n * beta), ctrl)


def _mixed_series(cfg: CavityConfig, ctrl: SeriesControl) -> SeriesResult:
    _require_mass(cfg)
    beta = cfg._require_beta()
    D, m, L = cfg.dimension, cfg.mass, cfg.length
    h = D / 2
    scale = 4.0 / (2 * math.pi) ** h

    def term(n1, n2):
        x2 = (n1 * L) ** 2
        y2 = (n2 * beta) ** 2
        r2 = x2 + y2
        z = m * np.sqrt(r2)
        bracket = ((1 - D) * x2 + y2) / r2 * _zk(h, z) - x2 / r2 * z * z * _zk(h - 1, z)
        return scale * bracket / r2 ** h

    return sum_lattice(term, ctrl, aspect=aspect_ratio(L, beta))


def _mixed_massless_sum(cfg: CavityConfig, ctrl: SeriesControl) -> SeriesResult:
    if cfg.dimension != 4:
        raise UnsupportedDimensionError(
            f"massless mixed pressure is available for D = 4 only, got D = {cfg.dimension}"
        )
    beta = cfg._require_beta()
    L = cfg.length
    k1, k2 = aspect_ratio(L, beta)

    def box(size):
        n1 = np.arange(1, k1 * size + 1, dtype=float)[:, None] * L
        n2 = np.arange(1, k2 * size + 1, dtype=float)[None, :] * beta
        x2 = n1 * n1
        y2 = n2 * n2
        return float(np.sum((3 * x2 - y2) / (x2 + y2) ** 3))

    # summand is homogeneous of degree -4 in (n1, n2): box remainder ~ M^-2
    result = richardson_box(box, 2.0, ctrl, points=lambda size: k1 * k2 * size * size)
    return result.scaled(-2.0 / math.pi**2)


def vacuum_pressure(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Vacuum (spatial-circle) pressure of a massive field.

    ``2 (m / 2 pi L)^{D/2} [(1-D) sum n^{-D/2} K_{D/2}(mnL)
    - mL sum n^{1-D/2} K_{D/2-1}(mnL)]``.
    """
    return _vacuum_series(cfg, ctrl).value


def vacuum_pressure_massless(cfg: CavityConfig) -> float:
    """``-(D-1) Gamma(D/2) zeta(D) / (pi^{D/2} L^D)``; ``-pi^2 / 30 L^4`` at D = 4."""
    return -(cfg.dimension - 1) * _massless_sum(cfg.dimension) / cfg.length**cfg.dimension


def thermal_pressure(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Purely thermal pressure ``2 (m / 2 pi beta)^{D/2} sum n^{-D/2} K_{D/2}(m beta n)``."""
    return _thermal_series(cfg, ctrl).value


def thermal_pressure_massless(cfg: CavityConfig) -> float:
    """Stefan-Boltzmann pressure ``Gamma(D/2) zeta(D) / (pi^{D/2} beta^D)``."""
    return _massless_sum(cfg.dimension) / cfg._require_beta() ** cfg.dimension


def mixed_pressure(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Cross term of the doubly compactified space as a double Bessel series.

    Converges exponentially, at rate ``m * min(L, beta)``, so very light masses
    need a generous ``ctrl``. The mass-zero function handles ``m = 0`` exactly.
    """
    return _mixed_series(cfg, ctrl).value


def mixed_pressure_massless(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``-(2/pi^2) sum_{n1,n2>=1} (3 n1^2 L^2 - n2^2 beta^2) / (n1^2 L^2 + n2^2 beta^2)^3``.

    D = 4 only. The double sum decays algebraically and is evaluated by box
    extrapolation.
    """
    return _mixed_massless_sum(cfg, ctrl).value


def normalized_vacuum_pressure(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Vacuum pressure relative to the massless value at the same L and D."""
    if cfg.mass == 0:
        return 1.0
    return vacuum_pressure(cfg, ctrl) / vacuum_pressure_massless(cfg)


def _closed(value: float) -> SeriesResult:
    return SeriesResult(value, 1, 0.0, method="closed-form")


_ABSENT = SeriesResult(0.0, 0, 0.0, method="absent")


def total_pressure(cfg: CavityConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> PressureReport:
    """All three components and their sum, dispatching on ``mass == 0``."""
    massless = cfg.mass == 0
    vacuum = _closed(vacuum_pressure_massless(cfg)) if massless else _vacuum_series(cfg, ctrl)
    if cfg.beta is None:
        thermal = mixed = _ABSENT
    elif massless:
        thermal = _closed(thermal_pressure_massless(cfg))
        mixed = _mixed_massless_sum(cfg, ctrl)
    else:
        thermal = _thermal_series(cfg, ctrl)
        mixed = _mixed_series(cfg, ctrl)
    parts = {"vacuum": vacuum, "thermal": thermal, "mixed": mixed}
    return PressureReport(
        vacuum.value,
        thermal.value,
        mixed.value,
        vacuum.value + thermal.value + mixed.value,
        parts,
    )


def dirichlet_pressure(
    a: float,
    cfg: CavityConfig,
    field: Field | str = Field.SCALAR,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> PressureReport:
    """Pressure between Dirichlet plates a distance ``a`` apart.

    Obtained from the periodic result at ``L = 2a``. The electromagnetic field
    counts twice for its two polarizations. ``cfg.length`` is ignored.
    """
    if not a > 0:
        raise DomainError(f"plate separation must be positive, got {a}")
    field = Field(field)
    report = total_pressure(dataclasses.replace(cfg, length=2.0 * a), ctrl)
    k = field.degrees_of_freedom
    return PressureReport(
        k * report.vacuum,
        k * report.thermal,
        k * report.mixed,
        k * report.total,
        {name: res.scaled(k) for name, res in report.convergence.items()},
    )

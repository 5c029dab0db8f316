"""Temperature-inversion machinery for the massless mixed pressure (D = 4).

With ``xi = L / beta`` the massless mixed term is ``(3 f(xi) + xi s(xi)) / L^4``,
where

    f(xi) = -1/(8 pi^2) sum_{n1,n2>=1} (2 xi)^4 / ((xi n1)^2 + n2^2)^2
    s(xi) = -f'(xi)

and ``f(xi) = xi^4 f(1/xi)``. Summing ``f`` over ``n1`` in closed form leaves
single sums of hyperbolic functions that converge exponentially for small
``xi``. Keeping their leading exponentials gives the low- and
high-temperature expansions.

The printed low-temperature expansion of ``f`` carries the coefficient
``(1 + xi/pi)`` on its ``e^{-2 pi/xi}`` term; the exact resummed series gives
``(1 + xi/(2 pi))``. The mixed-term expansions below are reproduced as printed
by default. ``corrected=True`` selects the coefficients that follow from the
exact series, which reduces the residual to the next exponential order. The
massless total at low temperature is unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .series import DEFAULT_CONTROL, SeriesControl, aspect_ratio, richardson_box, sum_series
from .specfun import riemann_zeta
from . import pressure

__all__ = [
    "f_double_sum",
    "f_resummed",
    "f_function",
    "s_function",
    "f_small_xi",
    "f_large_xi",
    "mixed_from_f",
    "mixed_low_temperature",
    "total_low_temperature",
    "mixed_high_temperature",
    "total_high_temperature",
    "LimitsReport",
    "limits_report",
]

PI = math.pi


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if not 0 < xi < math.inf:
        raise DomainError(f"xi must be positive and finite, got {xi}")
    return xi


def _check_lengths(L: float, beta: float):
    if not (0 < L < math.inf and 0 < beta < math.inf):
        raise DomainError("L and beta must be positive and finite")


def _lattice(xi: float, summand, ctrl: SeriesControl) -> float:
    # box proportional to the physical extents (xi n1, n2)
    k1, k2 = aspect_ratio(xi, 1.0)

    def box(size):
        n1 = np.arange(1, k1 * size + 1, dtype=float)[:, None]
        n2 = np.arange(1, k2 * size + 1, dtype=float)[None, :]
        return float(np.sum(summand(xi * n1, n2)))

    return richardson_box(box, 2.0, ctrl, points=lambda size: k1 * k2 * size * size).value


def f_double_sum(xi: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``f`` from its defining double sum, box-extrapolated."""
    xi = _check_xi(xi)
    total = _lattice(xi, lambda x, y: 1.0 / (x * x + y * y) ** 2, ctrl)
    return -2.0 * xi**4 / PI**2 * total


def s_function(xi: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``s(xi) = (1/pi^2) sum (2 xi)^3 n2^2 / ((xi n1)^2 + n2^2)^3`` by double sum.

    The box aspect follows ``xi`` up to a ratio of 64, so far outside
    ``1/64 <= xi <= 64`` the default point budget may run out.
    """
    xi = _check_xi(xi)
    total = _lattice(xi, lambda x, y: y * y / (x * x + y * y) ** 3, ctrl)
    return 8.0 * xi**3 / PI**2 * total


def f_resummed(xi: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``f`` after summing over ``n1``.

    ``xi^4/pi^2 sum n^-4 - xi^3/(2 pi) sum coth(pi n/xi)/n^3
    - xi^2/2 sum n^-2 sinh^-2(pi n/xi)``.

    The algebraic parts are ``zeta(4)`` and ``zeta(3)``; the remaining sums of
    ``coth - 1`` and ``sinh^-2`` decay like ``e^{-2 pi n/xi}``. No inversion is
    applied, so large ``xi`` costs more terms and loses digits to
    cancellation. :func:`f_function` avoids both.
    """
    xi = _check_xi(xi)

    def coth_excess(n):
        with np.errstate(over="ignore"):
            return 2.0 / (n**3 * np.expm1(2 * PI * n / xi))

    def csch_sq(n):
        x = PI * n / xi
        with np.errstate(over="ignore", under="ignore"):
            e = np.exp(-2 * x)
            return 4.0 * e / (n * n * (-np.expm1(-2 * x)) ** 2)

    coth_sum = riemann_zeta(3) + sum_series(coth_excess, ctrl).value
    csch_sum = sum_series(csch_sq, ctrl).value
    return xi**4 * riemann_zeta(4) / PI**2 - xi**3 / (2 * PI) * coth_sum - xi**2 / 2 * csch_sum


def f_function(xi: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``f(xi)``, mapped through ``f(xi) = xi^4 f(1/xi)`` into ``xi <= 1``."""
    xi = _check_xi(xi)
    if xi <= 1.0:
        return f_resummed(xi, ctrl)
    return xi**4 * f_resummed(1.0 / xi, ctrl)


def f_small_xi(xi: float) -> float:
    """Expansion of ``f`` for ``xi << 1``, dropping ``O(e^{-4 pi/xi})``.

    ``pi^2 xi^4/90 - zeta(3) xi^3/(2 pi) - 2 xi^2 (1 + xi/(2 pi)) e^{-2 pi/xi}``.
    """
    xi = _check_xi(xi)
    return (
        PI**2 * xi**4 / 90
        - riemann_zeta(3) * xi**3 / (2 * PI)
        - 2 * xi**2 * (1 + xi / (2 * PI)) * math.exp(-2 * PI / xi)
    )


def f_large_xi(xi: float) -> float:
    """Expansion of ``f`` for ``xi >> 1``: the image of :func:`f_small_xi` under inversion."""
    xi = _check_xi(xi)
    return (
        PI**2 / 90
        - riemann_zeta(3) * xi / (2 * PI)
        - 2 * xi**2 * (1 + 1 / (2 * PI * xi)) * math.exp(-2 * PI * xi)
    )


def mixed_from_f(L: float, beta: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Massless mixed pressure rebuilt as ``(3 f(xi) + xi s(xi)) / L^4``."""
    _check_lengths(L, beta)
    xi = L / beta
    return (3 * f_function(xi, ctrl) + xi * s_function(xi, ctrl)) / L**4


def mixed_low_temperature(L: float, beta: float, *, corrected: bool = False) -> float:
    """Massless mixed pressure for ``L << beta``.

    As printed: ``-pi^2/(90 beta^4) + 4 pi/(beta L^3) (1 + L/(2 pi beta)) e^{-2 pi beta/L}``.
    With ``corrected=True`` the ``L/(2 pi beta)`` term is absent.
    """
    _check_lengths(L, beta)
    weight = 1.0 if corrected else 1.0 + L / (2 * PI * beta)
    return -(PI**2) / (90 * beta**4) + 4 * PI / (beta * L**3) * weight * math.exp(-2 * PI * beta / L)


def total_low_temperature(L: float, beta: float) -> float:
    """Massless total for ``L << beta``: ``-pi^2/(30 L^4) + 4 pi/(beta L^3) e^{-2 pi beta/L}``."""
    _check_lengths(L, beta)
    return -(PI**2) / (30 * L**4) + 4 * PI / (beta * L**3) * math.exp(-2 * PI * beta / L)


def _high_t_polynomial(L, beta, corrected):
    if corrected:
        return 4 * PI * L**2 / beta**2 + 4 * L / beta + 2 / PI
    return 4 * PI * L**2 / beta**2 + 6 * L / beta + 4 / PI


def mixed_high_temperature(L: float, beta: float, *, corrected: bool = False) -> float:
    """Massless mixed pressure for ``L >> beta``.

    ``pi^2/(30 L^4) - zeta(3)/(pi beta L^3) - P e^{-2 pi L/beta}/(beta L^3)`` with
    ``P = 4 pi L^2/beta^2 + 6 L/beta + 4/pi`` as printed, or
    ``4 pi L^2/beta^2 + 4 L/beta + 2/pi`` when ``corrected``.
    """
    _check_lengths(L, beta)
    poly = _high_t_polynomial(L, beta, corrected)
    return (
        PI**2 / (30 * L**4)
        - riemann_zeta(3) / (PI * beta * L**3)
        - poly * math.exp(-2 * PI * L / beta) / (beta * L**3)
    )


def total_high_temperature(L: float, beta: float, *, corrected: bool = False) -> float:
    """Massless total for ``L >> beta``; the vacuum term cancels the ``pi^2/(30 L^4)``."""
    _check_lengths(L, beta)
    poly = _high_t_polynomial(L, beta, corrected)
    return (
        PI**2 / (90 * beta**4)
        - riemann_zeta(3) / (PI * beta * L**3)
        - poly * math.exp(-2 * PI * L / beta) / (beta * L**3)
    )


LOW_T_XI = 1.0 / 3.0
HIGH_T_XI = 3.0


@dataclass(frozen=True)
class LimitsReport:
    """Exact massless D = 4 total beside its two temperature expansions.

    The low-temperature total is unaffected by the coefficient correction, so
    only the high-temperature form has a corrected variant.
    """

    L: float
    beta: float
    xi: float
    regime: str
    exact: float
    low_temperature: float
    high_temperature: float
    high_temperature_corrected: float
    low_temperature_discrepancy: float
    high_temperature_discrepancy: float
    high_temperature_corrected_discrepancy: float


def regime(xi: float) -> str:
    """``"low-temperature"`` for ``xi <= 1/3``, ``"high-temperature"`` for ``xi >= 3``."""
    xi = _check_xi(xi)
    if xi <= LOW_T_XI:
        return "low-temperature"
    if xi >= HIGH_T_XI:
        return "high-temperature"
    return "intermediate"


def limits_report(L: float, beta: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> LimitsReport:
    _check_lengths(L, beta)
    exact = pressure.total_pressure(pressure.CavityConfig(4, 0.0, L, beta), ctrl).total
    low = total_low_temperature(L, beta)
    high = total_high_temperature(L, beta)
    high_fixed = total_high_temperature(L, beta, corrected=True)
    return LimitsReport(
        L=float(L),
        beta=float(beta),
        xi=L / beta,
        regime=regime(L / beta),
        exact=exact,
        low_temperature=low,
        high_temperature=high,
        high_temperature_corrected=high_fixed,
        low_temperature_discrepancy=abs(exact - low),
        high_temperature_discrepancy=abs(exact - high),
        high_temperature_corrected_discrepancy=abs(exact - high_fixed),
    )

"""Inhomogeneous Epstein-Hurwitz zeta function.

    Z_d^{c^2}(nu; a_1..a_d) = sum_{n in Z^d} (a_1 n_1^2 + ... + a_d n_d^2 + c^2)^{-nu}

:func:`zeta_direct` sums the lattice (valid for ``nu > d/2``);
:func:`zeta_continued` evaluates the Bessel-K representation, which holds for
every ``nu`` away from the gamma poles and converges exponentially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from . import specfun
from .errors import ConvergenceError, DomainError, PoleError, UnsupportedDimensionError
from .series import (
    DEFAULT_CONTROL,
    SeriesControl,
    SeriesResult,
    aspect_ratio,
    richardson_box,
    sum_lattice,
    sum_series,
)

__all__ = ["ZetaArgs", "ZetaResult", "zeta_direct", "zeta_continued"]

ZetaResult = SeriesResult


@dataclass(frozen=True)
class ZetaArgs:
    """Arguments of ``Z_d^{c^2}(nu; a_1, ..., a_d)``; ``d`` is ``len(coefficients)``."""

    nu: float
    coefficients: tuple[float, ...]
    c_squared: float

    def __init__(self, nu: float, coefficients: Sequence[float] | float, c_squared: float):
        if np.ndim(coefficients) == 0:
            coefficients = (coefficients,)
        coeffs = tuple(float(a) for a in coefficients)
        if not coeffs:
            raise DomainError("at least one coefficient is required")
        if any(not a > 0 for a in coeffs):
            raise DomainError("all coefficients must be positive")
        if not c_squared >= 0:
            raise DomainError("c_squared must be nonnegative")
        object.__setattr__(self, "nu", float(nu))
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "c_squared", float(c_squared))

    @property
    def d(self) -> int:
        return len(self.coefficients)

    @property
    def convergent(self) -> bool:
        return self.nu > self.d / 2


def _box_sum(args: ZetaArgs, sides: Sequence[int]) -> float:
    # symmetric box |n_j| <= sides[j]; the quadratic form is accumulated by broadcasting
    q = np.full((1,) * args.d, args.c_squared)
    for axis, (a, side) in enumerate(zip(args.coefficients, sides)):
        n = np.arange(-side, side + 1, dtype=float)
        shape = [1] * args.d
        shape[axis] = n.size
        q = q + a * (n * n).reshape(shape)
    return float(np.sum(q ** -args.nu))


def zeta_direct(args: ZetaArgs, ctrl: SeriesControl = DEFAULT_CONTROL) -> ZetaResult:
    """Defining lattice sum, extrapolated in the box size.

    The truncation remainder of the symmetric box ``|n_j| <= k_j M`` expands in
    powers ``M**-(2 nu - d + j)``, so the box sums are Richardson-extrapolated
    and ``tail_bound`` is the extrapolation error estimate.

    Raises
    ------
    ConvergenceError
        If ``nu <= d/2``.
    DomainError
        If ``c_squared == 0`` (the ``n = 0`` term is singular).
    BudgetError
        If the tolerance is not met within the budget.
    """
    if not args.convergent:
        raise ConvergenceError(f"lattice sum diverges for nu={args.nu} <= d/2={args.d / 2}")
    if args.c_squared <= 0:
        raise DomainError("zeta_direct requires c_squared > 0")
    steps = [math.sqrt(a) for a in args.coefficients]
    if args.d == 2:
        proportions = aspect_ratio(steps[0], steps[1])
    else:
        proportions = tuple(max(1, min(64, round(max(steps) / s))) for s in steps)

    def points(size):
        return math.prod(2 * k * size + 1 for k in proportions)

    return richardson_box(
        lambda size: _box_sum(args, [k * size for k in proportions]),
        2 * args.nu - args.d,
        ctrl,
        points=points,
        first_size=16 if args.d == 1 else 8,
        # higher d converges faster in M but each level costs (2M)^d points
        min_levels={1: 8, 2: 6}.get(args.d, 4),
    )


def zeta_continued(args: ZetaArgs, ctrl: SeriesControl = DEFAULT_CONTROL) -> ZetaResult:
    """Bessel-K representation of the Epstein-Hurwitz zeta function, ``d`` in {1, 2}.

    ``Z = 2 pi^{d/2} / (sqrt(a_1..a_d) Gamma(nu)) * [Gamma(nu - d/2) / (2 c^{2nu-d})
    + 2 sum_j sum_{n>=1} (pi n / c sqrt(a_j))^mu K_mu(2 pi c n / sqrt(a_j))
    + 4 sum_{n1,n2>=1} (pi r / c)^mu K_mu(2 pi c r)]`` with ``mu = nu - d/2``
    and ``r = sqrt(n1^2/a1 + n2^2/a2)``; the double sum is present only for
    ``d = 2``.

    Raises
    ------
    PoleError
        If ``nu - d/2`` is a nonpositive integer.
    DomainError
        If ``c_squared == 0``.
    UnsupportedDimensionError
        For ``d > 2``.
    """
    d = args.d
    if d > 2:
        raise UnsupportedDimensionError("continuation implemented for d = 1 and d = 2 only")
    if args.c_squared <= 0:
        raise DomainError("zeta_continued requires c_squared > 0")
    mu = args.nu - d / 2
    if mu <= 0 and mu == math.floor(mu):
        raise PoleError(f"Gamma(nu - d/2) has a pole at nu={args.nu}, d={d}")
    c = math.sqrt(args.c_squared)
    order = abs(mu)  # K_{-mu} = K_mu

    def kernel(r):
        # (pi r / c)^mu K_mu(2 pi c r) with r the lattice distance sqrt(sum n_j^2 / a_j)
        z = 2.0 * math.pi * c * r
        return (math.pi * r / c) ** mu * specfun.bessel_k(order, z)

    homogeneous = specfun.gamma(mu) / (2.0 * c ** (2 * args.nu - d))
    results = []
    for a in args.coefficients:
        step = 1.0 / math.sqrt(a)
        results.append(sum_series(lambda n, s=step: 2.0 * kernel(n * s), ctrl))
    if d == 2:
        s1, s2 = (1.0 / math.sqrt(a) for a in args.coefficients)
        results.append(
            sum_lattice(
                lambda n1, n2: 4.0 * kernel(np.sqrt((n1 * s1) ** 2 + (n2 * s2) ** 2)),
                ctrl,
                aspect=aspect_ratio(s1, s2),
            )
        )
    bracket = homogeneous + sum(r.value for r in results)
    prefactor = 2.0 * math.pi ** (d / 2) / math.sqrt(math.prod(args.coefficients))
    prefactor *= float(special.rgamma(args.nu))
    return ZetaResult(
        prefactor * bracket,
        sum(r.terms_used for r in results),
        abs(prefactor) * sum(r.tail_bound for r in results),
        underflowed=any(r.underflowed for r in results),
        method="bessel-continuation",
    )


"""Truncation machinery for the infinite sums used throughout the package.

Three summation strategies are provided:

* :func:`sum_series` -- one-sided sums over ``n = 1, 2, ...`` with a local
  stopping rule, for exponentially convergent Bessel series.
* :func:`sum_lattice` -- the two-index analogue over ``n1, n2 >= 1`` grown in
  rectangular shells.
* :func:`richardson_box` -- algebraically convergent lattice sums. Partial sums
  over boxes of side ``M, 2M, 4M, ...`` are extrapolated to ``M -> inf``
  using the known power-law structure of the box remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BudgetError, DomainError

__all__ = [
    "SeriesControl",
    "SeriesResult",
    "sum_series",
    "sum_lattice",
    "richardson_box",
    "richardson_table",
    "aspect_ratio",
]


@dataclass(frozen=True)
class SeriesControl:
    """Tolerance and budget policy for every truncated sum.

    Attributes
    ----------
    abs_tol, rel_tol : float
        A series stops once its last contribution (or its error estimate) is
        below ``abs_tol`` and below ``rel_tol`` times the running total.
    max_terms : int
        Largest index reached along any one axis.
    max_points : int
        Largest number of summands evaluated by a two-index sum.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_terms: int = 100_000
    max_points: int = 20_000_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_terms < 10:
            raise DomainError("max_terms must be at least 10")
        if self.max_points < 100:
            raise DomainError("max_points must be at least 100")

    def accepts(self, error: float, value: float) -> bool:
        """Looser acceptance test used for extrapolated error estimates."""
        return error <= max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class SeriesResult:
    """A truncated sum together with its convergence metadata."""

    value: float
    terms_used: int
    tail_bound: float
    underflowed: bool = False
    method: str = "series"

    def scaled(self, factor: float) -> "SeriesResult":
        return SeriesResult(
            self.value * factor,
            self.terms_used,
            self.tail_bound * abs(factor),
            self.underflowed,
            self.method,
        )


def _tail_estimate(t_prev: float, t_last: float, n_prev: float, n_last: float) -> float:
    """Remainder estimate from the last two term magnitudes.

    Both a geometric and a power-law envelope are fitted; the smaller finite
    one is returned.
    """
    a, b = abs(t_prev), abs(t_last)
    if b == 0.0:
        return 0.0
    if a == 0.0 or b >= a:
        return b * n_last
    ratio = b / a
    geometric = b * ratio / (1.0 - ratio)
    power = math.log(a / b) / math.log(n_last / n_prev)
    if power > 1.0:
        return min(geometric, b * n_last / (power - 1.0))
    return geometric


def sum_series(
    term: Callable[[np.ndarray], np.ndarray],
    ctrl: SeriesControl = DEFAULT_CONTROL,
    *,
    min_terms: int = 3,
    first_chunk: int = 64,
) -> SeriesResult:
    """Sum ``term(n)`` over ``n = 1, 2, ...``.

    ``term`` receives a float array of consecutive indices and returns the
    summands. Stops at the first ``n >= min_terms`` whose summand is below both
    ``ctrl.abs_tol`` and ``ctrl.rel_tol`` times the running total.
    """
    total = 0.0
    start = 1
    chunk = first_chunk
    t_before = 0.0
    while start <= ctrl.max_terms:
        stop = min(start + chunk, ctrl.max_terms + 1)
        n = np.arange(start, stop, dtype=float)
        t = np.asarray(term(n), dtype=float)
        running = total + np.cumsum(t)
        mag = np.abs(t)
        ok = (mag < ctrl.abs_tol) & (mag < ctrl.rel_tol * np.abs(running)) & (n >= min_terms)
        # identically zero summands (underflow or exact cancellation) also end the sum
        ok |= (mag == 0.0) & (n >= min_terms)
        if ok.any():
            k = int(np.argmax(ok))
            t_prev = t[k - 1] if k > 0 else t_before
            tail = _tail_estimate(t_prev, t[k], max(n[k] - 1.0, 1.0), n[k])
            return SeriesResult(
                float(running[k]),
                int(n[k]),
                float(tail),
                underflowed=bool(t[k] == 0.0),
            )
        total = float(running[-1])
        t_before = float(t[-1])
        start = stop
        chunk *= 2
    raise BudgetError(
        f"series not converged after {ctrl.max_terms} terms "
        f"(last term {t_before:.3e}, partial sum {total:.6e})"
    )


def aspect_ratio(step1: float, step2: float, cap: int = 64) -> tuple[int, int]:
    """Integer box proportions matching a lattice with spacings ``step1, step2``.

    A summand depending on ``(n1*step1, n2*step2)`` is best truncated on a box
    that is roughly square in those physical coordinates.
    """
    if step1 >= step2:
        return 1, int(min(max(round(step1 / step2), 1), cap))
    return int(min(max(round(step2 / step1), 1), cap)), 1


def _rect_sum(term, lo1, hi1, lo2, hi2, block=2_000_000):
    """Sum term(n1, n2) over lo1 <= n1 <= hi1, lo2 <= n2 <= hi2 in row blocks."""
    if hi1 < lo1 or hi2 < lo2:
        return 0.0
    n2 = np.arange(lo2, hi2 + 1, dtype=float)[None, :]
    rows = max(1, block // n2.size)
    acc = 0.0
    for a in range(lo1, hi1 + 1, rows):
        n1 = np.arange(a, min(a + rows, hi1 + 1), dtype=float)[:, None]
        acc += float(np.sum(term(n1, n2)))
    return acc


def sum_lattice(
    term: Callable[[np.ndarray, np.ndarray], np.ndarray],
    ctrl: SeriesControl = DEFAULT_CONTROL,
    *,
    aspect: tuple[int, int] = (1, 1),
    first_size: int = 4,
) -> SeriesResult:
    """Sum ``term(n1, n2)`` over ``n1, n2 >= 1`` by growing rectangular shells.

    The box ``[1, k1*M] x [1, k2*M]`` is doubled in ``M``. The remainder is
    estimated by treating the shell sums as a geometric sequence, which is
    exact in ratio for an ``M**-p`` power law and conservative for
    exponential decay.
    """
    k1, k2 = aspect
    size = first_size
    total = _rect_sum(term, 1, k1 * size, 1, k2 * size)
    shells: list[float] = [total]
    while True:
        new = 2 * size
        points = k1 * k2 * new * new
        if k1 * new > ctrl.max_terms or k2 * new > ctrl.max_terms or points > ctrl.max_points:
            raise BudgetError(
                f"lattice sum not converged within budget (box {k1 * size}x{k2 * size}, "
                f"last shell {shells[-1]:.3e}, partial sum {total:.6e})"
            )
        shell = _rect_sum(term, k1 * size + 1, k1 * new, 1, k2 * new) + _rect_sum(
            term, 1, k1 * size, k2 * size + 1, k2 * new
        )
        total += shell
        shells.append(shell)
        size = new
        if shell == 0.0:
            return SeriesResult(total, points, 0.0, underflowed=True, method="lattice")
        if len(shells) < 3:
            continue
        ratio = abs(shells[-1]) / abs(shells[-2]) if shells[-2] != 0.0 else math.inf
        if ratio >= 1.0:
            continue
        tail = abs(shell) * ratio / (1.0 - ratio)
        if tail < ctrl.abs_tol and tail < ctrl.rel_tol * abs(total):
            return SeriesResult(total, points, float(tail), method="lattice")


def richardson_table(partial_sums, first_exponent: float, ratio: float = 2.0):
    """Neville table eliminating remainders ``c_j * M**-(first_exponent + j)``.

    ``partial_sums[k]`` is the truncated sum at size ``M0 * ratio**k``. Row
    ``j`` of the returned table has ``j`` remainder orders removed.
    """
    table = [list(map(float, partial_sums))]
    for j in range(len(partial_sums) - 1):
        factor = ratio ** (first_exponent + j) - 1.0
        prev = table[-1]
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / factor for i in range(len(prev) - 1)])
    return table


def richardson_box(
    box_sum: Callable[[int], float],
    first_exponent: float,
    ctrl: SeriesControl = DEFAULT_CONTROL,
    *,
    points: Callable[[int], int],
    first_size: int = 8,
    min_levels: int = 6,
) -> SeriesResult:
    """Extrapolate the box partial sums ``box_sum(M)`` to ``M -> inf``.

    Requires the remainder to admit an expansion in ``M**-(p + j)``,
    ``j = 0, 1, ...`` with ``p = first_exponent > 0``. That holds for lattice
    sums of functions that are smooth away from the origin and decay like a
    power, the case for every algebraic sum in this package. The error estimate
    is the larger distance from the final entry to its two table neighbours.
    """
    if first_exponent <= 0:
        raise DomainError("remainder exponent must be positive for extrapolation")
    sums: list[float] = []
    size = first_size
    best = math.nan
    error = math.inf
    while True:
        if size > ctrl.max_terms or points(size) > ctrl.max_points:
            raise BudgetError(
                f"extrapolated lattice sum not converged within budget "
                f"(estimate {best:.6e}, error {error:.3e})"
            )
        sums.append(box_sum(size))
        if len(sums) >= 2:
            table = richardson_table(sums, first_exponent)
            best = table[-1][-1]
            # one order fewer at the finest level, and the same order one level coarser
            error = max(abs(best - table[-2][-1]), abs(best - table[-2][-2]))
            error += 4 * np.finfo(float).eps * abs(best)
            if len(sums) >= min_levels and ctrl.accepts(error, best):
                return SeriesResult(float(best), points(size), float(error), method="richardson")
        size *= 2

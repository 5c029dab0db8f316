"""Brute-force reference implementations for the test suite.

Nothing in this module calls into :mod:`specfun`, :mod:`epstein`,
:mod:`pressure` or :mod:`asymptotics`. Bessel functions come from quadrature
of ``K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt``, lattice sums use fixed
truncations with integral-comparison tails, and zeta values use
Euler-Maclaurin summation.

Run ``python -m casimir_torus.oracle PATH`` to regenerate the JSON fixture
file the tests read.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate

from .epstein import ZetaArgs
from .errors import ConvergenceError, DomainError

PI = math.pi
FIXTURE_SCHEMA_VERSION = 1

# Catalan's constant, for the closed forms of f(1), s(1) and the (1, 1) mixed term
CATALAN = 0.915965594177219015054603514932384110774


@dataclass(frozen=True)
class OracleBudget:
    """Fixed truncations; ``max_index=None`` means 10_000 in 1-D and 3_000 per axis in 2-D."""

    max_index: int | None = None
    quadrature_points: int = 2000

    def __post_init__(self):
        if self.max_index is not None and self.max_index < 100:
            raise DomainError("max_index must be at least 100")
        if self.quadrature_points < 100:
            raise DomainError("quadrature_points must be at least 100")

    def index_for(self, d: int) -> int:
        if self.max_index is not None:
            return self.max_index
        return 10_000 if d == 1 else 3_000


class OracleSum(NamedTuple):
    value: float
    tail_bound: float


# ---------------------------------------------------------------- Bessel K


def _cutoff(nu: float, z: float) -> float:
    # smallest T with z (cosh T - 1) - nu T >= 60, so the dropped tail is < e^-60 of K
    lo, hi = 0.0, 1.0
    while z * (math.cosh(hi) - 1) - nu * hi < 60:
        hi *= 2
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if z * (math.cosh(mid) - 1) - nu * mid < 60:
            lo = mid
        else:
            hi = mid
    return hi


def _gauss_legendre(fn, a, b, points, per_panel=50):
    panels = max(1, points // per_panel)
    x, w = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    t = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(weights, fn(t)))


def bessel_k_quadrature_with_error(nu: float, z: float, budget: OracleBudget = OracleBudget()):
    """``(K_nu(z), error)`` where the error is the change on halving the point count."""
    if not 0.05 <= z <= 50:
        raise DomainError(f"quadrature oracle reliable for 0.05 <= z <= 50, got {z}")
    if nu < 0:
        raise DomainError("order must be nonnegative")
    T = _cutoff(nu, z)
    # factor e^{-z} out so the integrand is O(1) near t = 0
    fn = lambda t: np.exp(-z * (np.cosh(t) - 1)) * np.cosh(nu * t)
    fine = _gauss_legendre(fn, 0.0, T, budget.quadrature_points)
    coarse = _gauss_legendre(fn, 0.0, T, budget.quadrature_points // 2)
    scale = math.exp(-z)
    return fine * scale, abs(fine - coarse) * scale


def bessel_k_quadrature(nu: float, z: float, budget: OracleBudget = OracleBudget()) -> float:
    return bessel_k_quadrature_with_error(nu, z, budget)[0]


def _bessel_k_table(nu: float, zs: np.ndarray, budget: OracleBudget) -> np.ndarray:
    # zs must already be restricted to the reliable window
    uniq, inverse = np.unique(np.round(zs, 12), return_inverse=True)
    vals = np.array([bessel_k_quadrature(nu, float(z), budget) for z in uniq])
    return vals[inverse]


# ---------------------------------------------------------------- zeta values


def _bernoulli_numbers(count: int) -> list[Fraction]:
    b = [Fraction(0)] * (count + 1)
    b[0] = Fraction(1)
    for m in range(1, count + 1):
        b[m] = -sum(math.comb(m + 1, k) * b[k] for k in range(m)) / (m + 1)
    return b


def zeta_euler_maclaurin(s: float, n: int = 20, corrections: int = 12) -> OracleSum:
    """Riemann zeta by direct summation to ``n`` plus an Euler-Maclaurin tail."""
    if not s > 1:
        raise DomainError("s must exceed 1")
    head = math.fsum(k**-s for k in range(1, n))
    tail = n ** (1 - s) / (s - 1) + 0.5 * n**-s
    bern = _bernoulli_numbers(2 * corrections + 2)
    rising = s  # s (s+1) ... (s + 2k - 2)
    last = 0.0
    for k in range(1, corrections + 1):
        term = float(bern[2 * k]) / math.factorial(2 * k) * rising * n ** (-s - 2 * k + 1)
        tail += term
        last = term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return OracleSum(head + tail, abs(last))


# ---------------------------------------------------------------- lattice sums


def lattice_sum_direct(args: ZetaArgs, budget: OracleBudget = OracleBudget()) -> OracleSum:
    """Epstein-Hurwitz defining sum on a fixed symmetric box plus an integral tail.

    The remainder outside the box is bracketed by the integrals of the summand
    outside the boxes of half-width ``N`` and ``N + 1`` (1-D: rigorous for a
    monotone summand), and the midpoint of the bracket is added to the value.
    The reported uncertainty is the bracket half-width plus a floating-point
    rounding allowance for the partial sum.
    """
    d, nu, c2 = args.d, args.nu, args.c_squared
    if nu <= d / 2:
        raise ConvergenceError("defining sum diverges for nu <= d/2")
    if c2 <= 0:
        raise DomainError("c_squared must be positive")
    if d > 2:
        raise DomainError("oracle covers d = 1 and d = 2")
    N = budget.index_for(d)
    n = np.arange(-N, N + 1, dtype=float)
    eps = np.finfo(float).eps
    if d == 1:
        (a,) = args.coefficients
        partial = math.fsum((a * n * n + c2) ** -nu)
        # each power carries a few ulps; fsum itself is exact to one rounding
        rounding = 4 * eps * partial
        h = lambda x: (a * x * x + c2) ** -nu
        upper = 2 * _half_line(h, N)
        lower = 2 * _half_line(h, N + 1)
    else:
        a1, a2 = args.coefficients
        partial = 0.0
        for lo in range(0, n.size, 500):
            block = n[lo : lo + 500, None]
            partial += float(np.sum((a1 * block**2 + a2 * n[None, :] ** 2 + c2) ** -nu))
        # pairwise summation error grows like log2 of the term count
        rounding = (4 + math.log2(n.size**2)) * eps * partial
        upper = _outside_box_integral(a1, a2, c2, nu, N)
        lower = _outside_box_integral(a1, a2, c2, nu, N + 1)
    return OracleSum(partial + 0.5 * (upper + lower), 0.5 * abs(upper - lower) + rounding)


def _half_line(fn, b, epsrel=1e-13):
    """Integral of ``fn`` over ``(b, inf)``, mapped onto ``(0, 1]`` by ``x = b / t``."""
    return integrate.quad(lambda t: fn(b / t) * b / (t * t), 0.0, 1.0, epsabs=0, epsrel=epsrel, limit=200)[0]


def _outside_box_integral(a1, a2, c2, nu, b):
    """Integral of (a1 x^2 + a2 y^2 + c2)^-nu over the plane minus [-b, b]^2."""
    # integrating y over the whole line leaves a one-dimensional x integral
    line = math.sqrt(PI) * math.gamma(nu - 0.5) / (math.gamma(nu) * math.sqrt(a2))
    strip_x = _half_line(lambda x: line * (a1 * x * x + c2) ** (0.5 - nu), b, 1e-12)
    # remaining region: |x| < b, |y| > b
    strip_y = integrate.quad(
        lambda x: _half_line(lambda y: (a1 * x * x + a2 * y * y + c2) ** -nu, b, 1e-12),
        0,
        b,
        epsabs=0,
        epsrel=1e-11,
        limit=200,
    )[0]
    return 2 * strip_x + 4 * strip_y


def _quadrant_sum(summand, N1, N2, rows=400):
    n2 = np.arange(1, N2 + 1, dtype=float)[None, :]
    acc = []
    for lo in range(1, N1 + 1, rows):
        n1 = np.arange(lo, min(lo + rows, N1 + 1), dtype=float)[:, None]
        acc.append(float(np.sum(summand(n1, n2))))
    return math.fsum(acc)


def _quadrant_tail(summand, N):
    """Integral of summand over {x, y > 1/2} outside [1/2, N + 1/2]^2."""
    b = N + 0.5
    f = lambda x, y: float(summand(np.float64(x), np.float64(y)))
    kw = dict(epsabs=0, epsrel=1e-11, limit=200)
    r1 = _half_line(lambda x: integrate.quad(lambda y: f(x, y), 0.5, b, **kw)[0], b, 1e-11)
    r1 += _half_line(lambda x: _half_line(lambda y: f(x, y), b, 1e-11), b, 1e-11)
    r2 = integrate.quad(lambda x: _half_line(lambda y: f(x, y), b, 1e-11), 0.5, b, **kw)[0]
    return r1 + r2


def quadrant_sum_with_tail(summand: Callable, N: int = 3000) -> OracleSum:
    """``sum_{n1,n2=1..N} summand`` plus a midpoint integral for the remainder.

    The uncertainty is the difference between midpoint tails at ``N`` and
    ``N + 1``, which is of the order of the outermost shell.
    """
    partial = _quadrant_sum(summand, N, N)
    tail = _quadrant_tail(summand, N)
    shifted = _quadrant_tail(summand, N + 1)
    return OracleSum(partial + tail, abs(tail - shifted) + 1e-15 * abs(partial))


def f_bruteforce(xi: float, N: int = 10_000) -> OracleSum:
    res = quadrant_sum_with_tail(lambda x, y: 1.0 / ((xi * x) ** 2 + y * y) ** 2, N)
    k = -2 * xi**4 / PI**2
    return OracleSum(k * res.value, abs(k) * res.tail_bound)


def s_bruteforce(xi: float, N: int = 10_000) -> OracleSum:
    res = quadrant_sum_with_tail(lambda x, y: y * y / ((xi * x) ** 2 + y * y) ** 3, N)
    k = 8 * xi**3 / PI**2
    return OracleSum(k * res.value, abs(k) * res.tail_bound)


def mixed_massless_bruteforce(L: float, beta: float, N: int = 10_000) -> OracleSum:
    res = quadrant_sum_with_tail(
        lambda x, y: (3 * (x * L) ** 2 - (y * beta) ** 2) / ((x * L) ** 2 + (y * beta) ** 2) ** 3, N
    )
    k = -2 / PI**2
    return OracleSum(k * res.value, abs(k) * res.tail_bound)


# ---------------------------------------------------------------- D = 4 pressures

_ZMAX = 50.0


def _dropped_bound(zs: np.ndarray, weights: np.ndarray) -> float:
    # K_nu(z) <= 2 sqrt(pi/2z) e^-z for z >= 50 and the small orders used here
    zs = np.asarray(zs)
    return float(np.sum(np.abs(weights) * 2 * np.sqrt(PI / (2 * zs)) * np.exp(-zs)))


def vacuum_d4_bruteforce(m: float, L: float, terms: int = 200, budget: OracleBudget = OracleBudget()) -> OracleSum:
    """``-m^2/(2 pi^2 L^2) [3 sum K_2(mnL)/n^2 + mL sum K_1(mnL)/n]``, fixed truncation."""
    n = np.arange(1, terms + 1, dtype=float)
    z = m * n * L
    keep = z <= _ZMAX
    if np.any(z[keep] < 0.05):
        raise DomainError("m L too small for the quadrature oracle")
    k2 = _bessel_k_table(2, z[keep], budget)
    k1 = _bessel_k_table(1, z[keep], budget)
    s = math.fsum(3 * k2 / n[keep] ** 2 + m * L * k1 / n[keep])
    pref = m**2 / (2 * PI**2 * L**2)
    dropped = _dropped_bound(z[~keep], 3 / n[~keep] ** 2 + m * L / n[~keep]) if np.any(~keep) else 0.0
    return OracleSum(-pref * s, pref * dropped)


def thermal_d4_bruteforce(m: float, beta: float, terms: int = 200, budget: OracleBudget = OracleBudget()) -> OracleSum:
    """``m^2/(2 pi^2 beta^2) sum K_2(m beta n)/n^2``, fixed truncation."""
    n = np.arange(1, terms + 1, dtype=float)
    z = m * beta * n
    keep = z <= _ZMAX
    if np.any(z[keep] < 0.05):
        raise DomainError("m beta too small for the quadrature oracle")
    k2 = _bessel_k_table(2, z[keep], budget)
    pref = m**2 / (2 * PI**2 * beta**2)
    dropped = _dropped_bound(z[~keep], 1 / n[~keep] ** 2) if np.any(~keep) else 0.0
    return OracleSum(pref * math.fsum(k2 / n[keep] ** 2), pref * dropped)


def mixed_d4_bruteforce(m: float, L: float, beta: float, n_max: int = 300, budget: OracleBudget = OracleBudget()) -> OracleSum:
    """Double Bessel sum of the D = 4 mixed term over ``n1, n2 <= n_max``."""
    n1, n2 = np.meshgrid(np.arange(1, n_max + 1.0), np.arange(1, n_max + 1.0), indexing="ij")
    x2 = (n1 * L) ** 2
    y2 = (n2 * beta) ** 2
    r2 = x2 + y2
    z = m * np.sqrt(r2)
    keep = z <= _ZMAX
    if np.any(z[keep] < 0.05):
        raise DomainError("mass too small for the quadrature oracle")
    k2 = _bessel_k_table(2, z[keep], budget)
    k1 = _bessel_k_table(1, z[keep], budget)
    w2 = (3 * x2 - y2) / r2**2
    w1 = m * x2 / r2**1.5
    s = math.fsum(w2[keep] * k2 + w1[keep] * k1)
    pref = (m / PI) ** 2
    dropped = _dropped_bound(z[~keep], np.abs(w2[~keep]) + w1[~keep])
    # truncation at n_max lies beyond z = 50 as well whenever m * min(L, beta) * n_max > 50
    return OracleSum(-pref * s, pref * dropped)


# ---------------------------------------------------------------- derivatives


def finite_difference(fn: Callable[[float], float], x: float, h: float) -> float:
    """Five-point central difference, truncation error O(h^4)."""
    if not 0 < h < x / 10:
        raise DomainError(f"step must satisfy 0 < h < x/10, got h={h}, x={x}")
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)


# ---------------------------------------------------------------- fixtures


def _entry(value, uncertainty, provenance):
    return {"value": float(value), "uncertainty": float(uncertainty), "provenance": provenance}


def build_fixtures() -> dict:
    """Compute every frozen reference value the tests consume."""
    values = {}
    k, err = bessel_k_quadrature_with_error(1.0, 1.0)
    values["bessel_k_1_at_1"] = _entry(k, err, "Gauss-Legendre quadrature of the cosh integral")
    k, err = bessel_k_quadrature_with_error(2.0, 1.0)
    values["bessel_k_2_at_1"] = _entry(k, err, "Gauss-Legendre quadrature of the cosh integral")

    z3 = zeta_euler_maclaurin(3.0)
    values["zeta_3"] = _entry(z3.value, z3.tail_bound, "direct sum to 20 plus Euler-Maclaurin tail")

    closed = PI / 2 / math.tanh(PI) + PI**2 / 2 / math.sinh(PI) ** 2
    values["epstein_d1_nu2_a1_c1_closed"] = _entry(
        closed, 0.0, "sum (n^2+1)^-2 = (pi/2) coth(pi) + (pi^2/2) csch^2(pi)"
    )
    lat = lattice_sum_direct(ZetaArgs(2, [1.0], 1.0), OracleBudget(max_index=1_000_000))
    values["epstein_d1_nu2_a1_c1"] = _entry(lat.value, lat.tail_bound, "direct sum |n| <= 1e6 plus integral tail")
    lat = lattice_sum_direct(ZetaArgs(3, [1.0, 1.0], 1.0), OracleBudget(max_index=10_000))
    values["epstein_d2_nu3_a11_c1"] = _entry(lat.value, lat.tail_bound, "direct sum |n_j| <= 1e4 plus integral tail")
    lat = lattice_sum_direct(ZetaArgs(2.5, [1.0, 4.0], 1.0))
    values["epstein_d2_nu2.5_a14_c1"] = _entry(lat.value, lat.tail_bound, "direct sum |n_j| <= 3000 plus integral tail")

    v = vacuum_d4_bruteforce(1.0, 1.0)
    values["vacuum_d4_m1_L1"] = _entry(v.value, v.tail_bound, "200-term D=4 vacuum series, quadrature Bessel K")
    v = thermal_d4_bruteforce(1.0, 1.0)
    values["thermal_d4_m1_beta1"] = _entry(v.value, v.tail_bound, "200-term D=4 thermal series, quadrature Bessel K")
    v = mixed_d4_bruteforce(1.0, 1.0, 1.0)
    values["mixed_d4_m1_L1_beta1"] = _entry(v.value, v.tail_bound, "D=4 mixed double series n <= 300, quadrature Bessel K")

    # normalized pressure at mL = 1 (L = 1): massive series over -pi^2/30
    values["figure1_ratio_mL1"] = _entry(
        values["vacuum_d4_m1_L1"]["value"] / (-(PI**2) / 30), 1e-12, "200-term vacuum series over -pi^2/30"
    )

    g = CATALAN
    values["f_1_closed"] = _entry(PI**2 / 45 - g / 3, 0.0, "f(1) = pi^2/45 - G/3, G = Catalan")
    values["s_1_closed"] = _entry(2 * g / 3 - 2 * PI**2 / 45, 0.0, "s(1) = -2 f(1) by symmetry")
    f1 = f_bruteforce(1.0)
    values["f_1"] = _entry(f1.value, f1.tail_bound, "double sum n <= 1e4 plus integral tail")
    s1 = s_bruteforce(1.0)
    values["s_1"] = _entry(s1.value, s1.tail_bound, "double sum n <= 1e4 plus integral tail")
    mm = mixed_massless_bruteforce(1.0, 1.0)
    values["mixed_massless_L1_beta1"] = _entry(mm.value, mm.tail_bound, "double sum n <= 1e4 plus integral tail")
    return {"schema_version": FIXTURE_SCHEMA_VERSION, "values": values}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    path = argv[0] if argv else "tests/fixtures/reference_values.json"
    with open(path, "w") as fh:
        json.dump(build_fixtures(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Special-function kernels: modified Bessel K, gamma and Riemann zeta.

Half-integer Bessel orders, the ones odd dimensions produce, go through the
terminating closed form

    K_{n+1/2}(z) = sqrt(pi / 2z) e^{-z} sum_{k=0}^{n} (n+k)! / (k! (n-k)! (2z)^k),

which is exact up to rounding. Every other order and the gamma/zeta kernels
are delegated to scipy.special.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import DomainError, OrderError, PoleError

__all__ = [
    "bessel_k",
    "bessel_k_underflows",
    "gamma",
    "riemann_zeta",
    "UNDERFLOW_Z",
]

# K_nu(z) ~ sqrt(pi/2z) e^{-z} drops below the smallest subnormal past here
UNDERFLOW_Z = 745.0


def _is_half_integer(nu: float) -> bool:
    return (2.0 * nu) % 2.0 == 1.0


def _half_integer_k(nu: float, z: np.ndarray) -> np.ndarray:
    n = int(nu - 0.5)
    poly = np.zeros_like(z)
    inv = 1.0 / (2.0 * z)
    for k in range(n, -1, -1):
        coeff = math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k))
        poly = poly * inv + coeff
    with np.errstate(under="ignore"):
        return np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) * poly


def bessel_k(nu, z):
    """Modified Bessel function of the second kind ``K_nu(z)``.

    Parameters
    ----------
    nu : float
        Order, ``nu >= 0``.
    z : float or array_like
        Argument, ``z > 0``.

    Returns
    -------
    float or ndarray
        ``K_nu(z)``. Arguments beyond :data:`UNDERFLOW_Z` give 0.0, see
        :func:`bessel_k_underflows`.

    Raises
    ------
    OrderError
        If ``nu < 0``.
    DomainError
        If any ``z <= 0``.
    """
    nu = float(nu)
    if not nu >= 0.0:
        raise OrderError(f"Bessel order must be nonnegative, got {nu}")
    zs = np.asarray(z, dtype=float)
    if np.any(~(zs > 0.0)):
        raise DomainError("Bessel K requires z > 0")
    if _is_half_integer(nu) and nu < 40:
        out = _half_integer_k(nu, zs)
    else:
        out = special.kv(nu, zs)
    if np.ndim(out) == 0:
        return float(out)
    return out


def bessel_k_underflows(z) -> bool:
    """True if any argument is in the regime where ``K`` is flushed to zero."""
    return bool(np.any(np.asarray(z) >= UNDERFLOW_Z))


def gamma(x: float) -> float:
    """Gamma function of a real argument that is not a nonpositive integer."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    return math.gamma(x)


def riemann_zeta(s: float) -> float:
    """Riemann zeta function for real ``s > 1``."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"riemann_zeta requires s > 1, got {s}")
    return float(special.zeta(s, 1.0))

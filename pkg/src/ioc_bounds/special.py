"""Legendre polynomials on t >= 1, the Bessel function I0, and a quadrature
route to the binomial index of coincidence."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError, TruncationError

__all__ = [
    "LegendrePair",
    "bessel_i0",
    "chebyshev_nodes",
    "ioc_binomial_quadrature",
    "legendre_log_derivative",
    "legendre_pair",
]

_BESSEL_MAX_ARG = 700.0
_QUADRATURE_MAX_N = 10_000


@dataclass(frozen=True)
class LegendrePair:
    p: float
    dp: float


def legendre_pair(n: int, t: float) -> LegendrePair:
    """P_n(t) and P_n'(t) for t >= 1.

    Both come from forward recurrences,
    ``(k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}`` and
    ``P'_{k+1} = P'_{k-1} + (2k+1) P_k``, which only add positive quantities
    when t >= 1.  The derivative therefore needs no special case near t = 1.
    """
    if n < 0 or int(n) != n:
        raise ParameterError(f"degree must be a non-negative integer, got {n}")
    n = int(n)
    t = float(t)
    if not t >= 1.0:
        raise DomainError(f"Legendre evaluation needs t >= 1, got {t}")
    if n == 0:
        return LegendrePair(1.0, 0.0)
    p_prev, p = 1.0, t
    dp_prev, dp = 0.0, 1.0
    for k in range(1, n):
        p_next = ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
        dp_next = dp_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
    return LegendrePair(p, dp)


def legendre_log_derivative(n: int, t: float) -> float:
    """P_n'(t) / P_n(t) for t >= 1, safe for t large enough that P_n overflows.

    Same recurrences as :func:`legendre_pair`; they are linear and homogeneous
    in (P_{k-1}, P_k, P'_{k-1}, P'_k), so all four are rescaled together.
    """
    if n < 1 or int(n) != n:
        raise ParameterError(f"degree must be a positive integer, got {n}")
    t = float(t)
    if not t >= 1.0:
        raise DomainError(f"Legendre evaluation needs t >= 1, got {t}")
    p_prev, p, dp_prev, dp = 1.0, t, 0.0, 1.0
    for k in range(1, int(n)):
        p_next = ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
        dp_next = dp_prev + (2 * k + 1) * p
        p_prev, p, dp_prev, dp = p, p_next, dp, dp_next
        if p > 1e150:
            p_prev, p, dp_prev, dp = p_prev * 1e-150, p * 1e-150, dp_prev * 1e-150, dp * 1e-150
    return dp / p


def bessel_i0(t: float) -> float:
    """Modified Bessel function I0 by its power series with a geometric tail bound."""
    t = float(t)
    if not t >= 0:
        raise DomainError(f"bessel_i0 needs t >= 0, got {t}")
    if t > _BESSEL_MAX_ARG:
        raise OverflowError(f"bessel_i0 argument {t} exceeds {_BESSEL_MAX_ARG}")
    if t == 0.0:
        return 1.0
    q = 0.25 * t * t
    term = total = 1.0
    k = 0
    while True:
        ratio = q / ((k + 1) * (k + 1))
        # ratios decrease in k, so the remainder is below term*ratio/(1 - ratio)
        if ratio < 1.0 and term * ratio <= 1e-17 * total * (1.0 - ratio):
            return total
        term *= ratio
        total += term
        k += 1
        if k > 100_000:
            raise TruncationError(f"bessel_i0 series did not converge at t={t}")


@lru_cache(maxsize=512)
def chebyshev_nodes(m: int) -> np.ndarray:
    """Gauss-Chebyshev (first kind) nodes on [-1, 1]; all weights equal pi/m."""
    i = np.arange(1, m + 1)
    nodes = np.cos((2 * i - 1) * np.pi / (2 * m))
    nodes.setflags(write=False)
    return nodes


def ioc_binomial_quadrature(n: int, t: float) -> float:
    """S_{n,-1}(t) from its arcsine-weighted integral representation.

    With x = (1 + u)/2 the integral becomes an average of the degree-n
    polynomial ``(x + (1 - x)(1 - 2t)^2)^n`` over n + 1 Chebyshev nodes, which
    is exact up to rounding.
    """
    if n < 1 or int(n) != n or n > _QUADRATURE_MAX_N:
        raise ParameterError(f"n must be an integer in [1, {_QUADRATURE_MAX_N}], got {n}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    n = int(n)
    s = (1.0 - 2.0 * t) ** 2
    x = 0.5 * (1.0 + chebyshev_nodes(n + 1))
    values = (s + x * (1.0 - s)) ** n
    return math.fsum(values) / (n + 1)

"""Exact verification of two binomial-sum identities tied to S_{n,-1}.

All arithmetic is on Python integers and :class:`fractions.Fraction`, so
equality is decided with no tolerance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import ParameterError

__all__ = [
    "ExactRational",
    "IdentityResult",
    "central_binomial",
    "identity_one",
    "identity_one_float",
    "identity_two",
    "identity_two_abs_sum",
    "identity_two_float",
]

ExactRational = Fraction

MAX_N = 500


class IdentityResult(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


@lru_cache(maxsize=None)
def _pascal_row(n: int) -> tuple[int, ...]:
    return tuple(math.comb(n, k) for k in range(n + 1))


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return _pascal_row(n)[k]


def central_binomial(m: int) -> int:
    """C(2m, m)."""
    return binom(2 * m, m)


def _check(n: int, k: int, name: str) -> None:
    if int(n) != n or int(k) != k or not 0 <= k <= n <= MAX_N:
        raise ParameterError(f"need integers 0 <= {name} <= n <= {MAX_N}, got n={n}, {name}={k}")


def identity_one(n: int, k: int) -> IdentityResult:
    """sum_{j=k}^{n} C(j,k) C(2j,j) C(2n-2j,n-j) = 4^(n-k) C(n,k) C(2k,k)."""
    _check(n, k, "k")
    lhs = sum(binom(j, k) * central_binomial(j) * central_binomial(n - j) for j in range(k, n + 1))
    rhs = 4 ** (n - k) * binom(n, k) * central_binomial(k)
    return IdentityResult(Fraction(lhs), Fraction(rhs), lhs == rhs)


def identity_two(n: int, j: int) -> IdentityResult:
    """sum_{i=0}^{n-j} (-1/4)^i C(n-j,i) C(2i+2j,i+j) = 4^(j-n) C(2j,j) C(2n-2j,n-j) / C(n,j)."""
    _check(n, j, "j")
    m = n - j
    lhs = sum(
        (Fraction(-1, 4) ** i) * binom(m, i) * central_binomial(i + j)
        for i in range(m + 1)
    )
    rhs = Fraction(central_binomial(j) * central_binomial(m), 4**m * binom(n, j))
    return IdentityResult(lhs, rhs, lhs == rhs)


def identity_one_float(n: int, k: int) -> float:
    """Left side of :func:`identity_one` summed in binary64."""
    return math.fsum(
        math.comb(j, k) * float(math.comb(2 * j, j)) * float(math.comb(2 * n - 2 * j, n - j))
        for j in range(k, n + 1)
    )


def _identity_two_terms(n: int, j: int) -> list[float]:
    m = n - j
    return [(-0.25) ** i * math.comb(m, i) * float(math.comb(2 * i + 2 * j, i + j)) for i in range(m + 1)]


def identity_two_float(n: int, j: int) -> float:
    """Left side of :func:`identity_two` summed in binary64."""
    return math.fsum(_identity_two_terms(n, j))


def identity_two_abs_sum(n: int, j: int) -> float:
    """Sum of |terms| of :func:`identity_two`; its ratio to the left side is the
    condition number of the alternating binary64 sum."""
    return math.fsum(abs(v) for v in _identity_two_terms(n, j))

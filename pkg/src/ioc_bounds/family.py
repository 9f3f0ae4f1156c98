"""The probability family p_{n,k}^{[c]}, its index of coincidence and entropies.

For ``c < 0`` the family is the binomial law with ``l = -n/c`` trials and
success probability ``-c*x``; ``c = 0`` is Poisson with mean ``n*x``; ``c > 0``
is negative binomial with shape ``n/c`` and odds ``c*x``.  Every weight is
evaluated in log-space.  Infinite series (``c >= 0``) are truncated only once
a geometric tail bound certifies the remainder.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ParameterError, TruncationError

__all__ = [
    "EvalConfig",
    "EntropyValues",
    "FamilyParams",
    "IocTriple",
    "entropies",
    "heun_residual",
    "ioc",
    "ioc_triple",
    "log_pmf",
    "pmf_normalization",
    "pmf_term",
    "reduce_negative_c",
]

_EXACT_BINOM_MAX = 10_000
_INTEGRAL_TOL = 1e-9


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (n, c) of the family; ``l`` is the trial count when c < 0.

    ``l`` may be omitted for ``c < 0``; it is then inferred from ``n = -c*l``.
    """

    c: float
    n: float
    l: int | None = None

    def __post_init__(self) -> None:
        c, n = float(self.c), float(self.n)
        if not (math.isfinite(c) and math.isfinite(n)):
            raise ParameterError(f"non-finite parameters c={self.c!r}, n={self.n!r}")
        if n <= 0:
            raise ParameterError(f"n must be positive, got {n}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "n", n)
        if c >= 0:
            if self.l is not None:
                raise ParameterError("l is only defined for c < 0")
            if not n > c:
                raise ParameterError(f"need n > c for c >= 0, got n={n}, c={c}")
            return
        l_real = -n / c
        l_int = round(l_real)
        if l_int < 1 or abs(l_real - l_int) > _INTEGRAL_TOL * max(1.0, l_real):
            raise ParameterError(f"for c < 0 need n = -c*l with integer l >= 1; -n/c = {l_real}")
        if self.l is not None and int(self.l) != l_int:
            raise ParameterError(f"l={self.l} inconsistent with n={n}, c={c}")
        object.__setattr__(self, "l", int(l_int))

    @classmethod
    def binomial(cls, l: int) -> FamilyParams:
        return cls(c=-1.0, n=float(l), l=int(l))

    @property
    def domain_end(self) -> float:
        """Right end of the domain I_c (``inf`` for c >= 0)."""
        return -1.0 / self.c if self.c < 0 else math.inf

    def check_point(self, x: float) -> float:
        """Return ``x`` if it lies in I_c, snapping rounding overshoot at the right end."""
        x = float(x)
        if not x >= 0 or math.isnan(x):
            raise DomainError(f"x={x} outside I_c for c={self.c}")
        end = self.domain_end
        if x > end:
            if x - end <= 8 * math.ulp(end):
                return end
            raise DomainError(f"x={x} outside I_c=[0, {end}] for c={self.c}")
        if math.isinf(x):
            raise DomainError("x must be finite")
        return x


@dataclass(frozen=True)
class EvalConfig:
    rel_tol: float = 1e-13
    max_terms: int = 10**7
    deriv_step: float = 1e-5

    def __post_init__(self) -> None:
        if not 0 < self.rel_tol < 1:
            raise ParameterError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.max_terms < 64:
            raise ParameterError(f"max_terms must be >= 64, got {self.max_terms}")
        if not self.deriv_step > 0:
            raise ParameterError(f"deriv_step must be positive, got {self.deriv_step}")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class IocTriple:
    """S, S' and S'' at one point."""

    s: float
    s1: float
    s2: float


@dataclass(frozen=True)
class EntropyValues:
    renyi2: float
    tsallis2: float
    shannon: float


@lru_cache(maxsize=256)
def _log_binom_row(l: int) -> tuple[float, ...]:
    if l <= _EXACT_BINOM_MAX:
        return tuple(math.log(math.comb(l, k)) for k in range(l + 1))
    lg = math.lgamma(l + 1)
    return tuple(lg - math.lgamma(k + 1) - math.lgamma(l - k + 1) for k in range(l + 1))


def log_pmf(params: FamilyParams, k: int, x: float) -> float:
    """log p_{n,k}^{[c]}(x); ``-inf`` where the weight vanishes."""
    if k < 0:
        raise ParameterError(f"k must be non-negative, got {k}")
    x = params.check_point(x)
    c, n = params.c, params.n
    if x == 0.0:
        return 0.0 if k == 0 else -math.inf
    if c < 0:
        l = params.l
        if k > l:
            return -math.inf
        if x == params.domain_end:
            return 0.0 if k == l else -math.inf
        return _log_binom_row(l)[k] + k * math.log(-c * x) + (l - k) * math.log1p(c * x)
    if c == 0:
        nx = n * x
        return k * math.log(nx) - nx - math.lgamma(k + 1)
    a = n / c
    return (
        math.lgamma(a + k) - math.lgamma(a) - math.lgamma(k + 1)
        + k * math.log(c * x) - (a + k) * math.log1p(c * x)
    )


def pmf_term(params: FamilyParams, k: int, x: float) -> float:
    """The probability weight p_{n,k}^{[c]}(x)."""
    return math.exp(log_pmf(params, k, x))


def _step_ratio(params: FamilyParams, x: float, k: int) -> float:
    """p_{k+1}/p_k for c >= 0, x > 0; non-increasing in k because n > c."""
    c, n = params.c, params.n
    if c == 0:
        return n * x / (k + 1)
    return (n / c + k) / (k + 1) * (c * x / (1.0 + c * x))


class _TailCertifier:
    """Stop rule for a positive series summed in ascending order.

    The remainder after index k is bounded by ``term * r / (1 - r)`` once the
    successive-term ratio ``r`` is below one and has not increased for three
    consecutive indices.
    """

    __slots__ = ("rel_tol", "prev", "run")

    def __init__(self, rel_tol: float) -> None:
        self.rel_tol = rel_tol
        self.prev = math.inf
        self.run = 0

    def done(self, term: float, ratio: float, total: float) -> bool:
        if ratio < 1.0 and ratio <= self.prev:
            self.run += 1
        else:
            self.run = 0
        self.prev = ratio
        return self.run >= 3 and term * ratio <= self.rel_tol * total * (1.0 - ratio)


def _series_ioc(params: FamilyParams, x: float, cfg: EvalConfig) -> tuple[float, int]:
    """Certified sum of p_k^2 for c >= 0, x > 0; returns (sum, last index)."""
    tail = _TailCertifier(cfg.rel_tol)
    total = 0.0
    for k in range(cfg.max_terms):
        term = math.exp(2.0 * log_pmf(params, k, x))
        total += term
        r = _step_ratio(params, x, k) ** 2
        if tail.done(term, r, total):
            return total, k
    raise TruncationError(
        f"index of coincidence not certified within {cfg.max_terms} terms (c={params.c}, n={params.n}, x={x})"
    )


def pmf_normalization(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Truncated total mass sum_k p_k(x)."""
    x = params.check_point(x)
    if x == 0.0:
        return 1.0
    if params.c < 0:
        return math.fsum(pmf_term(params, k, x) for k in range(params.l + 1))
    tail = _TailCertifier(cfg.rel_tol)
    total = 0.0
    for k in range(cfg.max_terms):
        term = pmf_term(params, k, x)
        total += term
        if tail.done(term, _step_ratio(params, x, k), total):
            return total
    raise TruncationError(f"normalization not certified within {cfg.max_terms} terms")


def ioc(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Index of coincidence S_{n,c}(x) = sum_k p_k(x)^2 by direct summation."""
    x = params.check_point(x)
    if x == 0.0:
        return 1.0
    if params.c < 0:
        if x == params.domain_end:
            return 1.0
        total = 0.0
        for k in range(params.l + 1):
            total += math.exp(2.0 * log_pmf(params, k, x))
        return total
    return _series_ioc(params, x, cfg)[0]


_TAYLOR_X = 1e-50


def _origin_triple(n: float, c: float, x: float = 0.0) -> IocTriple:
    # S = 1 - 2n x + (3n^2 + nc) x^2 + O(x^3); below _TAYLOR_X the O(x^2)
    # remainder is far under binary64 resolution while X^2 would underflow.
    q = 3.0 * n * n + n * c
    return IocTriple(1.0 - 2.0 * n * x, -2.0 * n + 2.0 * q * x, 2.0 * q)


def _binomial_triple(l: int, u: float) -> IocTriple:
    """(S, S', S'') of the c = -1 family with l trials at 0 <= u <= 1/2."""
    if u < _TAYLOR_X:
        return _origin_triple(float(l), -1.0, u)
    X = u * (1.0 - u)
    Xp = 1.0 - 2.0 * u
    lu = l * u
    shift = l * u * u
    params = FamilyParams.binomial(l)
    s = a1 = a2 = 0.0
    for k in range(l + 1):
        w = math.exp(2.0 * log_pmf(params, k, u))
        d = k - lu
        s += w
        a1 += w * d
        a2 += w * (2.0 * d * d - k * Xp - shift)
    return IocTriple(s, 2.0 * a1 / X, 2.0 * a2 / (X * X))


def ioc_triple(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> IocTriple:
    """S, S', S'' by termwise differentiation of the squared weights.

    Uses p_k' = p_k (k - n x) / X with X = x (1 + c x).  For c < 0 the
    evaluation is mapped to the binomial family on [0, 1/2] by reduction and
    reflection, which keeps X away from zero near the right end of I_c.
    """
    x = params.check_point(x)
    c, n = params.c, params.n
    if x == 0.0:
        return _origin_triple(n, c)
    if c < 0:
        u = -c * x
        sign = 1.0
        if u > 0.5:
            u = 1.0 - u
            sign = -1.0
        g = _binomial_triple(params.l, u)
        return IocTriple(g.s, -c * sign * g.s1, c * c * g.s2)

    if x < _TAYLOR_X:
        return _origin_triple(n, c, x)
    X = x * (1.0 + c * x)
    Xp = 1.0 + 2.0 * c * x
    nx = n * x
    shift = n * c * x * x
    tail = _TailCertifier(cfg.rel_tol)
    s = a1 = a2 = 0.0
    for k in range(cfg.max_terms):
        w = math.exp(2.0 * log_pmf(params, k, x))
        d = k - nx
        s += w
        a1 += w * d
        a2 += w * (2.0 * d * d - k * Xp + shift)
        # Certify on p_k^2 weighted by the largest polynomial factor in use.
        weight = 1.0 + 2.0 * d * d + k * Xp + abs(shift)
        d_next = d + 1.0
        weight_next = 1.0 + 2.0 * d_next * d_next + (k + 1) * Xp + abs(shift)
        ratio = _step_ratio(params, x, k) ** 2 * (weight_next / weight)
        if tail.done(w * weight, ratio, s):
            return IocTriple(s, 2.0 * a1 / X, 2.0 * a2 / (X * X))
    raise TruncationError(f"derivative series not certified within {cfg.max_terms} terms")


def heun_residual(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Left side of the Heun equation for S, divided by its largest term (floor 1)."""
    x = params.check_point(x)
    tri = ioc_triple(params, x, cfg)
    c, n = params.c, params.n
    X = x * (1.0 + c * x)
    Xp = 1.0 + 2.0 * c * x
    t1 = X * Xp * tri.s2
    t2 = (4.0 * (n + c) * X + 1.0) * tri.s1
    t3 = 2.0 * n * Xp * tri.s
    return (t1 + t2 + t3) / max(abs(t1), abs(t2), abs(t3), 1.0)


def _shannon(params: FamilyParams, x: float, cfg: EvalConfig) -> float:
    if x == 0.0:
        return 0.0
    if params.c < 0:
        last = params.l
    else:
        # the entropy tail has no known convergence rate; 2K
        # extra terms beyond the coincidence cutoff K is a heuristic margin.
        last = 3 * _series_ioc(params, x, cfg)[1]
    h = 0.0
    for k in range(last + 1):
        lp = log_pmf(params, k, x)
        if lp > -math.inf:
            h -= math.exp(lp) * lp
    return h


def entropies(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> EntropyValues:
    """Order-2 Renyi and Tsallis entropies and the Shannon entropy at ``x``."""
    x = params.check_point(x)
    s = ioc(params, x, cfg)
    return EntropyValues(renyi2=0.0 - math.log(s), tsallis2=1.0 - s, shannon=_shannon(params, x, cfg))


def reduce_negative_c(params: FamilyParams, t: float) -> tuple[FamilyParams, float]:
    """Map (n, c < 0) at t to the binomial family (l, -1) at -c*t."""
    if params.c >= 0:
        raise ParameterError(f"reduction needs c < 0, got c={params.c}")
    t = params.check_point(t)
    return FamilyParams.binomial(params.l), min(-params.c * t, 1.0)

"""Closed-form bounds on the index of coincidence, its log-derivative and on
Legendre polynomials, plus their conversion to entropy bounds.

Powers with parameter-dependent exponents are evaluated as exp(exponent *
log(base)) so that exponents such as rho/c stay finite for small c.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, ParameterError, SingularityError
from .family import DEFAULT_CONFIG, EvalConfig, FamilyParams, ioc, ioc_triple, reduce_negative_c
from .special import legendre_log_derivative

__all__ = [
    "BoundEntry",
    "BoundInputs",
    "BoundReport",
    "UPPER_BOUND_IDS",
    "asymptotic_exponent",
    "binom_ioc_bounds",
    "binom_ioc_integral_lower",
    "binom_ratio_bounds",
    "bound_basic",
    "bound_bessel",
    "bound_inputs",
    "bound_logconvex",
    "bound_poisson",
    "bound_report",
    "entropy_lower_bounds",
    "legendre_ioc_link",
    "legendre_ratio_bounds",
    "legendre_value_bounds",
    "ratio_bound",
    "ratio_bound_basic_binom",
]

ZERO_C = 1e-8
MARGIN_TOL = 1e-10

UPPER_BOUND_IDS = ("basic", "tight", "loose", "poisson", "upper_44")


@dataclass(frozen=True)
class BoundInputs:
    X: float
    Xp: float
    T: float
    rho: float
    R: float


def bound_inputs(params: FamilyParams, t: float) -> BoundInputs:
    t = params.check_point(t)
    c, n = params.c, params.n
    X = t * (1.0 + c * t)
    rho = math.hypot(n, c)
    R = math.sqrt(16.0 * rho * rho * X * X + 8.0 * c * X + 1.0)
    return BoundInputs(X=X, Xp=1.0 + 2.0 * c * t, T=X, rho=rho, R=R)


def _is_poisson(c: float) -> bool:
    return abs(c) < ZERO_C


def bound_basic(params: FamilyParams, t: float) -> float:
    """Upper bound (4(n+c)X + 1)^(-n/(2(n+c))) implied by convexity alone."""
    t = params.check_point(t)
    c, n = params.c, params.n
    X = t * (1.0 + c * t)
    m = n + c
    if abs(m) <= 1e-12 * n:
        # single-trial binomial: the power tends to exp(-2 n X)
        return math.exp(-2.0 * n * X)
    return math.exp(-n / (2.0 * m) * math.log1p(4.0 * m * X))


def ratio_bound(params: FamilyParams, x: float) -> float:
    """Upper bound on S'/S from log-convexity combined with the Heun equation.

    The quadratic-root expression is evaluated in the rationalised form
    ``-4 n X' / (sqrt(1 + 8cX + 16 rho^2 X^2) + 1 + 4(n+c)X)``, which is free
    of the 0/0 at X = 0 (value -2n) and X' = 0 (value 0).  For c < 0 the bound
    is only valid on the left half of I_c, where X' >= 0.
    """
    x = params.check_point(x)
    c, n = params.c, params.n
    X = x * (1.0 + c * x)
    Xp = 1.0 + 2.0 * c * x
    if Xp < 0:
        raise DomainError(f"ratio bound holds only for x <= -1/(2c); got x={x}, c={c}")
    rho2 = n * n + c * c
    root = math.sqrt(1.0 + 8.0 * c * X + 16.0 * rho2 * X * X)
    return -4.0 * n * Xp / (root + 1.0 + 4.0 * (n + c) * X)


def bound_logconvex(params: FamilyParams, t: float) -> tuple[float, float | None]:
    """Log-convexity bound on S: (tight, loose); ``loose`` is None for c < 0."""
    c, n = params.c, params.n
    if _is_poisson(c):
        raise ParameterError("c = 0 uses bound_poisson")
    b = bound_inputs(params, t)
    T, rho, R = b.T, b.rho, b.R
    log_tight2 = (
        math.log(2.0)
        - math.log(1.0 + 4.0 * c * T + R)
        - (n / c) * math.log(R + 4.0 * n * T)
        + (rho / c) * math.log((rho * R + 4.0 * rho * rho * T + c) / (rho + c))
    )
    tight = math.exp(0.5 * log_tight2)
    if c < 0:
        return tight, None
    log_loose2 = (
        -math.log1p(4.0 * c * T)
        - (n / c) * math.log1p(4.0 * (n + c) * T)
        + (rho / c) * math.log1p(8.0 * rho * T)
    )
    return tight, math.exp(0.5 * log_loose2)


def asymptotic_exponent(params: FamilyParams) -> tuple[float, float]:
    """Decay exponents at infinity: (log-convexity exponent, convexity exponent)."""
    c, n = params.c, params.n
    if not c > 0:
        raise DomainError(f"asymptotic exponent needs c > 0, got {c}")
    rho = math.hypot(n, c)
    return (rho - n - c) / c, -n / (n + c)


def _sqrt1p_sq_minus(a: float) -> tuple[float, float]:
    """Return (r, r - 1 - a) with r = sqrt(1 + a^2), avoiding cancellation."""
    r = math.hypot(1.0, a)
    if a > 1.0:
        return r, 1.0 / (r + a) - 1.0
    return r, a * a / (r + 1.0) - a


def bound_poisson(n: float, t: float) -> float:
    """Log-convexity bound on S_{n,0}(t); depends on n*t only."""
    if not t >= 0:
        raise DomainError(f"t must be non-negative, got {t}")
    r, expo = _sqrt1p_sq_minus(4.0 * n * t)
    return math.exp(0.5 * (math.log(2.0) + expo - math.log1p(r)))


def bound_bessel(t: float) -> float:
    """Upper bound on I0(t): sqrt(2 exp(sqrt(1+4t^2) - 1) / (sqrt(1+4t^2) + 1))."""
    if not t >= 0:
        raise DomainError(f"t must be non-negative, got {t}")
    r, _ = _sqrt1p_sq_minus(2.0 * t)
    return math.exp(0.5 * (math.log(2.0) + (2.0 * t) ** 2 / (r + 1.0) - math.log1p(r)))


def _check_degree(n: int) -> int:
    if n < 1 or int(n) != n:
        raise ParameterError(f"n must be a positive integer, got {n}")
    return int(n)


def _check_half(x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 0.5:
        raise DomainError(f"x must lie in [0, 1/2], got {x}")
    return x


def _check_unit(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return t


def binom_ratio_bounds(n: int, x: float) -> tuple[float, float]:
    """Two-sided bound on S'_{n,-1}/S_{n,-1} on [0, 1/2] from the Legendre ratio bounds."""
    n = _check_degree(n)
    x = _check_half(x)
    X = x * (1.0 - x)
    Xp = 1.0 - 2.0 * x
    lower = -2.0 * n * Xp / (1.0 + (n - 3) * X)
    upper = -2.0 * n * (n + 1) * Xp / (n + 1 + (4 * n * n - 2 * n - 4) * X)
    return lower, upper


def ratio_bound_basic_binom(n: int, x: float) -> float:
    """The convexity-only bound -2nX'/(1 + 4(n-1)X) on S'_{n,-1}/S_{n,-1}."""
    n = _check_degree(n)
    x = _check_half(x)
    X = x * (1.0 - x)
    return -2.0 * n * (1.0 - 2.0 * x) / (1.0 + 4.0 * (n - 1) * X)


def binom_ioc_bounds(n: int, t: float) -> tuple[float, float]:
    """Lower and upper bound on S_{n,-1}(t), valid on all of [0, 1]."""
    n = _check_degree(n)
    t = _check_unit(t)
    T = t * (1.0 - t)
    if n == 3:
        lower = math.exp(-6.0 * T)
    else:
        lower = math.exp(-2.0 * n / (n - 3) * math.log1p((n - 3) * T))
    e = 2 * n * n - n - 2
    upper = math.exp(-n * (n + 1) / e * math.log1p((4 * n * n - 2 * n - 4) * T / (n + 1)))
    return lower, upper


def binom_ioc_integral_lower(n: int, t: float) -> float:
    """Lower bound (1 - (1-4T)^(n+1)) / (2 pi (n+1) T) on S_{n,-1}(t); 2/pi at T = 0."""
    n = _check_degree(n)
    t = _check_unit(t)
    T = t * (1.0 - t)
    if T == 0.0:
        return 2.0 / math.pi
    if 4.0 * T >= 1.0:
        numer = 1.0
    else:
        numer = -math.expm1((n + 1) * math.log1p(-4.0 * T))
    return numer / (2.0 * math.pi * (n + 1) * T)


def _sqrt_tsq_minus_one(t: float) -> float:
    if not t >= 1.0:
        raise DomainError(f"t must be >= 1, got {t}")
    return math.sqrt((t - 1.0) * (t + 1.0))


def legendre_ratio_bounds(n: int, t: float) -> tuple[float, float, float]:
    """Bounds on P_n'/P_n for t >= 1: (lower, sharper upper, weaker upper)."""
    n = _check_degree(n)
    s = _sqrt_tsq_minus_one(float(t))
    lower = n * (n + 1) / (2.0 * t + (n - 1) * s)
    upper_sharp = n * n * (2 * n + 1) / ((n + 1) * t + (2 * n * n - 1) * s)
    upper_weak = 2.0 * n * n / (t + (2 * n - 1) * s)
    return lower, upper_sharp, upper_weak


def legendre_value_bounds(n: int, t: float) -> tuple[float, float]:
    """Upper bounds on P_n(t), t >= 1, n >= 2: (strong, weak)."""
    n = _check_degree(n)
    if n < 2:
        raise ParameterError("Legendre value bounds need n >= 2")
    s = _sqrt_tsq_minus_one(float(t))
    log_ts = math.log(t + s)
    e = 2 * n * n - n - 2
    strong = math.exp(
        n * (2 * n * n - 1) / e * log_ts
        - n * (n + 1) / e * math.log(t + (2 * n * n - 1) * s / (n + 1))
    )
    weak = math.exp(
        n * (2 * n - 1) / (2.0 * (n - 1)) * log_ts
        - n / (2.0 * (n - 1)) * math.log(t + (2 * n - 1) * s)
    )
    return strong, weak


def legendre_ioc_link(n: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Relative residual of the identity tying P_n'/P_n at t = (1-2X)/X' to S'_{n,-1}/S_{n,-1} at x."""
    n = _check_degree(n)
    x = float(x)
    if x == 0.0 or x == 0.5:
        raise SingularityError(f"the link is singular at x={x}")
    if not 0.0 < x < 0.5:
        raise DomainError(f"x must lie in (0, 1/2), got {x}")
    X = x * (1.0 - x)
    Xp = 1.0 - 2.0 * x
    t = max((1.0 - 2.0 * X) / Xp, 1.0)
    tri = ioc_triple(FamilyParams.binomial(n), x, cfg)
    lhs = legendre_log_derivative(n, t)
    rhs = n * Xp / (2.0 * X) + (1.0 - 4.0 * X) / (4.0 * X) * (tri.s1 / tri.s)
    return (lhs - rhs) / abs(lhs)


def entropy_lower_bounds(params: FamilyParams, t: float, bound_id: str) -> tuple[float, float]:
    """(Renyi, Tsallis) lower bounds obtained from an upper bound on S."""
    b = upper_bound_value(params, t, bound_id)
    return -math.log(b), 1.0 - b


def upper_bound_value(params: FamilyParams, t: float, bound_id: str) -> float:
    """Evaluate one named upper bound on S_{n,c}(t)."""
    if bound_id == "basic":
        return bound_basic(params, t)
    if bound_id in ("tight", "loose"):
        tight, loose = bound_logconvex(params, t)
        if bound_id == "tight":
            return tight
        if loose is None:
            raise ParameterError("the loose log-convexity bound is stated for c > 0 only")
        return loose
    if bound_id == "poisson":
        if not _is_poisson(params.c):
            raise ParameterError("poisson bound needs c = 0")
        return bound_poisson(params.n, params.check_point(t))
    if bound_id == "upper_44":
        binom, u = reduce_negative_c(params, t)
        return binom_ioc_bounds(binom.l, u)[1]
    raise ParameterError(f"unknown bound id {bound_id!r}; expected one of {UPPER_BOUND_IDS}")


@dataclass(frozen=True)
class BoundEntry:
    """One bound at one point; ``margin`` is non-negative when the bound holds."""

    bound_id: str
    quantity: str
    direction: str
    bound: float
    observed: float
    margin: float
    ok: bool


def _entry(bound_id: str, quantity: str, direction: str, bound: float, observed: float, tol: float) -> BoundEntry:
    margin = bound - observed if direction == "upper" else observed - bound
    return BoundEntry(bound_id, quantity, direction, bound, observed, margin, margin >= -tol * max(1.0, abs(bound)))


@dataclass(frozen=True)
class BoundReport:
    x: float
    value: float
    bounds: list[BoundEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(b.ok for b in self.bounds)


def bound_report(params: FamilyParams, x: float, cfg: EvalConfig = DEFAULT_CONFIG, tol: float = MARGIN_TOL) -> BoundReport:
    """Every bound applicable at (params, x), checked against the series values."""
    x = params.check_point(x)
    c, n = params.c, params.n
    s = ioc(params, x, cfg)
    tri = ioc_triple(params, x, cfg)
    lr = tri.s1 / tri.s
    out = [_entry("basic", "S", "upper", bound_basic(params, x), s, tol)]
    if _is_poisson(c):
        out.append(_entry("poisson", "S", "upper", bound_poisson(n, x), s, tol))
    else:
        tight, loose = bound_logconvex(params, x)
        out.append(_entry("tight", "S", "upper", tight, s, tol))
        if loose is not None:
            out.append(_entry("loose", "S", "upper", loose, s, tol))
    if c >= 0 or 1.0 + 2.0 * c * x >= 0:
        out.append(_entry("ratio_logconvex", "S1/S", "upper", ratio_bound(params, x), lr, tol))
    if c < 0:
        binom, u = reduce_negative_c(params, x)
        l = binom.l
        lower44, upper44 = binom_ioc_bounds(l, u)
        out.append(_entry("lower_44", "S", "lower", lower44, s, tol))
        out.append(_entry("upper_44", "S", "upper", upper44, s, tol))
        out.append(_entry("lower_int", "S", "lower", binom_ioc_integral_lower(l, u), s, tol))
        if u <= 0.5:
            # the ratio bounds concern S_{l,-1}, whose log-derivative is (S'/S)/(-c)
            blr = lr / -c
            lo, hi = binom_ratio_bounds(l, u)
            out.append(_entry("binom_ratio_lower", "S1/S", "lower", lo, blr, tol))
            out.append(_entry("binom_ratio_upper", "S1/S", "upper", hi, blr, tol))
            out.append(_entry("binom_ratio_basic", "S1/S", "upper", ratio_bound_basic_binom(l, u), blr, tol))
    return BoundReport(x=x, value=s, bounds=out)

"""Index of coincidence of the binomial / Poisson / negative-binomial family,
its order-2 entropies, and machine-checked closed-form bounds."""

from .bounds import (
    BoundReport,
    asymptotic_exponent,
    binom_ioc_bounds,
    binom_ioc_integral_lower,
    binom_ratio_bounds,
    bound_basic,
    bound_bessel,
    bound_logconvex,
    bound_poisson,
    bound_report,
    entropy_lower_bounds,
    legendre_ioc_link,
    legendre_ratio_bounds,
    legendre_value_bounds,
    ratio_bound,
    ratio_bound_basic_binom,
)
from .errors import DomainError, IocError, ParameterError, SingularityError, TruncationError
from .family import (
    EntropyValues,
    EvalConfig,
    FamilyParams,
    IocTriple,
    entropies,
    heun_residual,
    ioc,
    ioc_triple,
    pmf_normalization,
    pmf_term,
    reduce_negative_c,
)
from .identities import identity_one, identity_two
from .special import LegendrePair, bessel_i0, ioc_binomial_quadrature, legendre_pair

__version__ = "0.1.0"

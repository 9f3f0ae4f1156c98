"""Exception types raised by the numeric core."""


class IocError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(IocError, ValueError):
    """Family parameters (n, c, l) violate their constraints."""


class DomainError(IocError, ValueError):
    """Evaluation point lies outside the admissible interval."""


class SingularityError(IocError, ZeroDivisionError):
    """Formula evaluated at a removable or true singularity."""


class TruncationError(IocError, ArithmeticError):
    """Series could not be certified within ``max_terms``."""

from .._exceptions import BeurlabError


class NumericsError(BeurlabError):
    """Base class for exceptions related to beurlab.numerics."""


class SingularIntegrandError(NumericsError):
    """Raised when a reciprocal integrand vanishes or changes sign on the interval."""


class NonconvergenceError(NumericsError):
    """Raised when adaptive refinement stalls before reaching the requested tolerance."""


class IntegrationError(NumericsError):
    """Raised when a quadrature cannot be set up, e.g. an unbounded or empty support."""


class RangeError(NumericsError):
    """Raised when bracketing a monotone inverse fails within the configured span."""

from .._exceptions import BeurlabError


class AlgebraError(BeurlabError):
    """Base class for exceptions related to beurlab.algebra."""


class PopaOriginError(AlgebraError, ZeroDivisionError):
    """Raised when an operation needs η_ρ(u) ≠ 0 but u sits at the Popa origin."""


class UndefinedForRhoZeroError(AlgebraError):
    """Raised when an operation only exists for ρ > 0 (reflection, η⁻¹)."""


class MissingRoleError(AlgebraError, KeyError):
    """Raised when a functional-equation check lacks one of its required functions."""


class UnsupportedPairError(AlgebraError):
    """Raised when (h, g) is outside the two closed-form Goldie–Beurling families."""

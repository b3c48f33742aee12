from .._exceptions import BeurlabError


class AnalysisError(BeurlabError):
    """Base class for exceptions related to beurlab.analysis."""


class UnknownFamilyError(AnalysisError, KeyError):
    """Raised when a function family name is not in the registry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class FitError(AnalysisError):
    """Raised when a closed-form fit cannot be carried out."""


class DegenerateFitError(FitError):
    """Raised when the fit's design is rank-deficient or has too few samples."""


class HypothesisFailureError(AnalysisError):
    """Raised when an experiment's hypothesis is not met, so the experiment is aborted."""


class WienerCheckFailureError(HypothesisFailureError):
    """Raised when the kernel's Fourier transform comes close to zero on the ξ-grid."""


class ResonanceError(AnalysisError, ZeroDivisionError):
    """Raised when the recurrence is resonant, i.e. b·r = 1."""


class NonSEWarning(UserWarning):
    """Issued when φ's η-index estimates disagree, a sign that φ is not self-equivarying."""

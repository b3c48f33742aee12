class BeurlabError(Exception):
    """Base class for exceptions related to beurlab."""


class DomainError(BeurlabError, ValueError):
    """Raised when a function is evaluated outside its domain."""


class DivideByZeroError(BeurlabError, ZeroDivisionError):
    """Raised when a normalizing function vanishes at the evaluation point."""


class BadParamError(BeurlabError, ValueError):
    """Raised when a parameter set violates the preconditions of a construction."""


class ReportIoError(BeurlabError, OSError):
    """Raised when a report cannot be written to its destination."""

from ._version import __title__, __version__
from ._exceptions import BadParamError, BeurlabError, DivideByZeroError, DomainError, ReportIoError
from .realfunc import RealFunc
from .report import ExperimentReport, body_digest, emit_report, verdict_from_checks, worst_verdict


__all__ = [
    "__title__",
    "__version__",
    "BadParamError",
    "BeurlabError",
    "DivideByZeroError",
    "DomainError",
    "ExperimentReport",
    "RealFunc",
    "ReportIoError",
    "body_digest",
    "emit_report",
    "verdict_from_checks",
    "worst_verdict",
]

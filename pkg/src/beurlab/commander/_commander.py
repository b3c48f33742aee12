from __future__ import annotations
import inspect
import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal, TypedDict

from .._exceptions import BeurlabError
from .._null_logger import get_null_logger
from ..report import ExperimentReport
from ._exceptions import ConfigError, ExperimentAlreadyRegisteredError, UnknownExperimentError
from .config import ExperimentConfig


CallbackType = Literal["at_experiment_start", "at_exception", "at_experiment_end"]
ExperimentFunction = Callable[[ExperimentConfig, logging.Logger], ExperimentReport]


@dataclass(frozen=True)
class Experiment:
    name: str
    function: ExperimentFunction
    description: str


_EXPERIMENTS: dict[str, Experiment] = {}


def experiment(name: str, description: str = ""):
    """Register an experiment under `name`.

    The description shown by `beurlab --list` defaults to the first line of
    the function's docstring.
    """
    def decorator(func: ExperimentFunction) -> ExperimentFunction:
        if name in _EXPERIMENTS:
            raise ExperimentAlreadyRegisteredError(f"An experiment named {name!r} is already registered.")
        summary = description or (inspect.getdoc(func) or "").split("\n", 1)[0]
        _EXPERIMENTS[name] = Experiment(name, func, summary)
        func.__experiment__ = name  # type: ignore[attr-defined]
        return func
    return decorator


def registered_experiments() -> list[Experiment]:
    return [_EXPERIMENTS[name] for name in sorted(_EXPERIMENTS)]


def get_experiment(name: str) -> Experiment:
    try:
        return _EXPERIMENTS[name]
    except KeyError:
        known = ", ".join(sorted(_EXPERIMENTS))
        raise UnknownExperimentError(f"Unknown experiment {name!r}; known: {known}.") from None


class Params(TypedDict):
    args: tuple
    kwargs: dict


class RequiredCallbackDict(TypedDict):
    function: Callable


class CallbackDict(RequiredCallbackDict, total=False):
    """The dict of functions_info in Callback.

    Keys:
        function (Callable): Required.
        params (Params): NotRequired.
        inject_context (bool): NotRequired. Pass the RunContext as `context=`.
    """
    params: Params
    inject_context: bool


@dataclass
class RunContext:
    """What a callback can see of the running experiment."""
    config: ExperimentConfig
    report: ExperimentReport | None = None
    exception: BaseException | None = None


class Callback:
    """Callback object.

    The commander executes it at the matching points of an experiment run.
    The supported callback types:
        at_experiment_start: Executes before the experiment runs.
        at_exception: Executes when the experiment is aborted by an exception.
        at_experiment_end: Executes after the report is complete.

    Attributes:
        at_experiment_start (list[CallbackDict]): Dict information of callback functions.
        at_exception (list[CallbackDict]): Dict information of callback functions.
        at_experiment_end (list[CallbackDict]): Dict information of callback functions.
    """
    def __init__(
        self,
        at_experiment_start: list[CallbackDict] | None = None,
        at_exception: list[CallbackDict] | None = None,
        at_experiment_end: list[CallbackDict] | None = None,
    ):
        """
        Args:
            at_experiment_start: [
                {
                    "function": callback_function,
                    "params": {
                        "args": tuple, position arguments of callback function
                        "kwargs": dict, key-values arguments of callback function
                    },
                    "inject_context": bool, whether to pass the RunContext as `context`
                },
            ]
            at_exception: Same layout, executed when the experiment aborts.
            at_experiment_end: Same layout, executed once the report is complete.
        """
        self.at_experiment_start = at_experiment_start or []
        self.at_exception = at_exception or []
        self.at_experiment_end = at_experiment_end or []

    def update(self, callbacks: Callback | None | list[Callback | None]) -> Callback:
        fields = ["at_experiment_start", "at_exception", "at_experiment_end"]
        if callbacks is None:
            return self
        elif isinstance(callbacks, Callback):
            callbacks_list = [callbacks]
        else:
            callbacks_list = [callback for callback in callbacks if callback is not None]
        for name in fields:
            for callback in callbacks_list:
                getattr(self, name).extend(getattr(callback, name))
        return self

    @classmethod
    def merge(cls, callbacks: list[Callback | None]) -> Callback:
        return Callback().update(callbacks)


def aborted_report(cfg: ExperimentConfig, exc: BaseException) -> ExperimentReport:
    report = ExperimentReport(cfg.command, ["error", "message"], verdict="aborted")
    report.add_row(type(exc).__name__, str(exc))
    return report


@dataclass
class ExperimentCommander:
    """Runs registered experiments and fires callbacks around them.

    A BeurlabError raised by an experiment becomes an `aborted` report with an
    error row; ConfigError is re-raised so the caller can exit with a usage
    error.
    """
    callback: Callback | None = None
    logger: logging.Logger = field(default_factory=get_null_logger)

    def run(self, cfg: ExperimentConfig) -> ExperimentReport:
        entry = get_experiment(cfg.command)
        context = RunContext(cfg)
        self._handle_callback("at_experiment_start", context)
        self.logger.info("experiment %s started (seed %d)", cfg.command, cfg.seed)
        start = time.perf_counter()
        try:
            report = entry.function(cfg, self.logger)
        except ConfigError:
            raise
        except BeurlabError as exc:
            self.logger.warning("experiment %s aborted: %s: %s", cfg.command, type(exc).__name__, exc)
            context.exception = exc
            self._handle_callback("at_exception", context)
            report = aborted_report(cfg, exc)
        report.config = {**cfg.echo(), **report.config}
        report.seed = cfg.seed
        report.runtime_ms = (time.perf_counter() - start) * 1000.0
        context.report = report
        self.logger.info("experiment %s finished: %s", cfg.command, report.verdict)
        self._handle_callback("at_experiment_end", context)
        return report

    def _handle_callback(self, which: CallbackType, context: RunContext) -> None:
        if self.callback is None:
            return
        for callback_job in getattr(self.callback, which):
            function = callback_job["function"]
            params = callback_job.get("params") or {}
            args = params.get("args", ())
            kwargs = dict(params.get("kwargs", {}))
            if callback_job.get("inject_context", False):
                kwargs["context"] = context
            function(*args, **kwargs)


def run_experiment(
    cfg: ExperimentConfig,
    callback: Callback | None = None,
    logger: logging.Logger | None = None,
) -> ExperimentReport:
    """Dispatch `cfg.command` to its registered experiment.

    Raises:
        ConfigError: Unknown experiment or invalid configuration.
    """
    return ExperimentCommander(callback, logger or get_null_logger()).run(cfg)

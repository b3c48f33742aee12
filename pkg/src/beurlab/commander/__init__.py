from ._commander import (
    Callback,
    CallbackDict,
    Experiment,
    ExperimentCommander,
    RunContext,
    experiment,
    get_experiment,
    registered_experiments,
    run_experiment,
)
from ._exceptions import (
    CommanderException,
    ConfigError,
    ExperimentAlreadyRegisteredError,
    UnknownExperimentError,
)
from .config import ExperimentConfig, build_config, load_config, parse_config_text, parse_overrides
from . import experiments
from .cli import main


__all__ = [
    "Callback",
    "CallbackDict",
    "CommanderException",
    "ConfigError",
    "Experiment",
    "ExperimentAlreadyRegisteredError",
    "ExperimentCommander",
    "ExperimentConfig",
    "RunContext",
    "UnknownExperimentError",
    "build_config",
    "experiment",
    "experiments",
    "get_experiment",
    "load_config",
    "main",
    "parse_config_text",
    "parse_overrides",
    "registered_experiments",
    "run_experiment",
]

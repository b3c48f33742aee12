from .._exceptions import BeurlabError


class CommanderException(BeurlabError):
    """Base class for exceptions related to the experiment commander."""


class ConfigError(CommanderException, ValueError):
    """Raised when an experiment configuration is malformed or incomplete."""


class UnknownExperimentError(ConfigError, KeyError):
    """Raised when no experiment is registered under the requested name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ExperimentAlreadyRegisteredError(CommanderException):
    """Raised when two experiments are registered under the same name."""

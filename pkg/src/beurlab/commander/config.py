"""
Experiment configuration: a flat `key = value` file plus `--key value` overrides.

Values stay strings until an experiment asks for them with a typed getter, so
every lookup reports the offending key when a value does not parse.
Function-valued keys accept a registry form `family(p1, p2)` (e.g.
`linear(1)`, `log()`) or an expression in `x` over the numeric keys.
"""


from __future__ import annotations
import math
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .._exceptions import BeurlabError
from ..analysis import FlowFunc, GridSpec, families, make_function
from ..exprlang import compile_expression
from ..realfunc import RealFunc
from ._exceptions import ConfigError


ReportFormat = Literal["csv", "json"]

FAMILY_PATTERN = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*\((.*)\)\s*$")
RESERVED_KEYS = frozenset({"command", "seed", "out", "format"})


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse `key = value` lines; `#` starts a comment, blank lines are skipped.

    Raises:
        ConfigError: A line without `=`, an empty key or a duplicate key.
    """
    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw.strip()!r}.")
        if key in values:
            raise ConfigError(f"{source}:{number}: duplicate key {key!r}.")
        values[key] = value.strip()
    return values


def load_config(path: str | Path) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {str(path)!r}: {exc}") from exc
    return parse_config_text(text, str(path))


def parse_overrides(tokens: Sequence[str]) -> dict[str, str]:
    """Turn `--key value` pairs into a mapping; dashes in keys become underscores."""
    overrides: dict[str, str] = {}
    items = list(tokens)
    if len(items) % 2:
        raise ConfigError(f"Override {items[-1]!r} has no value.")
    for flag, value in zip(items[0::2], items[1::2]):
        if not flag.startswith("--") or len(flag) == 2:
            raise ConfigError(f"Expected '--key value', got {flag!r}.")
        overrides[flag[2:].replace("-", "_")] = value
    return overrides


@dataclass
class ExperimentConfig:
    """A resolved configuration.

    Attributes:
        command (str): Experiment name.
        values (dict[str, str]): Raw values after overrides.
        seed (int): PRNG seed, echoed in the report.
        output (Path | None): Report destination, None for stdout.
        fmt (ReportFormat): Report format.
    """
    command: str
    values: dict[str, str] = field(default_factory=dict)
    seed: int = 0
    output: Path | None = None
    fmt: ReportFormat = "json"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"Unknown format {self.fmt!r}; use csv or json.")

    def __contains__(self, key: str) -> bool:
        return key in self.values

    def echo(self) -> dict[str, str]:
        return dict(sorted(self.values.items()))

    def get_str(self, key: str, default: str | None = None) -> str:
        if key in self.values:
            return self.values[key]
        if default is None:
            raise ConfigError(f"Missing required key {key!r}.")
        return default

    def get_float(self, key: str, default: float | None = None) -> float:
        if key not in self.values:
            if default is None:
                raise ConfigError(f"Missing required key {key!r}.")
            return default
        try:
            value = float(self.values[key])
        except ValueError:
            raise ConfigError(f"Key {key!r} must be a number, got {self.values[key]!r}.") from None
        if math.isnan(value):
            raise ConfigError(f"Key {key!r} is NaN.")
        return value

    def get_int(self, key: str, default: int | None = None) -> int:
        if key not in self.values:
            if default is None:
                raise ConfigError(f"Missing required key {key!r}.")
            return default
        try:
            return int(self.values[key])
        except ValueError:
            raise ConfigError(f"Key {key!r} must be an integer, got {self.values[key]!r}.") from None

    def get_tol(self, key: str, default: float) -> float:
        value = self.get_float(key, default)
        if not value > 0:
            raise ConfigError(f"Tolerance {key!r} must be positive, got {value!r}.")
        return value

    def get_list(self, key: str, default: Sequence[float] | None = None) -> tuple[float, ...]:
        if key not in self.values:
            if default is None:
                raise ConfigError(f"Missing required key {key!r}.")
            return tuple(default)
        try:
            return tuple(float(item) for item in self.values[key].split(",") if item.strip())
        except ValueError:
            raise ConfigError(f"Key {key!r} must be a comma separated list of numbers.") from None

    def bindings(self) -> dict[str, float]:
        """Every numeric key, made available as an expression parameter."""
        numbers = {}
        for key, value in self.values.items():
            try:
                numbers[key] = float(value)
            except ValueError:
                continue
        return numbers

    def grid(self) -> GridSpec:
        defaults = GridSpec()
        try:
            return GridSpec(
                x0=self.get_float("x0", defaults.x0),
                ratio=self.get_float("ratio", defaults.ratio),
                count=self.get_int("count", defaults.count),
                t_grid=self.get_list("t_grid", defaults.t_grid),
                delta_grid=self.get_list("delta_grid", defaults.delta_grid),
                tol=self.get_tol("limit_tol", defaults.tol),
            )
        except BeurlabError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"Invalid grid: {exc}") from exc

    def get_flow(self, key: str, default: str | None = None) -> FlowFunc:
        """An auxiliary function φ; expressions may declare their index with `<key>_rho`."""
        text = self.get_str(key, default)
        try:
            family = _registry_form(text)
            if family is not None:
                name, params = family
                return make_function(name, params)
            declared = self.get_float(f"{key}_rho") if f"{key}_rho" in self else None
            return make_function(
                "expression",
                source=text,
                bindings=self.bindings(),
                lower=self.get_float(f"{key}_lower", 0.0),
                domain_min=self.get_float(f"{key}_base", 1.0),
                declared_rho=declared,
            )
        except ConfigError:
            raise
        except BeurlabError as exc:
            raise ConfigError(f"Key {key!r}: {exc}") from exc

    def get_function(self, key: str, default: str | None = None) -> RealFunc:
        """A real function given as a registry form or an expression in x."""
        text = self.get_str(key, default)
        try:
            family = _registry_form(text)
            if family is not None:
                name, params = family
                return make_function(name, params).func
            return compile_expression(
                text,
                self.bindings(),
                lower=self.get_float(f"{key}_lower", -math.inf),
                name=text,
            )
        except ConfigError:
            raise
        except BeurlabError as exc:
            raise ConfigError(f"Key {key!r}: {exc}") from exc


def _registry_form(text: str) -> tuple[str, tuple[float, ...]] | None:
    match = FAMILY_PATTERN.match(text)
    if match is None or match.group(1) not in families():
        return None
    args = [arg.strip() for arg in match.group(2).split(",") if arg.strip()]
    try:
        return match.group(1), tuple(float(arg) for arg in args)
    except ValueError:
        return None


def build_config(
    command: str,
    config_path: str | Path | None = None,
    overrides: Sequence[str] = (),
    *,
    seed: int | None = None,
    output: str | Path | None = None,
    fmt: str | None = None,
) -> ExperimentConfig:
    """Merge the config file with overrides; explicit arguments win over file keys.

    Unset arguments (None) fall back to the file, then to seed 0, stdout and json.
    """
    values = load_config(config_path) if config_path is not None else {}
    values.update(parse_overrides(overrides))
    for key in RESERVED_KEYS & values.keys():
        if key == "seed" and seed is None:
            try:
                seed = int(values["seed"])
            except ValueError:
                raise ConfigError(f"seed must be an integer, got {values['seed']!r}.") from None
        elif key == "out" and output is None:
            output = values["out"]
        elif key == "format" and fmt is None:
            fmt = values["format"]
        del values[key]
    return ExperimentConfig(
        command,
        values,
        0 if seed is None else seed,
        Path(output) if output is not None else None,
        fmt or "json",  # type: ignore[arg-type]
    )

"""
Experiment reports and their deterministic serialization.

Classes:
    ExperimentReport: Config echo, named columns, rows and a four-valued verdict.

Functions:
    verdict_from_checks(checks) -> Verdict: pass/fail/undecided from row checks.
    worst_verdict(*verdicts) -> Verdict: aborted > fail > undecided > pass.
    emit_report(report, fmt, path) -> bytes: CSV or JSON bytes, optionally written to a file.
    body_digest(report) -> str: SHA-256 of the report body without runtime_ms.
"""


from __future__ import annotations
import csv
import hashlib
import io
import json
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from ._exceptions import BadParamError, ReportIoError


Verdict = Literal["pass", "fail", "undecided", "aborted"]
ReportFormat = Literal["csv", "json"]

SCHEMA_VERSION = "1"
VERDICT_ORDER: tuple[Verdict, ...] = ("pass", "undecided", "fail", "aborted")


@dataclass
class ExperimentReport:
    """The result of one experiment.

    Attributes:
        command (str): Experiment name.
        columns (list[str]): Column names of `rows`.
        rows (list[list[Any]]): Table body; cells are numbers, strings, booleans or None.
        verdict (Verdict): pass only when every checked row is within tolerance.
        config (dict[str, Any]): Echo of the resolved configuration.
        tolerances (dict[str, float]): Tolerances the verdict was judged against.
        notes (list[str]): Caveats that travel with the result.
        seed (int | None): PRNG seed, when the experiment samples.
        runtime_ms (float | None): Wall time; excluded from the body digest.
    """
    command: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    verdict: Verdict = "undecided"
    config: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    seed: int | None = None
    runtime_ms: float | None = None
    schema_version: str = SCHEMA_VERSION

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise BadParamError(
                f"Row has {len(values)} cells but the report has {len(self.columns)} columns."
            )
        self.rows.append(list(values))

    def to_dict(self, include_runtime: bool = True) -> dict[str, Any]:
        body = {
            "schema_version": self.schema_version,
            "command": self.command,
            "config": {key: _json_cell(value) for key, value in self.config.items()},
            "columns": list(self.columns),
            "rows": [[_json_cell(cell) for cell in row] for row in self.rows],
            "verdict": self.verdict,
            "tolerances": {key: _json_cell(value) for key, value in self.tolerances.items()},
            "notes": list(self.notes),
            "seed": self.seed,
        }
        if include_runtime:
            body["runtime_ms"] = self.runtime_ms
        return body


def verdict_from_checks(checks: Iterable[bool | None]) -> Verdict:
    """Fold per-row checks: any False fails, any None leaves the result undecided."""
    return worst_verdict(*(_check_verdict(check) for check in checks))


def worst_verdict(*verdicts: Verdict) -> Verdict:
    return max(verdicts, key=VERDICT_ORDER.index, default="pass")


def _check_verdict(check: bool | None) -> Verdict:
    if check is None:
        return "undecided"
    return "pass" if check else "fail"


def _json_cell(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, (tuple, list)):
        return [_json_cell(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _json_cell(item) for key, item in value.items()}
    return value


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _to_csv(report: ExperimentReport) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue().encode("utf-8")


def _to_json(report: ExperimentReport, include_runtime: bool = True) -> bytes:
    text = json.dumps(report.to_dict(include_runtime), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def emit_report(report: ExperimentReport, fmt: ReportFormat = "json", path: str | Path | None = None) -> bytes:
    """Serialize a report, writing it to `path` when one is given.

    CSV carries the header row and the data rows with LF line endings and
    floats at 17 significant digits. JSON carries the whole report with sorted
    keys and `schema_version`.

    Raises:
        BadParamError: Unknown format.
        ReportIoError: The destination cannot be written.
    """
    match fmt:
        case "csv":
            data = _to_csv(report)
        case "json":
            data = _to_json(report)
        case _:
            raise BadParamError(f"Unknown report format {fmt!r}; use csv or json.")
    if path is not None:
        try:
            Path(path).write_bytes(data)
        except OSError as exc:
            raise ReportIoError(f"Cannot write report to {str(path)!r}: {exc}") from exc
    return data


def body_digest(report: ExperimentReport) -> str:
    return hashlib.sha256(_to_json(report, include_runtime=False)).hexdigest()

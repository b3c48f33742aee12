"""
Command line entry point: `beurlab <command> --config FILE [--key value]... --out PATH --format csv|json`.

Exit codes: 0 when the verdict is pass (or undecided), 1 on fail, 2 on a
configuration or usage error, 3 when the experiment aborted.

An undecided verdict means an estimate did not converge on the grid, which is
no evidence against the statement under test, so it exits 0 like a pass. It is
set apart by a warning on stderr and by the verdict field of the report.
"""


from __future__ import annotations
import argparse
import logging
import sys
from collections.abc import Sequence

from .._exceptions import BeurlabError, ReportIoError
from .._version import __version__
from ..report import emit_report
from ._commander import registered_experiments, run_experiment
from ._exceptions import ConfigError
from .config import build_config


EXIT_CODES = {"pass": 0, "undecided": 0, "fail": 1, "aborted": 3}
EXIT_USAGE = 2

_handler: logging.Handler | None = None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beurlab",
        description="Run a numerical experiment on Beurling-type asymptotics and emit a report.",
        epilog="Any further '--key value' pair overrides the config file.",
        # experiment keys such as --form must not resolve to --format
        allow_abbrev=False,
    )
    parser.add_argument("command", nargs="?", help="Experiment name; see --list.")
    parser.add_argument("--config", help="Flat 'key = value' config file.")
    parser.add_argument("--out", help="Report path; stdout when omitted.")
    parser.add_argument("--format", choices=("csv", "json"), default=None, help="Report format (default json).")
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed echoed in the report.")
    parser.add_argument("--list", action="store_true", help="List the registered experiments and exit.")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Level of the stderr log (default WARNING).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _configure_logging(level: str) -> logging.Logger:
    global _handler
    logger = logging.getLogger("beurlab")
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args, extras = parser.parse_known_args(argv)
    logger = _configure_logging(args.log_level)

    if args.list:
        for entry in registered_experiments():
            print(f"{entry.name:<16} {entry.description}")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("beurlab: error: a command is required (see --list)", file=sys.stderr)
        return EXIT_USAGE

    try:
        cfg = build_config(
            args.command,
            args.config,
            extras,
            seed=args.seed,
            output=args.out,
            fmt=args.format,
        )
        report = run_experiment(cfg, logger=logger)
        payload = emit_report(report, cfg.fmt, cfg.output)
    except (ConfigError, ReportIoError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except BeurlabError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_USAGE

    if cfg.output is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    if report.verdict == "undecided":
        logger.warning("verdict undecided: at least one estimate did not converge")
    return EXIT_CODES[report.verdict]

"""
Shared CLI plumbing for zetakit subcommands.

RunConfig merges CLI flags over the config file and DEFAULTS;
ZETAKIT_JOBS overrides --jobs. Reports go to stdout (JSON lines or
TSV); logs and errors go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field
from rich.console import Console
from rich.logging import RichHandler

from zetakit.config import default_ladder, env_jobs, load_config
from zetakit.identities import IdentityReport, render_value
from zetakit.numeric import PrecisionContext

logger = logging.getLogger(__name__)

err_console = Console(stderr=True)

TSV_COLUMNS = ("identity", "params", "residual", "tolerance", "status")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_ERROR = 3


class RunConfig(BaseModel):
    """Validated settings for one CLI run."""

    model_config = ConfigDict(frozen=True)

    subcommand: str
    bits: int = Field(ge=64)
    cap: int = Field(ge=1)
    ladder: tuple[int, ...]
    order: int = Field(ge=1)
    target: float = Field(gt=0)
    max_rungs: int = Field(ge=1)
    max_weight: int = Field(ge=1)
    jobs: int = Field(ge=1)
    format: Literal["json", "tsv"]
    max_den: int = Field(ge=1)
    digits: int = Field(ge=1)
    verbose: bool = False

    def precision(self) -> PrecisionContext:
        return PrecisionContext(
            bits=self.bits,
            ladder=self.ladder,
            order=self.order,
            target=self.target,
            max_rungs=max(self.max_rungs, len(self.ladder)),
        )


def parse_int_list(text: str) -> tuple[int, ...]:
    """ "1,0,1" -> (1, 0, 1); "" -> ()."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got '{text}'")


def add_common_arguments(parser: argparse.ArgumentParser):
    """Flags shared by compute, verify and scan. None means 'use config'."""
    group = parser.add_argument_group("run settings")
    group.add_argument("--bits", type=int, help="Working precision in bits (default: config numeric.bits)")
    group.add_argument("--ladder", help="Truncation ladder, e.g. 1024,2048,4096,8192,16384")
    group.add_argument("--order", type=int, help="Extrapolation order")
    group.add_argument("--jobs", "-j", type=int, help="Worker processes (overridden by ZETAKIT_JOBS)")
    group.add_argument("--format", "-f", choices=["json", "tsv"], help="Report format")
    group.add_argument("--max-den", type=int, help="Largest denominator tried by rational recognition")
    group.add_argument("--digits", type=int, help="Digits printed for numeric values")
    group.add_argument("--verbose", "-v", action="store_true", help="Log progress to stderr")


def build_run_config(subcommand: str, args: argparse.Namespace, config: dict | None = None) -> RunConfig:
    """Merge flags over config; raises ValueError (pydantic ValidationError) on bad values."""
    config = config or load_config()
    numeric, run = config["numeric"], config["run"]

    def pick(name, fallback):
        value = getattr(args, name, None)
        return fallback if value is None else value

    jobs = env_jobs()
    if jobs is None:
        jobs = pick("jobs", run["jobs"])
    ladder_text = getattr(args, "ladder", None)
    ladder = parse_int_list(ladder_text) if ladder_text else tuple(default_ladder(config))

    return RunConfig(
        subcommand=subcommand,
        bits=pick("bits", numeric["bits"]),
        cap=pick("trunc", run["cap"]),
        ladder=ladder,
        order=pick("order", numeric["order"]),
        target=numeric["target"],
        max_rungs=numeric["max_rungs"],
        max_weight=pick("max_weight", run["max_weight"]),
        jobs=jobs,
        format=pick("format", run["format"]),
        max_den=pick("max_den", config["recognition"]["max_den"]),
        digits=pick("digits", config["output"]["digits"]),
        verbose=bool(getattr(args, "verbose", False)),
    )


def setup_logging(verbose: bool = False):
    """Rich log handler on stderr; library modules only create loggers."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


def fail_usage(message: str):
    """One red line on stderr, exit 2."""
    err_console.print(f"[red]Error:[/red] {message}", highlight=False)
    sys.exit(EXIT_USAGE)


def fail_internal(what: str):
    """Log the active exception with its traceback, exit 3.

    Keeps crashes inside a checker apart from identities that fail (exit 1).
    """
    logger.exception("%s stopped on an unexpected error", what)
    sys.exit(EXIT_ERROR)


def render_report(report: IdentityReport, fmt: str, digits: int | None) -> str:
    record = report.to_record(digits)
    if fmt == "json":
        return json.dumps(record, ensure_ascii=False)
    params = ",".join(f"{k}={_flat(v)}" for k, v in record["params"].items())
    residual = record["residual"] if record["residual"] is not None else "-"
    return "\t".join([record["identity"], params, residual, repr(record["tolerance"]), record["status"]])


def _flat(value) -> str:
    if isinstance(value, list):
        return "(" + ",".join(_flat(v) for v in value) + ")"
    return str(value)


def emit(line: str):
    """Write one machine-readable line to stdout."""
    sys.stdout.write(line + "\n")


def emit_header(fmt: str):
    if fmt == "tsv":
        emit("\t".join(TSV_COLUMNS))


def format_value(value, digits: int | None) -> str:
    return render_value(value, digits)

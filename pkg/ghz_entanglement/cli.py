"""Command-line entry point."""
from __future__ import annotations

import argparse
from collections.abc import Sequence
import logging
import os
from pathlib import Path
import sys

from dotenv import find_dotenv, load_dotenv
import voluptuous as vol

from . import __version__
from .checks import format_checks, format_reproduction, paper_reproduction, run_checks
from .const import (
    CONF_EIG_QUBIT_CAP,
    CONF_FORMAT,
    CONF_LOG_BASE,
    CONF_MATRIX_QUBIT_CAP,
    CONF_PHASE,
    CONF_PRECISION,
    CONF_WORKERS,
    DEFAULT_EIG_QUBIT_CAP,
    DEFAULT_EPSILON,
    DEFAULT_FORMAT,
    DEFAULT_LOG_BASE,
    DEFAULT_MATRIX_QUBIT_CAP,
    DEFAULT_N,
    DEFAULT_PRECISION,
    DEFAULT_WORKERS,
    ENV_EIG_QUBIT_CAP,
    ENV_LOG_BASE,
    ENV_MATRIX_QUBIT_CAP,
    ENV_PRECISION,
    ENV_WORKERS,
    EXIT_CHECK_FAILURE,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    OUTPUT_FORMATS,
)
from .exceptions import CheckFailed, DimensionCapExceeded, InvalidConfig, InvalidParameter
from .report import RunConfig, emit, run_report
from .states import PhaseConvention

_LOGGER = logging.getLogger(__name__)

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser; environment variables supply some defaults."""
    parser = argparse.ArgumentParser(
        prog="ghz-entanglement",
        description="Separability and entanglement of pseudo-pure GHZ states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--n", default=str(DEFAULT_N), help="qubit count: 4, 2..8 or 2,4,6")
    parser.add_argument(
        "--epsilon",
        default=str(DEFAULT_EPSILON),
        help="purity parameter: 0.54, start:stop:step or 0.1,0.5",
    )
    parser.add_argument("--format", dest=CONF_FORMAT, choices=OUTPUT_FORMATS, default=DEFAULT_FORMAT)
    parser.add_argument(
        "--log-base",
        dest=CONF_LOG_BASE,
        default=os.getenv(ENV_LOG_BASE, DEFAULT_LOG_BASE),
        help="logarithm base for entropies (2 reports in log 2 units)",
    )
    parser.add_argument(
        "--precision",
        dest=CONF_PRECISION,
        default=os.getenv(ENV_PRECISION, DEFAULT_PRECISION),
        help="decimals shown in the table view",
    )
    parser.add_argument("--checks", action="store_true", help="run the oracle check suite")
    parser.add_argument(
        "--verify-matrices",
        action="store_true",
        help="rebuild every point with dense matrices (n <= 10)",
    )
    parser.add_argument(
        "--reproduce-paper",
        action="store_true",
        help="check the N=4, eps=0.54 headline numbers",
    )
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument(
        "--phase",
        dest=CONF_PHASE,
        choices=[convention.value for convention in PhaseConvention],
        default=PhaseConvention.I_POWER.value,
    )
    parser.add_argument("--workers", dest=CONF_WORKERS, default=os.getenv(ENV_WORKERS, DEFAULT_WORKERS))
    parser.add_argument(
        "--matrix-qubit-cap",
        dest=CONF_MATRIX_QUBIT_CAP,
        default=os.getenv(ENV_MATRIX_QUBIT_CAP, DEFAULT_MATRIX_QUBIT_CAP),
    )
    parser.add_argument(
        "--eig-qubit-cap",
        dest=CONF_EIG_QUBIT_CAP,
        default=os.getenv(ENV_EIG_QUBIT_CAP, DEFAULT_EIG_QUBIT_CAP),
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _configure_logging(verbosity: int) -> None:
    """Set the root log level from the -v count."""
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)]
    logging.basicConfig(level=level, format=_LOG_FORMAT, stream=sys.stderr)


def _write(data: bytes, out: str | None) -> None:
    """Write output bytes to a file or to stdout."""
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _run(config: RunConfig) -> int:
    """Run the requested mode and return the exit code."""
    if config.reproduce_paper:
        summary = paper_reproduction(config.log_base)
        _write(format_reproduction(summary).encode("utf-8"), config.out)
        return EXIT_OK if summary.passed else EXIT_CHECK_FAILURE

    reports = run_report(config)
    _write(emit(reports, config.output_format, precision=config.precision), config.out)

    if config.checks:
        results = run_checks(
            config.n,
            config.epsilon,
            phase_convention=config.phase_convention,
            matrix_qubit_cap=config.matrix_qubit_cap,
            eig_qubit_cap=config.eig_qubit_cap,
        )
        sys.stderr.write(format_checks(results))
        if not all(result.passed for result in results):
            return EXIT_CHECK_FAILURE
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    load_dotenv(find_dotenv(usecwd=True))
    args = vars(build_parser().parse_args(argv))
    _configure_logging(args.pop("verbose"))

    try:
        config = RunConfig.from_user_input(args)
        return _run(config)
    except (InvalidConfig, vol.Invalid, InvalidParameter, DimensionCapExceeded) as err:
        _LOGGER.error("Invalid configuration: %s", err)
        return EXIT_CONFIG_ERROR
    except CheckFailed as err:
        _LOGGER.error("Dense verification failed: %s", err)
        return EXIT_CHECK_FAILURE
    except OSError as err:
        _LOGGER.error("Cannot write output: %s", err)
        return EXIT_CHECK_FAILURE
    except Exception:  # pylint: disable=broad-except
        _LOGGER.exception("Unexpected error")
        return EXIT_CHECK_FAILURE

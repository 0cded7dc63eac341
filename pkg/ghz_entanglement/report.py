"""Sweep configuration, evaluation and rendering."""
from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass
import io
import json
import logging
import math
from typing import Any

import voluptuous as vol

from .checks import verify_report
from .const import (
    CONF_CHECKS,
    CONF_EIG_QUBIT_CAP,
    CONF_EPSILON,
    CONF_FORMAT,
    CONF_LOG_BASE,
    CONF_MATRIX_QUBIT_CAP,
    CONF_N,
    CONF_OUT,
    CONF_PHASE,
    CONF_PRECISION,
    CONF_REPRODUCE_PAPER,
    CONF_VERIFY_MATRICES,
    CONF_WORKERS,
    DEFAULT_EIG_QUBIT_CAP,
    DEFAULT_FORMAT,
    DEFAULT_LOG_BASE,
    DEFAULT_MATRIX_QUBIT_CAP,
    DEFAULT_PRECISION,
    DEFAULT_WORKERS,
    GHZ_MAX_QUBITS,
    MAX_PRECISION,
    MIN_PRECISION,
    OUTPUT_FORMATS,
    REPORT_FIELDS,
)
from .exceptions import InvalidConfig, InvalidParameter
from .linalg import validate_log_base
from .measures import MeasureReport, measure_report
from .states import PhaseConvention, check_qubit_count, check_unit_interval

_LOGGER = logging.getLogger(__name__)

# slack when deciding whether the stop value lies on an epsilon grid
_GRID_SLACK = 1e-9


def parse_qubit_range(value: str | int | Sequence[int]) -> list[int]:
    """Parse '4', '2..8' or '2,4,6' into sorted distinct qubit counts."""
    if isinstance(value, str):
        text = value.strip()
        try:
            if ".." in text:
                start, stop = (int(part) for part in text.split("..", 1))
                if start > stop:
                    raise InvalidParameter(f"qubit range {text!r} is empty")
                counts = list(range(start, stop + 1))
            else:
                counts = [int(part) for part in text.split(",") if part.strip()]
        except InvalidParameter:
            raise
        except ValueError as err:
            raise InvalidParameter(f"cannot parse qubit range {value!r}: {err}") from err
    elif isinstance(value, int):
        counts = [value]
    else:
        counts = list(value)
    if not counts:
        raise InvalidParameter("qubit range is empty")
    return sorted({check_qubit_count(n) for n in counts})


def parse_epsilon_range(value: str | float | Sequence[float]) -> list[float]:
    """Parse '0.54', 'start:stop:step' or '0.1,0.5' into sorted distinct weights.

    A start:stop:step grid includes stop when it lies on the grid.
    """
    if isinstance(value, str):
        text = value.strip()
        try:
            if ":" in text:
                start, stop, step = (float(part) for part in text.split(":"))
                if step <= 0:
                    raise InvalidParameter(f"epsilon step must be positive, got {step}")
                if start > stop:
                    raise InvalidParameter(f"epsilon range {text!r} is empty")
                count = math.floor((stop - start) / step + _GRID_SLACK)
                weights = [round(start + i * step, 12) for i in range(count + 1)]
            else:
                weights = [float(part) for part in text.split(",") if part.strip()]
        except InvalidParameter:
            raise
        except ValueError as err:
            raise InvalidParameter(f"cannot parse epsilon range {value!r}: {err}") from err
    elif isinstance(value, (int, float)):
        weights = [float(value)]
    else:
        weights = [float(v) for v in value]
    if not weights:
        raise InvalidParameter("epsilon range is empty")
    return sorted({check_unit_interval(w, "epsilon") for w in weights})


def _schema_parser(parser: Callable[[Any], Any]) -> Callable[[Any], Any]:
    """Wrap a parser so its error message survives schema validation."""

    def validate(value: Any) -> Any:
        try:
            return parser(value)
        except InvalidParameter as err:
            raise vol.Invalid(str(err)) from err

    return validate


RUN_CONFIG_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_N): _schema_parser(parse_qubit_range),
        vol.Required(CONF_EPSILON): _schema_parser(parse_epsilon_range),
        vol.Optional(CONF_LOG_BASE, default=DEFAULT_LOG_BASE): vol.All(
            vol.Coerce(float), _schema_parser(validate_log_base)
        ),
        vol.Optional(CONF_FORMAT, default=DEFAULT_FORMAT): vol.In(OUTPUT_FORMATS),
        vol.Optional(CONF_PRECISION, default=DEFAULT_PRECISION): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_PRECISION, max=MAX_PRECISION)
        ),
        vol.Optional(CONF_CHECKS, default=False): bool,
        vol.Optional(CONF_VERIFY_MATRICES, default=False): bool,
        vol.Optional(CONF_REPRODUCE_PAPER, default=False): bool,
        vol.Optional(CONF_OUT, default=None): vol.Any(None, str),
        vol.Optional(CONF_PHASE, default=PhaseConvention.I_POWER.value): vol.All(
            vol.In([convention.value for convention in PhaseConvention]), vol.Coerce(PhaseConvention)
        ),
        vol.Optional(CONF_WORKERS, default=DEFAULT_WORKERS): vol.All(vol.Coerce(int), vol.Range(min=1)),
        vol.Optional(CONF_MATRIX_QUBIT_CAP, default=DEFAULT_MATRIX_QUBIT_CAP): vol.All(
            vol.Coerce(int), vol.Range(min=2, max=GHZ_MAX_QUBITS)
        ),
        vol.Optional(CONF_EIG_QUBIT_CAP, default=DEFAULT_EIG_QUBIT_CAP): vol.All(
            vol.Coerce(int), vol.Range(min=2, max=GHZ_MAX_QUBITS)
        ),
    }
)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one run."""

    n: tuple[int, ...]
    epsilon: tuple[float, ...]
    log_base: float = DEFAULT_LOG_BASE
    output_format: str = DEFAULT_FORMAT
    precision: int = DEFAULT_PRECISION
    checks: bool = False
    verify_matrices: bool = False
    reproduce_paper: bool = False
    out: str | None = None
    phase_convention: PhaseConvention = PhaseConvention.I_POWER
    workers: int = DEFAULT_WORKERS
    matrix_qubit_cap: int = DEFAULT_MATRIX_QUBIT_CAP
    eig_qubit_cap: int = DEFAULT_EIG_QUBIT_CAP

    @classmethod
    def from_user_input(cls, user_input: Mapping[str, Any]) -> RunConfig:
        """Validate raw settings (flag strings or typed values)."""
        try:
            data = RUN_CONFIG_SCHEMA(dict(user_input))
        except vol.Invalid as err:
            raise InvalidConfig(str(err)) from err
        data[CONF_N] = tuple(data[CONF_N])
        data[CONF_EPSILON] = tuple(data[CONF_EPSILON])
        return cls(**data)

    def points(self) -> list[tuple[int, float]]:
        """Return the sweep points, n ascending then epsilon ascending."""
        return [(n, epsilon) for n in self.n for epsilon in self.epsilon]


def run_report(config: RunConfig) -> list[MeasureReport]:
    """Evaluate one MeasureReport per sweep point."""
    points = config.points()
    _LOGGER.info("Evaluating %d sweep points with %d worker(s)", len(points), config.workers)

    def evaluate(point: tuple[int, float]) -> MeasureReport:
        """Evaluate and optionally verify one sweep point."""
        n, epsilon = point
        report = measure_report(n, epsilon, config.log_base)
        if config.verify_matrices:
            verify_report(
                report,
                phase_convention=config.phase_convention,
                matrix_qubit_cap=config.matrix_qubit_cap,
                eig_qubit_cap=config.eig_qubit_cap,
            )
        _LOGGER.debug("Evaluated n=%d eps=%s", n, epsilon)
        return report

    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        return list(executor.map(evaluate, points))


def _csv_cell(value: Any) -> str:
    """Format one CSV cell; floats keep full precision."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _table_cell(value: Any, precision: int) -> str:
    """Format one table cell, showing missing values as a dash."""
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{precision}f}"
    return str(value)


def format_table(reports: Sequence[MeasureReport], precision: int = DEFAULT_PRECISION) -> str:
    """Render reports as an aligned text table."""
    bases = {report.log_base for report in reports}
    if bases == {2.0}:
        unit = "log 2 units"
    else:
        unit = ", ".join(f"log base {base:g}" for base in sorted(bases))
    columns = [field for field in REPORT_FIELDS if field != "log_base"]
    rows = [[_table_cell(report.to_dict()[field], precision) for field in columns] for report in reports]
    widths = [max(len(column), *(len(row[i]) for row in rows)) for i, column in enumerate(columns)]
    lines = [
        f"Entanglement measures in {unit}",
        "  ".join(column.rjust(width) for column, width in zip(columns, widths)),
        "  ".join("-" * width for width in widths),
    ]
    lines.extend("  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows)
    return "\n".join(lines) + "\n"


def emit(reports: Sequence[MeasureReport], output_format: str, *, precision: int = DEFAULT_PRECISION) -> bytes:
    """Serialize reports as table, csv or json bytes."""
    if not reports:
        raise InvalidParameter("no reports to emit")
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for report in reports:
            record = report.to_dict()
            writer.writerow([_csv_cell(record[field]) for field in REPORT_FIELDS])
        text = buffer.getvalue()
    elif output_format == "json":
        text = json.dumps([report.to_dict() for report in reports], indent=2) + "\n"
    elif output_format == "table":
        text = format_table(reports, precision)
    else:
        raise InvalidParameter(f"unknown output format {output_format!r}, expected one of {OUTPUT_FORMATS}")
    return text.encode("utf-8")

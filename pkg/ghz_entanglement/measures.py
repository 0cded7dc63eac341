"""Entanglement of pseudo-pure GHZ states.

Scenario measures are returned in the configured logarithm base, so with
base 2 they read directly as multiples of log 2.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, fields
import logging
import math
from typing import Any

import numpy as np

from .const import (
    DEFAULT_LOG_BASE,
    EIG_DIM_CAP,
    FIELD_VERDICT,
    MATRIX_DIM_CAP,
    REPORT_FIELDS,
    WERNER_SEPARABLE_X,
)
from .exceptions import InvalidParameter, InvalidStateError
from .linalg import (
    Bipartition,
    DensityMatrix,
    PureState,
    StateLike,
    as_pure_state,
    qubits_for_dim,
    reduced_state,
    validate_log_base,
    von_neumann_entropy,
)
from .separability import Verdict, is_fully_nonseparable, purity_threshold
from .states import (
    check_qubit_count,
    check_unit_interval,
    pseudo_pure_fidelity,
    singlet,
    werner,
    x_of,
)

_LOGGER = logging.getLogger(__name__)

XFormula = Callable[[int, float], float]


def log2_unit(log_base: float = DEFAULT_LOG_BASE) -> float:
    """Return log 2 expressed in the given base (1 ebit)."""
    return math.log(2) / math.log(validate_log_base(log_base))


def ls_lambda(x: float) -> float:
    """Return the separable weight of the Werner state with singlet weight x."""
    x = check_unit_interval(x, "Werner weight")
    if x <= WERNER_SEPARABLE_X:
        return 1.0
    return 1.5 * (1.0 - x)


def ls_entanglement(x: float, e_pure: float) -> float:
    """Return (1 - lambda) * e_pure, zero for x <= 1/3."""
    if e_pure < 0:
        raise InvalidParameter(f"pure-state entanglement must be nonnegative, got {e_pure}")
    return (1.0 - ls_lambda(x)) * e_pure


def eq10_entanglement(n: int, epsilon: float, e_pure: float) -> float:
    """Return the lower bound x_of(n, eps) * e_pure."""
    if e_pure < 0:
        raise InvalidParameter(f"pure-state entanglement must be nonnegative, got {e_pure}")
    return x_of(n, epsilon) * e_pure


def _scenario_values(n: int, x: float, unit: float) -> tuple[float, float | None, float]:
    """Return (teleportation, bipartite average or None, operator norm)."""
    teleport = x * unit
    bipartite = teleport / 2 if n % 2 == 0 else None
    return teleport, bipartite, (n - 1) * teleport


def teleportation_measure(n: int, epsilon: float, log_base: float = DEFAULT_LOG_BASE) -> float:
    """Return x_of(n, eps) * log 2, the single-qubit teleportation scenario."""
    teleport, _, _ = _scenario_values(n, x_of(n, epsilon), log2_unit(log_base))
    return teleport


def bipartite_average_measure(n: int, epsilon: float, log_base: float = DEFAULT_LOG_BASE) -> float:
    """Return x_of(n, eps) * (1/2) log 2, the average over N/2 bipartitions."""
    n = check_qubit_count(n)
    if n % 2:
        raise InvalidParameter(
            f"bipartite average needs an even qubit count (N/2 partitions), got {n}"
        )
    _, bipartite, _ = _scenario_values(n, x_of(n, epsilon), log2_unit(log_base))
    return bipartite


def operator_norm_measure(n: int, epsilon: float, log_base: float = DEFAULT_LOG_BASE) -> float:
    """Return x_of(n, eps) * (n - 1) log 2, the operator-norm scenario."""
    _, _, opnorm = _scenario_values(n, x_of(n, epsilon), log2_unit(log_base))
    return opnorm


def pure_entanglement_entropy(
    state: StateLike,
    bipartition: Bipartition,
    log_base: float = DEFAULT_LOG_BASE,
    *,
    max_dim: int = EIG_DIM_CAP,
) -> float:
    """Return the entropy of either reduced state of a pure state."""
    psi = as_pure_state(state, max_qubits=qubits_for_dim(MATRIX_DIM_CAP))
    if bipartition.n != psi.qubit_count:
        raise InvalidParameter(f"bipartition covers {bipartition.n} qubits, state has {psi.qubit_count}")
    smaller = min(bipartition.part_a, bipartition.part_b, key=len)
    return von_neumann_entropy(reduced_state(psi, smaller), log_base, max_dim=max_dim)


@dataclass(frozen=True, eq=False)
class LsDecomposition:
    """Split of a Werner state into separable and pure entangled parts."""

    lambda_: float
    x: float
    entangled_part_entropy: float
    separable_part: DensityMatrix
    entangled_part: PureState

    @property
    def entanglement(self) -> float:
        """Return (1 - lambda) times the entangled part's entropy."""
        return (1.0 - self.lambda_) * self.entangled_part_entropy

    def reconstruct(self) -> DensityMatrix:
        """Return lambda rho_s + (1 - lambda) |Psi_e><Psi_e|."""
        amplitudes = self.entangled_part.amplitudes
        return DensityMatrix(
            self.lambda_ * self.separable_part.entries
            + (1.0 - self.lambda_) * np.outer(amplitudes, amplitudes.conj())
        )


def ls_decompose(x: float, log_base: float = DEFAULT_LOG_BASE) -> LsDecomposition:
    """Decompose werner(x) into its best separable part and the singlet."""
    weight = ls_lambda(x)
    entangled = singlet()
    return LsDecomposition(
        lambda_=weight,
        x=x,
        entangled_part_entropy=pure_entanglement_entropy(entangled, Bipartition.single(2, 1), log_base),
        separable_part=werner(min(x, WERNER_SEPARABLE_X)),
        entangled_part=entangled,
    )


@dataclass(frozen=True)
class MeasureReport:
    """Every computed quantity for one (n, epsilon) point."""

    n: int
    epsilon: float
    x: float
    lambda_: float
    fidelity: float
    threshold: float
    verdict: Verdict
    e_ls: float
    e_eq10: float
    e_bipartite_avg: float | None
    e_teleport: float
    e_opnorm: float
    log_base: float

    def __post_init__(self) -> None:
        """Check the measures are nonnegative."""
        object.__setattr__(self, "verdict", Verdict(self.verdict))
        for name in ("e_ls", "e_eq10", "e_bipartite_avg", "e_teleport", "e_opnorm"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InvalidStateError(f"{name} is negative: {value}")

    def to_dict(self) -> dict[str, Any]:
        """Return the flat record keyed by the report field names."""
        values = [getattr(self, f.name) for f in fields(self)]
        record = dict(zip(REPORT_FIELDS, values))
        record[FIELD_VERDICT] = self.verdict.value
        return record

    @classmethod
    def from_dict(cls, record: dict[str, Any]) -> MeasureReport:
        """Build a report from a flat record."""
        names = [f.name for f in fields(cls)]
        return cls(**{name: record[key] for name, key in zip(names, REPORT_FIELDS)})

    def in_log2_units(self, value: float) -> float:
        """Convert a measure from this report's base to multiples of log 2."""
        return value / log2_unit(self.log_base)


def measure_report(
    n: int,
    epsilon: float,
    log_base: float = DEFAULT_LOG_BASE,
    *,
    x_formula: XFormula = x_of,
) -> MeasureReport:
    """Evaluate every closed-form quantity at one point."""
    n = check_qubit_count(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    unit = log2_unit(log_base)
    x = x_formula(n, epsilon)
    teleport, bipartite, opnorm = _scenario_values(n, x, unit)
    _LOGGER.debug("n=%d epsilon=%s x=%s", n, epsilon, x)
    return MeasureReport(
        n=n,
        epsilon=epsilon,
        x=x,
        lambda_=ls_lambda(x),
        fidelity=pseudo_pure_fidelity(n, epsilon),
        threshold=purity_threshold(n),
        verdict=is_fully_nonseparable(n, epsilon).separable_flag,
        e_ls=ls_entanglement(x, unit),
        e_eq10=x * unit,
        e_bipartite_avg=bipartite,
        e_teleport=teleport,
        e_opnorm=opnorm,
        log_base=float(log_base),
    )

"""Separability verdicts: fidelity criterion, purity threshold and PPT."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging

import numpy as np

from .const import (
    EIG_DIM_CAP,
    FIDELITY_BOUND,
    PT_NEGATIVITY_CUTOFF,
    VERIFY_TOL,
)
from .exceptions import DimensionMismatch, InvalidParameter, InvalidStateError
from .linalg import (
    Bipartition,
    DensityMatrix,
    PureState,
    StateLike,
    as_density_matrix,
    as_pure_state,
    fidelity_with_pure,
    hermitian_eig,
    partial_transpose,
)
from .states import check_qubit_count, check_unit_interval, schmidt_decompose

_LOGGER = logging.getLogger(__name__)

_MAXIMALLY_ENTANGLED_TOL = 1e-10


class Criterion(str, Enum):
    """Separability test that produced a verdict."""

    FIDELITY = "fidelity"
    PURITY_THRESHOLD = "purity_threshold"
    PPT = "ppt"


class Verdict(str, Enum):
    """Ternary separability outcome."""

    SEPARABLE = "separable"
    NONSEPARABLE = "nonseparable"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of one criterion with its witness and threshold.

    For the fidelity and purity criteria the witness (F or epsilon) must
    exceed the threshold; for PPT the witness (minimum eigenvalue of the
    partial transpose) must fall below it.
    """

    criterion: Criterion
    separable_flag: Verdict
    witness_value: float
    threshold: float
    note: str = ""

    def __post_init__(self) -> None:
        """Check the flag agrees with the witness."""
        if (self.margin > 0) != (self.separable_flag is Verdict.NONSEPARABLE):
            raise InvalidStateError(
                f"{self.criterion.value} verdict {self.separable_flag.value} contradicts "
                f"witness {self.witness_value} against threshold {self.threshold}"
            )

    @property
    def margin(self) -> float:
        """Return how far the witness lies beyond its threshold."""
        if self.criterion is Criterion.PPT:
            return self.threshold - self.witness_value
        return self.witness_value - self.threshold

    @property
    def is_nonseparable(self) -> bool:
        """Return True when entanglement is certified."""
        return self.separable_flag is Verdict.NONSEPARABLE


def _require_maximally_entangled(target: PureState) -> None:
    """Check target is maximally entangled across its last qubit."""
    n = target.qubit_count
    if n < 2:
        raise InvalidParameter("fidelity criterion needs a target on at least 2 qubits")
    coefficients = schmidt_decompose(target, Bipartition.single(n, n - 1)).coefficients
    expected = np.full(2, 1 / np.sqrt(2))
    if len(coefficients) != 2 or np.max(np.abs(coefficients - expected)) > _MAXIMALLY_ENTANGLED_TOL:
        raise InvalidParameter("fidelity criterion target must be maximally entangled (Schmidt coefficients 1/sqrt2)")


def _is_werner_about(rho: DensityMatrix, target: PureState, fidelity: float) -> bool:
    """Return True if rho is (1 - x) I/4 + x |target><target| for some x."""
    if rho.dim != 4:
        return False
    x = (4.0 * fidelity - 1.0) / 3.0
    amplitudes = target.amplitudes
    candidate = (1.0 - x) * np.eye(4) / 4 + x * np.outer(amplitudes, amplitudes.conj())
    return float(np.max(np.abs(rho.entries - candidate))) <= VERIFY_TOL


def fidelity_criterion(rho: DensityMatrix | np.ndarray, target: StateLike) -> SeparabilityVerdict:
    """Certify entanglement when the overlap with a maximally entangled target exceeds 1/2.

    Below the bound the verdict is separable only for Werner states about the
    target; otherwise it is undecided.
    """
    rho = as_density_matrix(rho)
    psi = as_pure_state(target)
    if psi.dim != rho.dim:
        raise DimensionMismatch(f"target dimension {psi.dim} does not match density matrix dimension {rho.dim}")
    _require_maximally_entangled(psi)

    fidelity = fidelity_with_pure(rho, psi)
    if fidelity > FIDELITY_BOUND:
        return SeparabilityVerdict(Criterion.FIDELITY, Verdict.NONSEPARABLE, fidelity, FIDELITY_BOUND)
    if _is_werner_about(rho, psi, fidelity):
        return SeparabilityVerdict(
            Criterion.FIDELITY,
            Verdict.SEPARABLE,
            fidelity,
            FIDELITY_BOUND,
            note="Werner state: F <= 1/2 is necessary and sufficient for separability",
        )
    return SeparabilityVerdict(
        Criterion.FIDELITY,
        Verdict.UNDECIDED,
        fidelity,
        FIDELITY_BOUND,
        note="F <= 1/2 does not certify separability outside the Werner family",
    )


def purity_threshold(n: int) -> float:
    """Return 1 / (1 + 2^(n-1)), the purity above which the pseudo-pure state is entangled."""
    n = check_qubit_count(n)
    return 1.0 / (1.0 + 2.0 ** (n - 1))


def is_fully_nonseparable(n: int, epsilon: float) -> SeparabilityVerdict:
    """Compare the purity parameter with the threshold for n qubits."""
    threshold = purity_threshold(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    if epsilon > threshold:
        return SeparabilityVerdict(Criterion.PURITY_THRESHOLD, Verdict.NONSEPARABLE, epsilon, threshold)
    return SeparabilityVerdict(
        Criterion.PURITY_THRESHOLD,
        Verdict.UNDECIDED,
        epsilon,
        threshold,
        note="purity at or below the threshold: the bound is one-sided",
    )


def ppt_check(
    rho: DensityMatrix | np.ndarray,
    bipartition: Bipartition,
    *,
    max_dim: int = EIG_DIM_CAP,
) -> SeparabilityVerdict:
    """Certify entanglement from a negative eigenvalue of the partial transpose."""
    rho = as_density_matrix(rho)
    if bipartition.n != rho.qubit_count:
        raise DimensionMismatch(f"bipartition covers {bipartition.n} qubits, state has {rho.qubit_count}")

    witness = hermitian_eig(partial_transpose(rho, bipartition.part_a), max_dim=max_dim).min_eigenvalue
    if witness < PT_NEGATIVITY_CUTOFF:
        return SeparabilityVerdict(Criterion.PPT, Verdict.NONSEPARABLE, witness, PT_NEGATIVITY_CUTOFF)
    if rho.dim == 4:
        note = "two qubits: PPT is necessary and sufficient"
        if witness < 0:
            # entangled states this close to the PPT boundary fall inside the cutoff
            note += f"; minimum eigenvalue {witness:.1e} lies within the {PT_NEGATIVITY_CUTOFF:.0e} cutoff"
            _LOGGER.debug("PPT witness %s treated as zero", witness)
        return SeparabilityVerdict(Criterion.PPT, Verdict.SEPARABLE, witness, PT_NEGATIVITY_CUTOFF, note=note)
    return SeparabilityVerdict(
        Criterion.PPT,
        Verdict.UNDECIDED,
        witness,
        PT_NEGATIVITY_CUTOFF,
        note="PPT is only necessary for separability beyond two qubits",
    )


def ppt_all_bipartitions(
    rho: DensityMatrix | np.ndarray,
    *,
    max_dim: int = EIG_DIM_CAP,
) -> list[tuple[Bipartition, SeparabilityVerdict]]:
    """Run ppt_check across every bipartition of the register."""
    rho = as_density_matrix(rho)
    verdicts = [
        (bipartition, ppt_check(rho, bipartition, max_dim=max_dim))
        for bipartition in Bipartition.all_for(rho.qubit_count)
    ]
    _LOGGER.debug(
        "PPT over %d bipartitions: %d nonseparable",
        len(verdicts),
        sum(verdict.is_nonseparable for _, verdict in verdicts),
    )
    return verdicts


def pseudo_pure_negativity(n: int, epsilon: float) -> float:
    """Return max(0, eps/2 - (1 - eps)/2^n), the negativity of any bipartition."""
    n = check_qubit_count(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    return max(0.0, epsilon / 2 - (1.0 - epsilon) / 2.0**n)


def pseudo_pure_min_pt_eigenvalue(n: int, epsilon: float) -> float:
    """Return (1 - eps)/2^n - eps/2, the smallest partial-transpose eigenvalue."""
    n = check_qubit_count(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    return (1.0 - epsilon) / 2.0**n - epsilon / 2

"""State families: GHZ, pseudo-pure, experimental mixture and Werner states."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging
import math

import numpy as np

from .const import (
    GHZ_MAX_QUBITS,
    MATRIX_DIM_CAP,
    FOUR_ION_N,
    FOUR_ION_P_PURE,
    SCHMIDT_CUTOFF,
)
from .exceptions import (
    DimensionCapExceeded,
    DimensionMismatch,
    InvalidParameter,
    InvalidStateError,
)
from .linalg import (
    Bipartition,
    DensityMatrix,
    PureState,
    StateLike,
    as_pure_state,
    maximally_mixed,
)

_LOGGER = logging.getLogger(__name__)

_SQRT_HALF = 1 / math.sqrt(2)


class PhaseConvention(str, Enum):
    """Relative phase on the all-down GHZ component."""

    I_POWER = "paper_iN1"
    PLUS = "plus"


def ghz_phase(n: int, phase_convention: PhaseConvention | str = PhaseConvention.I_POWER) -> complex:
    """Return i^(n+1) for the default convention, 1 for plus."""
    if PhaseConvention(phase_convention) is PhaseConvention.PLUS:
        return 1 + 0j
    # exact powers of i
    return (1 + 0j, 1j, -1 + 0j, -1j)[(n + 1) % 4]


def check_qubit_count(n: int, upper: int = GHZ_MAX_QUBITS) -> int:
    """Validate a qubit count."""
    if isinstance(n, bool) or int(n) != n or not 2 <= n <= upper:
        raise InvalidParameter(f"qubit count must be an integer in 2..{upper}, got {n}")
    return int(n)


def check_unit_interval(value: float, name: str) -> float:
    """Validate a weight in [0, 1]."""
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParameter(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class PseudoPureParams:
    """Qubit count, purity parameter and phase convention."""

    n: int
    epsilon: float
    phase_convention: PhaseConvention = PhaseConvention.I_POWER

    def __post_init__(self) -> None:
        """Validate the parameters."""
        object.__setattr__(self, "n", check_qubit_count(self.n))
        object.__setattr__(self, "epsilon", check_unit_interval(self.epsilon, "epsilon"))
        object.__setattr__(self, "phase_convention", PhaseConvention(self.phase_convention))


@dataclass(frozen=True)
class GhzState:
    """GHZ state stored as its two nonzero amplitudes."""

    n: int
    phase_convention: PhaseConvention = PhaseConvention.I_POWER

    def __post_init__(self) -> None:
        """Validate the qubit count."""
        object.__setattr__(self, "n", check_qubit_count(self.n))
        object.__setattr__(self, "phase_convention", PhaseConvention(self.phase_convention))

    @property
    def dim(self) -> int:
        """Return the register dimension."""
        return 2**self.n

    @property
    def phase(self) -> complex:
        """Return the phase on the all-down component."""
        return ghz_phase(self.n, self.phase_convention)

    def support(self) -> dict[int, complex]:
        """Return the nonzero amplitudes keyed by basis index."""
        return {0: _SQRT_HALF + 0j, self.dim - 1: self.phase * _SQRT_HALF}

    def amplitude(self, index: int) -> complex:
        """Return the amplitude of one computational basis state."""
        if not 0 <= index < self.dim:
            raise InvalidParameter(f"basis index {index} out of range for {self.n} qubits")
        return self.support().get(index, 0j)

    def norm(self) -> float:
        """Return the Euclidean norm."""
        return math.sqrt(sum(abs(a) ** 2 for a in self.support().values()))

    def materialize(self, *, max_qubits: int = GHZ_MAX_QUBITS) -> PureState:
        """Return the dense amplitude vector."""
        if self.n > max_qubits:
            raise DimensionCapExceeded(self.dim, 2**max_qubits, "state vector")
        amplitudes = np.zeros(self.dim, dtype=complex)
        for index, amplitude in self.support().items():
            amplitudes[index] = amplitude
        return PureState(amplitudes)

    def projector(self, *, max_dim: int = MATRIX_DIM_CAP) -> DensityMatrix:
        """Return |GHZ><GHZ| built from the two amplitudes."""
        if self.dim > max_dim:
            raise DimensionCapExceeded(self.dim, max_dim)
        entries = np.zeros((self.dim, self.dim), dtype=complex)
        _add_outer(entries, self.support(), 1.0)
        return DensityMatrix(entries)


def _add_outer(entries: np.ndarray, support: dict[int, complex], weight: float) -> None:
    """Add weight * |psi><psi| for a sparsely supported psi in place."""
    for row, left in support.items():
        for column, right in support.items():
            entries[row, column] += weight * left * right.conjugate()


def ghz_state(n: int, phase_convention: PhaseConvention | str = PhaseConvention.I_POWER) -> GhzState:
    """Return (|0...0> + phase |1...1>) / sqrt(2)."""
    return GhzState(n, PhaseConvention(phase_convention))


def pseudo_pure(params: PseudoPureParams, *, max_dim: int = MATRIX_DIM_CAP) -> DensityMatrix:
    """Return (1 - eps) I / 2^n + eps |GHZ><GHZ|."""
    dim = 2**params.n
    if dim > max_dim:
        raise DimensionCapExceeded(dim, max_dim)
    epsilon = params.epsilon
    entries = np.eye(dim, dtype=complex) * ((1.0 - epsilon) / dim)
    _add_outer(entries, ghz_state(params.n, params.phase_convention).support(), epsilon)
    return DensityMatrix(entries)


def pseudo_pure_fidelity(n: int, epsilon: float) -> float:
    """Return the GHZ fidelity eps + (1 - eps) / 2^n of a pseudo-pure state."""
    n = check_qubit_count(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    return epsilon + (1.0 - epsilon) / 2.0**n


def experimental_mixture(
    p_pure: float = FOUR_ION_P_PURE,
    rho_incoh: DensityMatrix | None = None,
    phase_convention: PhaseConvention | str = PhaseConvention.I_POWER,
) -> DensityMatrix:
    """Return p |Psi_4><Psi_4| + (1 - p) rho_incoh.

    The pure weight defaults to 0.43 and the incoherent part to I/16.
    """
    p_pure = check_unit_interval(p_pure, "pure-state weight")
    target = ghz_state(FOUR_ION_N, phase_convention)
    incoherent = rho_incoh if rho_incoh is not None else maximally_mixed(FOUR_ION_N)
    if incoherent.dim != target.dim:
        raise DimensionMismatch(f"incoherent part has dimension {incoherent.dim}, expected {target.dim}")
    entries = (1.0 - p_pure) * incoherent.entries
    _add_outer(entries, target.support(), p_pure)
    return DensityMatrix(entries)


def singlet() -> PureState:
    """Return (|01> - |10>) / sqrt(2)."""
    return PureState(np.array([0.0, _SQRT_HALF, -_SQRT_HALF, 0.0], dtype=complex))


def werner(x: float) -> DensityMatrix:
    """Return (1 - x) I/4 + x |Psi(-)><Psi(-)|."""
    x = float(x)
    if not -1.0 / 3.0 <= x <= 1.0:
        raise InvalidParameter(f"Werner weight must lie in [-1/3, 1], got {x}")
    amplitudes = singlet().amplitudes
    entries = (1.0 - x) * np.eye(4, dtype=complex) / 4 + x * np.outer(amplitudes, amplitudes.conj())
    return DensityMatrix(entries)


def x_of(n: int, epsilon: float) -> float:
    """Return the Werner weight eps 2^n / (4 + eps (2^n - 4)) of the projected state."""
    n = check_qubit_count(n)
    epsilon = check_unit_interval(epsilon, "epsilon")
    dim = 2.0**n
    return epsilon * dim / (4.0 + epsilon * (dim - 4.0))


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Schmidt coefficients and bases of a pure state across a bipartition."""

    coefficients: np.ndarray
    left_basis: tuple[PureState, ...]
    right_basis: tuple[PureState, ...]
    bipartition: Bipartition

    def __post_init__(self) -> None:
        """Check the coefficients are nonnegative and descending."""
        coefficients = np.array(self.coefficients, dtype=float)
        if np.any(coefficients < 0) or np.any(np.diff(coefficients) > 0):
            raise InvalidStateError("Schmidt coefficients must be nonnegative and descending")
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def rank(self) -> int:
        """Return the number of nonzero coefficients."""
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        """Return sum_k c_k |L_k> (x) |R_k> in the register's qubit order."""
        vector = sum(
            c * np.kron(left.amplitudes, right.amplitudes)
            for c, left, right in zip(self.coefficients, self.left_basis, self.right_basis)
        )
        order = list(self.bipartition.left) + list(self.bipartition.right)
        n = len(order)
        return np.asarray(vector).reshape((2,) * n).transpose(np.argsort(order)).reshape(-1)


def schmidt_decompose(state: StateLike, bipartition: Bipartition, *, max_qubits: int = GHZ_MAX_QUBITS) -> SchmidtForm:
    """Return the Schmidt form of a pure state across bipartition."""
    psi = as_pure_state(state, max_qubits=max_qubits)
    n = psi.qubit_count
    if bipartition.n != n:
        raise DimensionMismatch(f"bipartition covers {bipartition.n} qubits, state has {n}")

    left, right = bipartition.left, bipartition.right
    block = psi.amplitudes.reshape((2,) * n).transpose(list(left) + list(right)).reshape(2 ** len(left), -1)
    u, s, vh = np.linalg.svd(block, full_matrices=False)
    rank = int(np.count_nonzero(s > SCHMIDT_CUTOFF))
    _LOGGER.debug("Schmidt rank %d across %s | %s", rank, left, right)
    return SchmidtForm(
        coefficients=s[:rank],
        left_basis=tuple(PureState(u[:, k]) for k in range(rank)),
        right_basis=tuple(PureState(vh[k, :]) for k in range(rank)),
        bipartition=bipartition,
    )


@dataclass(frozen=True)
class LocalPhaseMap:
    """Local relabeling that writes the GHZ state as a singlet.

    |up~> is |0...0> on the first n-1 qubits and |down~> is
    tilde_down_phase * |1...1>. When last_ion_flipped is set the last
    qubit's "up" label is the computational |1> and "down" is |0>.
    """

    ghz_phase: complex
    tilde_down_phase: complex
    last_ion_flipped: bool = True


def singlet_form_basis(
    n: int,
    phase_convention: PhaseConvention | str = PhaseConvention.I_POWER,
    *,
    max_dim: int = MATRIX_DIM_CAP,
) -> tuple[list[PureState], LocalPhaseMap]:
    """Return the basis {|up~ up>, |up~ down>, |down~ up>, |down~ down>}.

    In these coordinates the GHZ state reads (0, 1/sqrt2, -1/sqrt2, 0).
    """
    n = check_qubit_count(n)
    dim = 2**n
    if dim > max_dim:
        raise DimensionCapExceeded(dim, max_dim, "basis vector")
    phase = ghz_phase(n, phase_convention)
    tilde_down_phase = -phase

    # (full index, amplitude); full index = 2 * tilde index + last bit
    entries = (
        (1, 1 + 0j),
        (0, 1 + 0j),
        (dim - 1, tilde_down_phase),
        (dim - 2, tilde_down_phase),
    )
    basis = []
    for index, amplitude in entries:
        vector = np.zeros(dim, dtype=complex)
        vector[index] = amplitude
        basis.append(PureState(vector))
    return basis, LocalPhaseMap(ghz_phase=phase, tilde_down_phase=tilde_down_phase)

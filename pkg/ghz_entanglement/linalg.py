"""Dense complex linear algebra on qubit registers.

Qubit 0 is the leftmost (most significant) tensor factor, so the last qubit
is the rightmost one.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
import logging
import math
from typing import Any, Protocol

import numpy as np
from scipy.special import entr

from .const import (
    DEFAULT_LOG_BASE,
    EIG_DIM_CAP,
    EIG_TOL,
    GHZ_MAX_QUBITS,
    HERMITIAN_TOL,
    MATRIX_DIM_CAP,
    MIN_PROJECTION_PROB,
    NORM_TOL,
    ORTHONORMAL_TOL,
    PSD_TOL,
    PT_NEGATIVITY_CUTOFF,
    TRACE_TOL,
)
from .exceptions import (
    DimensionCapExceeded,
    DimensionMismatch,
    InvalidParameter,
    InvalidStateError,
    NonHermitianError,
    ZeroProbabilityProjection,
)

_LOGGER = logging.getLogger(__name__)

ComplexMatrix = np.ndarray


def _read_only(values: Any, ndim: int) -> np.ndarray:
    """Return a read-only complex copy of values."""
    array = np.array(values, dtype=complex)
    if ndim == 1:
        array = array.reshape(-1)
    array.setflags(write=False)
    return array


def qubits_for_dim(dim: int) -> int:
    """Return the qubit count of a register of the given dimension."""
    if dim <= 0 or dim & (dim - 1):
        raise InvalidStateError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def validate_log_base(log_base: float) -> float:
    """Validate an entropy logarithm base."""
    log_base = float(log_base)
    if not log_base > 0 or log_base == 1.0 or not math.isfinite(log_base):
        raise InvalidParameter(f"log base must be positive and different from 1, got {log_base}")
    return log_base


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on a register."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the entries and check the state invariants."""
        entries = _read_only(self.entries, 2)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or not entries.size:
            raise InvalidStateError(f"density matrix must be square, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

        asymmetry = float(np.max(np.abs(entries - entries.conj().T)))
        if asymmetry > HERMITIAN_TOL:
            raise NonHermitianError(f"density matrix is not Hermitian (max deviation {asymmetry:.3e})")

        trace = complex(np.trace(entries))
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace is {trace}, expected 1")

        if self.dim > EIG_DIM_CAP:
            _LOGGER.debug("Skipping PSD check for dimension %d above the eigendecomposition cap", self.dim)
            return
        smallest = float(np.linalg.eigvalsh(entries)[0])
        if smallest < -PSD_TOL:
            raise InvalidStateError(f"density matrix has eigenvalue {smallest:.3e} below -{PSD_TOL}")

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        """Expose the entries to numpy."""
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def dim(self) -> int:
        """Return the matrix dimension."""
        return self.entries.shape[0]

    @property
    def qubit_count(self) -> int:
        """Return the number of qubits in the register."""
        return qubits_for_dim(self.dim)


class Materializable(Protocol):
    """Anything that can produce a dense PureState."""

    def materialize(self, *, max_qubits: int = GHZ_MAX_QUBITS) -> PureState:
        """Return the dense state vector."""


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex vector on a register."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the amplitudes and check normalization."""
        amplitudes = _read_only(self.amplitudes, 1)
        if not amplitudes.size:
            raise InvalidStateError("state vector is empty")
        norm = float(np.linalg.norm(amplitudes))
        if norm == 0.0:
            raise InvalidStateError("degenerate zero vector")
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state vector norm is {norm}, expected 1")
        object.__setattr__(self, "amplitudes", amplitudes)

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        """Expose the amplitudes to numpy."""
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    @property
    def dim(self) -> int:
        """Return the vector length."""
        return self.amplitudes.shape[0]

    @property
    def qubit_count(self) -> int:
        """Return the number of qubits in the register."""
        return qubits_for_dim(self.dim)

    def materialize(self, *, max_qubits: int = GHZ_MAX_QUBITS) -> PureState:
        """Return self; dense states are already materialized."""
        return self

    def projector(self, *, max_dim: int = MATRIX_DIM_CAP) -> DensityMatrix:
        """Return |psi><psi|."""
        return projector(self, max_dim=max_dim)


StateLike = PureState | Materializable | np.ndarray


def as_pure_state(state: StateLike, *, max_qubits: int = GHZ_MAX_QUBITS) -> PureState:
    """Return a dense PureState for any supported state value."""
    if isinstance(state, np.ndarray):
        return PureState(state)
    return state.materialize(max_qubits=max_qubits)


def as_density_matrix(rho: DensityMatrix | np.ndarray) -> DensityMatrix:
    """Return rho as a validated DensityMatrix."""
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho)


def basis_state(label: str) -> PureState:
    """Return the computational basis state for a bit string such as '0101'."""
    if not label or set(label) - {"0", "1"}:
        raise InvalidParameter(f"basis label must be a non-empty bit string, got {label!r}")
    amplitudes = np.zeros(2 ** len(label), dtype=complex)
    amplitudes[int(label, 2)] = 1.0
    return PureState(amplitudes)


@dataclass(frozen=True)
class Bipartition:
    """Ordered split of the register qubits into parts A and B."""

    part_a: tuple[int, ...]
    part_b: tuple[int, ...]
    a_first: bool = True

    def __post_init__(self) -> None:
        """Normalize the parts and check they split 0..n-1."""
        part_a = tuple(sorted(int(q) for q in self.part_a))
        part_b = tuple(sorted(int(q) for q in self.part_b))
        if not part_a or not part_b:
            raise InvalidParameter("both parts of a bipartition must be non-empty")
        if len(set(part_a)) != len(part_a) or len(set(part_b)) != len(part_b) or set(part_a) & set(part_b):
            raise InvalidParameter(f"bipartition parts overlap: {part_a} | {part_b}")
        if set(part_a) | set(part_b) != set(range(len(part_a) + len(part_b))):
            raise InvalidParameter(f"bipartition {part_a} | {part_b} does not cover qubits 0..n-1")
        object.__setattr__(self, "part_a", part_a)
        object.__setattr__(self, "part_b", part_b)

    @property
    def n(self) -> int:
        """Return the number of qubits."""
        return len(self.part_a) + len(self.part_b)

    @property
    def left(self) -> tuple[int, ...]:
        """Return the part written first."""
        return self.part_a if self.a_first else self.part_b

    @property
    def right(self) -> tuple[int, ...]:
        """Return the part written second."""
        return self.part_b if self.a_first else self.part_a

    def swapped(self) -> Bipartition:
        """Return the bipartition with A and B exchanged."""
        return Bipartition(self.part_b, self.part_a, self.a_first)

    @classmethod
    def from_part(cls, part_a: Iterable[int], n: int, a_first: bool = True) -> Bipartition:
        """Build a bipartition from part A and the register size."""
        part_a = tuple(part_a)
        if any(q < 0 or q >= n for q in part_a):
            raise InvalidParameter(f"qubit index out of range for {n} qubits: {part_a}")
        return cls(part_a, tuple(q for q in range(n) if q not in part_a), a_first)

    @classmethod
    def single(cls, n: int, qubit: int) -> Bipartition:
        """Split one qubit (part B) from the other n-1 (part A)."""
        if not 0 <= qubit < n:
            raise InvalidParameter(f"qubit {qubit} out of range for {n} qubits")
        return cls(tuple(q for q in range(n) if q != qubit), (qubit,))

    @classmethod
    def balanced(cls, n: int) -> Bipartition:
        """Split the first floor(n/2) qubits from the rest."""
        return cls.from_part(range(n // 2), n)

    @classmethod
    def all_for(cls, n: int) -> list[Bipartition]:
        """Return every unordered bipartition, part A holding qubit 0."""
        if n < 2:
            raise InvalidParameter(f"a bipartition needs at least 2 qubits, got {n}")
        splits = []
        for size in range(0, n - 1):
            for extra in combinations(range(1, n), size):
                splits.append(cls.from_part((0, *extra), n))
        return splits


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (descending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        """Return the smallest eigenvalue."""
        return float(self.eigenvalues[-1])

    def reconstruct(self) -> np.ndarray:
        """Return V diag(eigenvalues) V^dagger."""
        vectors = self.eigenvectors
        return (vectors * self.eigenvalues) @ vectors.conj().T

    def residual(self, matrix: ComplexMatrix) -> float:
        """Return max |A V - V Lambda| for the decomposed matrix A."""
        matrix = np.asarray(matrix, dtype=complex)
        vectors = self.eigenvectors
        return float(np.max(np.abs(matrix @ vectors - vectors * self.eigenvalues)))

    def orthonormality_error(self) -> float:
        """Return max |V^dagger V - I|."""
        vectors = self.eigenvectors
        gram = vectors.conj().T @ vectors
        return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def _qubit_selection(qubits: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a subset of qubit indices and return it sorted."""
    if isinstance(qubits, Bipartition):
        qubits = qubits.part_a
    selected = tuple(sorted(int(q) for q in qubits))
    if not selected:
        raise InvalidParameter("qubit selection must not be empty")
    if len(set(selected)) != len(selected):
        raise InvalidParameter(f"qubit selection has duplicates: {selected}")
    if selected[0] < 0 or selected[-1] >= n:
        raise InvalidParameter(f"qubit index out of range for {n} qubits: {selected}")
    return selected


def kron(a: ComplexMatrix, b: ComplexMatrix, *, max_dim: int = MATRIX_DIM_CAP) -> np.ndarray:
    """Return the tensor product a (x) b."""
    left = np.asarray(a, dtype=complex)
    right = np.asarray(b, dtype=complex)
    dim = left.shape[0] * right.shape[0]
    if dim > max_dim:
        raise DimensionCapExceeded(dim, max_dim)
    return np.kron(left, right)


def maximally_mixed(n: int, *, max_dim: int = MATRIX_DIM_CAP) -> DensityMatrix:
    """Return I / 2^n."""
    dim = 2**n
    if dim > max_dim:
        raise DimensionCapExceeded(dim, max_dim)
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def projector(state: StateLike, *, max_dim: int = MATRIX_DIM_CAP) -> DensityMatrix:
    """Return |psi><psi| for a pure state."""
    psi = as_pure_state(state)
    if psi.dim > max_dim:
        raise DimensionCapExceeded(psi.dim, max_dim)
    amplitudes = psi.amplitudes
    return DensityMatrix(np.outer(amplitudes, amplitudes.conj()))


def partial_trace(rho: DensityMatrix | np.ndarray, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every qubit not listed in keep.

    The result is ordered by the kept qubit indices in ascending order.
    """
    rho = as_density_matrix(rho)
    n = rho.qubit_count
    kept = _qubit_selection(keep, n)
    if len(kept) == n:
        return rho

    traced = [q for q in range(n) if q not in kept]
    dim_kept, dim_traced = 2 ** len(kept), 2 ** len(traced)
    order = list(kept) + traced
    tensor = (
        rho.entries.reshape((2,) * (2 * n))
        .transpose(order + [n + q for q in order])
        .reshape(dim_kept, dim_traced, dim_kept, dim_traced)
    )
    return DensityMatrix(np.einsum("ijkj->ik", tensor))


def reduced_state(state: StateLike, keep: Iterable[int], *, max_qubits: int = GHZ_MAX_QUBITS) -> DensityMatrix:
    """Reduce a pure state to the kept qubits without forming its projector."""
    psi = as_pure_state(state, max_qubits=max_qubits)
    n = psi.qubit_count
    kept = _qubit_selection(keep, n)
    traced = [q for q in range(n) if q not in kept]
    block = psi.amplitudes.reshape((2,) * n).transpose(list(kept) + traced).reshape(2 ** len(kept), -1)
    reduced = block @ block.conj().T
    return DensityMatrix((reduced + reduced.conj().T) / 2)


def partial_transpose(rho: DensityMatrix | ComplexMatrix, part: Iterable[int]) -> np.ndarray:
    """Transpose the qubits listed in part, leaving the others untouched."""
    matrix = np.asarray(rho, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"partial transpose needs a square matrix, got shape {matrix.shape}")
    n = qubits_for_dim(matrix.shape[0])
    selected = _qubit_selection(part, n)

    axes = list(range(2 * n))
    for qubit in selected:
        axes[qubit], axes[n + qubit] = n + qubit, qubit
    return matrix.reshape((2,) * (2 * n)).transpose(axes).reshape(matrix.shape)


def hermitian_eig(matrix: DensityMatrix | ComplexMatrix, *, max_dim: int = EIG_DIM_CAP) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix; eigenvalues come back descending."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"eigendecomposition needs a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] > max_dim:
        raise DimensionCapExceeded(matrix.shape[0], max_dim, "eigendecomposition")

    scale = max(1.0, float(np.max(np.abs(matrix))))
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
    if asymmetry > EIG_TOL * scale:
        raise NonHermitianError(f"matrix is not Hermitian (max deviation {asymmetry:.3e})")

    eigenvalues, eigenvectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    eigenvalues = eigenvalues[::-1].copy()
    eigenvectors = eigenvectors[:, ::-1].copy()
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return SpectralDecomposition(eigenvalues, eigenvectors)


def fidelity_with_pure(rho: DensityMatrix | np.ndarray, state: StateLike) -> float:
    """Return <psi|rho|psi>."""
    rho = as_density_matrix(rho)
    psi = as_pure_state(state)
    if psi.dim != rho.dim:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match density matrix dimension {rho.dim}")

    value = complex(np.vdot(psi.amplitudes, rho.entries @ psi.amplitudes))
    if abs(value.imag) > HERMITIAN_TOL:
        raise InvalidStateError(f"overlap has imaginary part {value.imag:.3e}")
    return min(1.0, max(0.0, value.real))


def von_neumann_entropy(
    rho: DensityMatrix | np.ndarray,
    log_base: float = DEFAULT_LOG_BASE,
    *,
    max_dim: int = EIG_DIM_CAP,
) -> float:
    """Return -sum(p log p) over the spectrum, with 0 log 0 := 0."""
    log_base = validate_log_base(log_base)
    eigenvalues = hermitian_eig(as_density_matrix(rho), max_dim=max_dim).eigenvalues
    smallest = float(eigenvalues[-1])
    if smallest < -PSD_TOL:
        raise InvalidStateError(f"eigenvalue {smallest:.3e} below -{PSD_TOL}")
    if smallest < 0:
        _LOGGER.debug("Clamping eigenvalue %.3e to zero for entropy", smallest)
    probabilities = np.clip(eigenvalues, 0.0, None)
    return float(np.sum(entr(probabilities))) / math.log(log_base)


def _basis_columns(basis: Sequence[StateLike], dim: int) -> np.ndarray:
    """Stack an orthonormal basis as matrix columns."""
    if not basis:
        raise InvalidParameter("projection basis must not be empty")
    vectors = [as_pure_state(vector).amplitudes for vector in basis]
    for vector in vectors:
        if vector.shape[0] != dim:
            raise DimensionMismatch(f"basis vector dimension {vector.shape[0]} does not match {dim}")
    columns = np.column_stack(vectors)
    gram = columns.conj().T @ columns
    error = float(np.max(np.abs(gram - np.eye(len(vectors)))))
    if error > ORTHONORMAL_TOL:
        raise InvalidParameter(f"projection basis is not orthonormal (max Gram deviation {error:.3e})")
    return columns


def projection_probability(rho: DensityMatrix | np.ndarray, basis: Sequence[StateLike]) -> float:
    """Return tr(P rho P) for the projector P onto span(basis)."""
    rho = as_density_matrix(rho)
    columns = _basis_columns(basis, rho.dim)
    return float(np.trace(columns.conj().T @ rho.entries @ columns).real)


def project_renormalize(rho: DensityMatrix | np.ndarray, basis: Sequence[StateLike]) -> DensityMatrix:
    """Project rho onto span(basis) and renormalize.

    The result is written in the coordinates of basis, in its order.
    """
    rho = as_density_matrix(rho)
    columns = _basis_columns(basis, rho.dim)
    block = columns.conj().T @ rho.entries @ columns
    probability = float(np.trace(block).real)
    if probability <= MIN_PROJECTION_PROB:
        raise ZeroProbabilityProjection(f"projection probability {probability:.3e} is zero")
    block = block / probability
    return DensityMatrix((block + block.conj().T) / 2)


def negativity(
    rho: DensityMatrix | ComplexMatrix,
    part: Iterable[int],
    *,
    max_dim: int = EIG_DIM_CAP,
) -> float:
    """Return the magnitude of the negative partial-transpose spectrum."""
    spectrum = hermitian_eig(partial_transpose(rho, part), max_dim=max_dim).eigenvalues
    return float(-np.sum(spectrum[spectrum < PT_NEGATIVITY_CUTOFF]))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Return a random unitary from the QR of a complex Gaussian matrix."""
    gaussian = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def random_pure_state(dim: int, rng: np.random.Generator) -> PureState:
    """Return a random normalized state vector."""
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(vector / np.linalg.norm(vector))


def random_product_state(n: int, rng: np.random.Generator, *, max_dim: int = MATRIX_DIM_CAP) -> PureState:
    """Return a tensor product of n random single-qubit states."""
    amplitudes = np.ones(1, dtype=complex)
    for _ in range(n):
        amplitudes = kron(amplitudes, random_pure_state(2, rng).amplitudes, max_dim=max_dim)
    return PureState(amplitudes)

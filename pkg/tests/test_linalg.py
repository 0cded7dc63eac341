"""Tests for the dense linear algebra helpers."""
import numpy as np
import pytest

from ghz_entanglement.exceptions import (
    DimensionCapExceeded,
    DimensionMismatch,
    InvalidParameter,
    InvalidStateError,
    NonHermitianError,
    ZeroProbabilityProjection,
)
from ghz_entanglement.linalg import (
    Bipartition,
    DensityMatrix,
    PureState,
    basis_state,
    fidelity_with_pure,
    haar_unitary,
    hermitian_eig,
    kron,
    maximally_mixed,
    negativity,
    partial_trace,
    partial_transpose,
    project_renormalize,
    projection_probability,
    projector,
    qubits_for_dim,
    random_product_state,
    random_pure_state,
    reduced_state,
    von_neumann_entropy,
)
from ghz_entanglement.states import (
    PseudoPureParams,
    ghz_state,
    pseudo_pure,
    singlet,
    singlet_form_basis,
)

SINGLET_OVERLAP_BOUND = 0.5 + 1e-10


def test_kron_dimension_and_cap():
    """Tensor products multiply dimensions and respect the cap."""
    a = np.eye(2)
    b = np.eye(4)
    assert kron(a, b).shape == (8, 8)
    with pytest.raises(DimensionCapExceeded):
        kron(a, b, max_dim=4)


def test_qubits_for_dim():
    assert qubits_for_dim(16) == 4
    with pytest.raises(InvalidStateError):
        qubits_for_dim(6)


def test_density_matrix_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.eye(2))


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_density_matrix_is_read_only():
    rho = maximally_mixed(2)
    with pytest.raises(ValueError):
        rho.entries[0, 0] = 1.0


def test_pure_state_rejects_zero_and_unnormalized():
    with pytest.raises(InvalidStateError, match="degenerate"):
        PureState(np.zeros(4))
    with pytest.raises(InvalidStateError):
        PureState(np.array([1.0, 1.0]))


def test_basis_state_label():
    state = basis_state("0101")
    assert state.dim == 16
    assert state.amplitudes[5] == 1.0
    with pytest.raises(InvalidParameter):
        basis_state("012")


def test_partial_trace_of_product(random_density):
    """Tracing out one factor of a product state returns the other."""
    rho_a = random_density(2)
    rho_b = random_density(4)
    product = DensityMatrix(kron(rho_a.entries, rho_b.entries))

    np.testing.assert_allclose(partial_trace(product, [0]).entries, rho_a.entries, atol=1e-12)
    np.testing.assert_allclose(partial_trace(product, [1, 2]).entries, rho_b.entries, atol=1e-12)


def test_partial_trace_keep_everything_is_identity(random_density):
    rho = random_density(8)
    assert partial_trace(rho, [2, 0, 1]) is rho


def test_partial_trace_rejects_bad_selection(random_density):
    rho = random_density(4)
    with pytest.raises(InvalidParameter):
        partial_trace(rho, [2])
    with pytest.raises(InvalidParameter):
        partial_trace(rho, [])


def test_reduced_state_matches_partial_trace(rng):
    psi = random_pure_state(16, rng)
    expected = partial_trace(projector(psi), [1, 3])
    np.testing.assert_allclose(reduced_state(psi, [1, 3]).entries, expected.entries, atol=1e-12)


def test_partial_transpose_is_involution(random_density):
    rho = random_density(8)
    twice = partial_transpose(partial_transpose(rho, [0, 2]), [0, 2])
    np.testing.assert_allclose(twice, rho.entries, atol=1e-15)


def test_partial_transpose_of_complement_has_same_spectrum(random_density):
    """The transposes over A and over B differ by a full transpose."""
    rho = random_density(8)
    spectrum_a = hermitian_eig(partial_transpose(rho, [0])).eigenvalues
    spectrum_b = hermitian_eig(partial_transpose(rho, [1, 2])).eigenvalues
    np.testing.assert_allclose(spectrum_a, spectrum_b, atol=1e-12)


def test_partial_transpose_of_singlet():
    spectrum = hermitian_eig(partial_transpose(singlet().projector(), [0])).eigenvalues
    np.testing.assert_allclose(spectrum, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_partial_transpose_needs_square_matrix():
    with pytest.raises(DimensionMismatch):
        partial_transpose(np.zeros((4, 2)), [0])


@pytest.mark.parametrize("dim", [2, 16, 128, 1024])
def test_hermitian_eig_accuracy(random_density, dim):
    rho = random_density(dim)
    spectral = hermitian_eig(rho)
    assert np.all(np.diff(spectral.eigenvalues) <= 0)
    assert spectral.residual(rho.entries) < 1e-10
    assert spectral.orthonormality_error() < 1e-10
    np.testing.assert_allclose(spectral.reconstruct(), rho.entries, atol=1e-12)


def test_hermitian_eig_rejects_non_hermitian_and_large():
    with pytest.raises(NonHermitianError):
        hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionCapExceeded):
        hermitian_eig(np.eye(8), max_dim=4)


@pytest.mark.parametrize(
    ("spectrum", "base", "expected"),
    [
        ((0.625, 0.125, 0.125, 0.125), 2, 1.548795),
        ((0.25, 0.25, 0.25, 0.25), 2, 2.0),
        ((1.0, 0.0, 0.0, 0.0), 2, 0.0),
        ((0.5, 0.5), np.e, np.log(2)),
    ],
)
def test_von_neumann_entropy(spectrum, base, expected):
    rho = DensityMatrix(np.diag(spectrum).astype(complex))
    assert von_neumann_entropy(rho, base) == pytest.approx(expected, abs=1e-6)


def test_von_neumann_entropy_invariant_under_unitaries(rng):
    rho = DensityMatrix(np.diag([0.625, 0.125, 0.125, 0.125]).astype(complex))
    unitary = haar_unitary(4, rng)
    rotated = unitary @ rho.entries @ unitary.conj().T
    rotated = DensityMatrix((rotated + rotated.conj().T) / 2)
    assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


@pytest.mark.parametrize("base", [1.0, 0.0, -2.0])
def test_von_neumann_entropy_rejects_bad_base(base):
    with pytest.raises(InvalidParameter):
        von_neumann_entropy(maximally_mixed(1), base)


def test_haar_unitary_is_unitary(rng):
    unitary = haar_unitary(8, rng)
    np.testing.assert_allclose(unitary.conj().T @ unitary, np.eye(8), atol=1e-12)


def test_fidelity_of_pseudo_pure_state():
    rho = pseudo_pure(PseudoPureParams(4, 0.54))
    assert fidelity_with_pure(rho, ghz_state(4)) == pytest.approx(0.56875, abs=1e-12)


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fidelity_with_pure(maximally_mixed(2), ghz_state(3))


def test_projection_probability_of_pseudo_pure_state():
    basis, _ = singlet_form_basis(4)
    rho = pseudo_pure(PseudoPureParams(4, 0.54))
    assert projection_probability(rho, basis) == pytest.approx(0.655, abs=1e-12)


def test_project_renormalize_zero_probability():
    with pytest.raises(ZeroProbabilityProjection):
        project_renormalize(basis_state("00").projector(), [basis_state("11")])


def test_project_renormalize_rejects_bad_basis():
    with pytest.raises(InvalidParameter):
        project_renormalize(maximally_mixed(2), [])
    with pytest.raises(InvalidParameter):
        project_renormalize(maximally_mixed(2), [basis_state("00"), basis_state("00")])
    with pytest.raises(DimensionMismatch):
        project_renormalize(maximally_mixed(2), [basis_state("000")])


def test_project_renormalize_is_unit_trace(random_density):
    rho = random_density(8)
    projected = project_renormalize(rho, [basis_state("000"), basis_state("101")])
    assert projected.dim == 2
    assert np.trace(projected.entries).real == pytest.approx(1.0, abs=1e-12)


def test_random_product_state_has_no_entanglement(rng):
    psi = random_product_state(4, rng)
    assert psi.dim == 16
    for qubit in range(4):
        marginal = partial_trace(projector(psi), [qubit])
        assert np.trace(marginal.entries @ marginal.entries).real == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", range(2, 7))
def test_projected_product_states_stay_below_half_singlet_overlap(n, rng):
    """Local projection cannot lift a product state over the fidelity bound."""
    basis, _ = singlet_form_basis(n)
    for _ in range(200):
        product = projector(random_product_state(n, rng))
        projected = project_renormalize(product, basis)
        assert fidelity_with_pure(projected, singlet()) <= SINGLET_OVERLAP_BOUND


def test_negativity_of_singlet_and_mixed_state():
    assert negativity(singlet().projector(), [0]) == pytest.approx(0.5, abs=1e-12)
    assert negativity(maximally_mixed(3), [0]) == 0.0


def test_bipartition_helpers():
    assert len(Bipartition.all_for(4)) == 7
    assert all(0 in split.part_a for split in Bipartition.all_for(5))
    assert Bipartition.balanced(5).part_a == (0, 1)
    single = Bipartition.single(4, 3)
    assert single.part_b == (3,)
    assert single.swapped().part_a == (3,)
    assert Bipartition.from_part([2, 0], 3).part_b == (1,)


def test_bipartition_validation():
    with pytest.raises(InvalidParameter):
        Bipartition((0, 1), (1, 2))
    with pytest.raises(InvalidParameter):
        Bipartition((0,), (2,))
    with pytest.raises(InvalidParameter):
        Bipartition((), (0, 1))

"""Tests for the separability criteria."""
import numpy as np
import pytest

from ghz_entanglement.exceptions import DimensionMismatch, InvalidParameter, InvalidStateError
from ghz_entanglement.linalg import Bipartition, basis_state, negativity, project_renormalize
from ghz_entanglement.separability import (
    Criterion,
    SeparabilityVerdict,
    Verdict,
    fidelity_criterion,
    is_fully_nonseparable,
    ppt_all_bipartitions,
    ppt_check,
    pseudo_pure_min_pt_eigenvalue,
    pseudo_pure_negativity,
    purity_threshold,
)
from ghz_entanglement.states import PseudoPureParams, ghz_state, pseudo_pure, singlet, singlet_form_basis, werner

THRESHOLD_GRID = [round(0.001 * i, 12) for i in range(1001)]


def test_purity_threshold_values():
    assert round(purity_threshold(4), 5) == 0.11111
    assert purity_threshold(2) == pytest.approx(1 / 3)
    assert purity_threshold(3) == 0.2


def test_four_ion_point_is_nonseparable():
    verdict = is_fully_nonseparable(4, 0.54)
    assert verdict.separable_flag is Verdict.NONSEPARABLE
    assert verdict.criterion is Criterion.PURITY_THRESHOLD
    assert verdict.margin == pytest.approx(0.54 - 1 / 9)


@pytest.mark.parametrize("epsilon", [0.0, 0.05, 1 / 9])
def test_purity_at_or_below_threshold_is_undecided(epsilon):
    verdict = is_fully_nonseparable(4, epsilon)
    assert verdict.separable_flag is Verdict.UNDECIDED
    assert verdict.note
    assert verdict.margin <= 0


def test_ppt_all_bipartitions_of_four_ion_state():
    """Every one of the 7 splits of the 4-ion state has a negative PT eigenvalue."""
    rho = pseudo_pure(PseudoPureParams(4, 0.54))
    verdicts = ppt_all_bipartitions(rho)
    assert len(verdicts) == 7
    for _, verdict in verdicts:
        assert verdict.is_nonseparable
        assert verdict.witness_value < -1e-10
        assert verdict.witness_value == pytest.approx(pseudo_pure_min_pt_eigenvalue(4, 0.54), abs=1e-12)


def test_ppt_two_qubit_verdicts():
    separable = ppt_check(werner(0.2), Bipartition.single(2, 1))
    assert separable.separable_flag is Verdict.SEPARABLE
    entangled = ppt_check(singlet().projector(), Bipartition.single(2, 1))
    assert entangled.separable_flag is Verdict.NONSEPARABLE
    assert entangled.witness_value == pytest.approx(-0.5, abs=1e-12)


def test_ppt_is_undecided_beyond_two_qubits():
    verdict = ppt_check(pseudo_pure(PseudoPureParams(3, 0.1)), Bipartition.balanced(3))
    assert verdict.separable_flag is Verdict.UNDECIDED
    assert "necessary" in verdict.note


def test_ppt_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ppt_check(werner(0.5), Bipartition.single(3, 0))


@pytest.mark.parametrize("n", range(2, 9))
def test_ppt_flip_brackets_purity_threshold(n):
    """The PPT verdict flips between adjacent grid points around the threshold."""
    threshold = purity_threshold(n)
    below = max(epsilon for epsilon in THRESHOLD_GRID if epsilon <= threshold)
    above = min(epsilon for epsilon in THRESHOLD_GRID if epsilon > threshold)
    balanced = Bipartition.balanced(n)
    assert not ppt_check(pseudo_pure(PseudoPureParams(n, below)), balanced).is_nonseparable
    assert ppt_check(pseudo_pure(PseudoPureParams(n, above)), balanced).is_nonseparable


@pytest.mark.parametrize("n", range(2, 7))
def test_ppt_agrees_with_purity_threshold(n):
    balanced = Bipartition.balanced(n)
    for epsilon in [round(0.05 * i, 12) for i in range(21)]:
        ppt = ppt_check(pseudo_pure(PseudoPureParams(n, epsilon)), balanced)
        assert ppt.is_nonseparable == is_fully_nonseparable(n, epsilon).is_nonseparable


@pytest.mark.parametrize(
    ("x", "expected"),
    [(0.0, Verdict.SEPARABLE), (0.2, Verdict.SEPARABLE), (0.34, Verdict.NONSEPARABLE), (1.0, Verdict.NONSEPARABLE)],
)
def test_fidelity_criterion_on_werner_states(x, expected):
    verdict = fidelity_criterion(werner(x), singlet())
    assert verdict.witness_value == pytest.approx((1 + 3 * x) / 4, abs=1e-12)
    assert verdict.separable_flag is expected
    ppt = ppt_check(werner(x), Bipartition.single(2, 1))
    assert ppt.separable_flag is expected


def test_ppt_notes_eigenvalues_inside_cutoff():
    """Werner states just above x = 1/3 are entangled but read as PPT."""
    verdict = ppt_check(werner(1 / 3 + 5e-11), Bipartition.single(2, 1))
    assert verdict.separable_flag is Verdict.SEPARABLE
    assert verdict.witness_value < 0
    assert "cutoff" in verdict.note
    assert "cutoff" not in ppt_check(werner(0.2), Bipartition.single(2, 1)).note


def test_projection_keeps_entanglement_of_full_state():
    basis, _ = singlet_form_basis(4)
    rho = pseudo_pure(PseudoPureParams(4, 0.2))
    assert fidelity_criterion(project_renormalize(rho, basis), singlet()).is_nonseparable
    assert is_fully_nonseparable(4, 0.2).is_nonseparable
    assert fidelity_criterion(rho, ghz_state(4)).separable_flag is Verdict.UNDECIDED


@pytest.mark.parametrize("n", range(2, 7))
def test_projected_verdict_implies_full_verdict(n):
    """A nonseparable projected state comes from a nonseparable pseudo-pure state."""
    basis, _ = singlet_form_basis(n)
    for epsilon in [round(0.05 * i, 12) for i in range(21)]:
        projected = project_renormalize(pseudo_pure(PseudoPureParams(n, epsilon)), basis)
        by_fidelity = fidelity_criterion(projected, singlet())
        if by_fidelity.margin > 1e-10:
            assert is_fully_nonseparable(n, epsilon).is_nonseparable


def test_fidelity_criterion_outside_werner_family_is_undecided():
    verdict = fidelity_criterion(basis_state("00").projector(), singlet())
    assert verdict.separable_flag is Verdict.UNDECIDED
    assert verdict.witness_value == 0.0


def test_fidelity_criterion_on_pseudo_pure_state():
    verdict = fidelity_criterion(pseudo_pure(PseudoPureParams(4, 0.54)), ghz_state(4))
    assert verdict.separable_flag is Verdict.NONSEPARABLE
    assert verdict.witness_value == pytest.approx(0.56875, abs=1e-12)


def test_fidelity_criterion_needs_maximally_entangled_target():
    with pytest.raises(InvalidParameter):
        fidelity_criterion(werner(0.5), basis_state("01"))
    with pytest.raises(DimensionMismatch):
        fidelity_criterion(werner(0.5), ghz_state(3))


def test_verdict_must_match_witness():
    with pytest.raises(InvalidStateError):
        SeparabilityVerdict(Criterion.PURITY_THRESHOLD, Verdict.NONSEPARABLE, 0.05, 0.1)
    with pytest.raises(InvalidStateError):
        SeparabilityVerdict(Criterion.PPT, Verdict.SEPARABLE, -0.2, -1e-10)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("epsilon", [0.0, 0.1, 0.2, 0.54, 0.9, 1.0])
def test_negativity_closed_form(n, epsilon):
    rho = pseudo_pure(PseudoPureParams(n, epsilon))
    for bipartition in (Bipartition.single(n, n - 1), Bipartition.balanced(n)):
        dense = negativity(rho, bipartition.part_a)
        assert dense == pytest.approx(pseudo_pure_negativity(n, epsilon), abs=1e-10)


def test_min_pt_eigenvalue_sign_matches_threshold():
    for n in range(2, 12):
        threshold = purity_threshold(n)
        assert pseudo_pure_min_pt_eigenvalue(n, threshold) == pytest.approx(0.0, abs=1e-15)
        assert pseudo_pure_min_pt_eigenvalue(n, min(1.0, threshold + 0.01)) < 0
        assert np.sign(pseudo_pure_min_pt_eigenvalue(n, threshold / 2)) == 1

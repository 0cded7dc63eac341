"""Runtime budgets for the closed forms and the dense cross-checks."""
import time

import pytest

from ghz_entanglement.linalg import Bipartition, fidelity_with_pure, project_renormalize
from ghz_entanglement.measures import (
    bipartite_average_measure,
    operator_norm_measure,
    pure_entanglement_entropy,
    teleportation_measure,
)
from ghz_entanglement.separability import is_fully_nonseparable, ppt_all_bipartitions, purity_threshold
from ghz_entanglement.states import (
    PseudoPureParams,
    ghz_state,
    pseudo_pure,
    singlet_form_basis,
    werner,
    x_of,
)

REPEATS = 200


def _average_seconds(func, repeats=REPEATS):
    """Return the mean wall time of func over repeats calls."""
    start = time.perf_counter()
    for _ in range(repeats):
        func()
    return (time.perf_counter() - start) / repeats


@pytest.mark.parametrize(
    "func",
    [
        lambda: purity_threshold(4),
        lambda: bipartite_average_measure(4, 0.54),
        lambda: teleportation_measure(4, 0.54),
        lambda: operator_norm_measure(4, 0.54),
    ],
    ids=["threshold", "bipartite", "teleportation", "operator_norm"],
)
def test_closed_forms_under_a_millisecond(func):
    assert _average_seconds(func) < 1e-3


def test_fidelity_check_under_ten_milliseconds():
    def check():
        rho = pseudo_pure(PseudoPureParams(4, 0.54))
        assert abs(fidelity_with_pure(rho, ghz_state(4)) - 0.56875) < 1e-12

    assert _average_seconds(check, 50) < 1e-2


def test_four_ion_verdict_under_a_second():
    start = time.perf_counter()
    assert is_fully_nonseparable(4, 0.54).is_nonseparable
    verdicts = ppt_all_bipartitions(pseudo_pure(PseudoPureParams(4, 0.54)))
    assert all(verdict.is_nonseparable for _, verdict in verdicts)
    assert time.perf_counter() - start < 1.0


def test_projection_sweep_under_thirty_seconds():
    start = time.perf_counter()
    for n in range(2, 9):
        basis, _ = singlet_form_basis(n)
        for step in range(11):
            epsilon = round(0.1 * step, 12)
            projected = project_renormalize(pseudo_pure(PseudoPureParams(n, epsilon)), basis)
            assert abs(projected.entries - werner(x_of(n, epsilon)).entries).max() < 1e-12
    assert time.perf_counter() - start < 30.0


def test_ghz_entropy_sweep_under_thirty_seconds():
    start = time.perf_counter()
    for n in range(2, 9):
        for bipartition in [Bipartition.single(n, q) for q in range(n)] + [Bipartition.balanced(n)]:
            assert abs(pure_entanglement_entropy(ghz_state(n), bipartition) - 1.0) < 1e-10
    assert time.perf_counter() - start < 30.0

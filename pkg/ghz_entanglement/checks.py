"""Oracle checks and reproduction of the four-ion headline numbers."""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
import logging

import numpy as np

from .const import (
    DEFAULT_EIG_QUBIT_CAP,
    DEFAULT_LOG_BASE,
    DEFAULT_MATRIX_QUBIT_CAP,
    FIDELITY_BOUND,
    FOUR_ION_E_BIPARTITE_AVG,
    FOUR_ION_E_OPNORM,
    FOUR_ION_E_TELEPORT,
    FOUR_ION_EPSILON,
    FOUR_ION_FIDELITY,
    FOUR_ION_FIDELITY_TOL,
    FOUR_ION_N,
    FOUR_ION_OPNORM_TOL,
    FOUR_ION_ROUNDING_TOL,
    FOUR_ION_THRESHOLD,
    VERIFY_MAX_QUBITS,
    VERIFY_TOL,
    WERNER_SEPARABLE_X,
)
from .exceptions import CheckFailed, DimensionCapExceeded
from .linalg import (
    Bipartition,
    DensityMatrix,
    fidelity_with_pure,
    hermitian_eig,
    negativity,
    partial_transpose,
    project_renormalize,
    projector,
    random_product_state,
)
from .measures import (
    MeasureReport,
    XFormula,
    log2_unit,
    ls_entanglement,
    ls_lambda,
    measure_report,
    pure_entanglement_entropy,
)
from .separability import (
    Verdict,
    fidelity_criterion,
    is_fully_nonseparable,
    ppt_check,
    pseudo_pure_min_pt_eigenvalue,
    pseudo_pure_negativity,
    purity_threshold,
)
from .states import (
    PhaseConvention,
    PseudoPureParams,
    ghz_state,
    pseudo_pure,
    singlet,
    singlet_form_basis,
    werner,
    x_of,
)

_LOGGER = logging.getLogger(__name__)

# failures listed in a check's detail before truncating
_MAX_REPORTED = 3

# random product states drawn per register size
_PRODUCT_SAMPLES = 20
_PRODUCT_SEED = 20240917

_MEASURE_NAMES = ("fidelity", "e_eq10", "e_teleport", "e_opnorm")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    detail: str = ""


def _result(name: str, failures: list[str], detail: str) -> CheckResult:
    """Build a CheckResult from collected failure messages."""
    if not failures:
        return CheckResult(name, True, detail)
    shown = "; ".join(failures[:_MAX_REPORTED])
    if len(failures) > _MAX_REPORTED:
        shown += f"; ... {len(failures) - _MAX_REPORTED} more"
    return CheckResult(name, False, shown)


@dataclass(frozen=True)
class ReproductionRow:
    """One headline number against its recomputed value."""

    name: str
    expected: float | str
    actual: float | str
    tolerance: float
    passed: bool

    @property
    def diff(self) -> float | None:
        """Return actual - expected for numeric rows."""
        if isinstance(self.expected, str) or isinstance(self.actual, str):
            return None
        return self.actual - self.expected


@dataclass(frozen=True)
class ReproductionSummary:
    """All headline rows and the base they were computed in."""

    rows: tuple[ReproductionRow, ...]
    log_base: float

    @property
    def passed(self) -> bool:
        """Return True when every row passed."""
        return all(row.passed for row in self.rows)


def _numeric_row(name: str, expected: float, actual: float, tolerance: float) -> ReproductionRow:
    """Compare a numeric headline value within tolerance."""
    return ReproductionRow(name, expected, actual, tolerance, abs(actual - expected) <= tolerance)


def paper_reproduction(
    log_base: float = DEFAULT_LOG_BASE,
    *,
    x_formula: XFormula = x_of,
) -> ReproductionSummary:
    """Recompute the N=4, eps=0.54 headline numbers.

    Measures are compared in multiples of log 2 whatever the base.
    """
    report = measure_report(FOUR_ION_N, FOUR_ION_EPSILON, log_base, x_formula=x_formula)
    threshold = round(report.threshold, 5)
    rows = (
        ReproductionRow(
            "threshold (5 decimals)",
            FOUR_ION_THRESHOLD,
            threshold,
            0.0,
            threshold == FOUR_ION_THRESHOLD,
        ),
        ReproductionRow(
            f"verdict at eps={FOUR_ION_EPSILON}",
            Verdict.NONSEPARABLE.value,
            report.verdict.value,
            0.0,
            report.verdict is Verdict.NONSEPARABLE,
        ),
        _numeric_row(
            "bipartite average [log 2]",
            FOUR_ION_E_BIPARTITE_AVG,
            report.in_log2_units(report.e_bipartite_avg),
            FOUR_ION_ROUNDING_TOL,
        ),
        _numeric_row(
            "teleportation [log 2]",
            FOUR_ION_E_TELEPORT,
            report.in_log2_units(report.e_teleport),
            FOUR_ION_ROUNDING_TOL,
        ),
        _numeric_row(
            "operator norm [log 2]",
            FOUR_ION_E_OPNORM,
            report.in_log2_units(report.e_opnorm),
            FOUR_ION_OPNORM_TOL,
        ),
    )
    summary = ReproductionSummary(rows, float(log_base))
    _LOGGER.info(
        "Reproduction %s (%d/%d rows)",
        "passed" if summary.passed else "failed",
        sum(row.passed for row in rows),
        len(rows),
    )
    return summary


def _cell(value: float | str | None, precision: int) -> str:
    """Format one reproduction cell."""
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    return f"{value:.{precision}f}"


def format_reproduction(summary: ReproductionSummary, precision: int = 5) -> str:
    """Render the reproduction rows as a diff table."""
    header = f"{'check':<28} {'expected':>14} {'actual':>14} {'diff':>10}  status"
    lines = [header, "-" * len(header)]
    for row in summary.rows:
        lines.append(
            f"{row.name:<28} {_cell(row.expected, precision):>14} "
            f"{_cell(row.actual, precision):>14} {_cell(row.diff, precision):>10}  "
            f"{'PASS' if row.passed else 'FAIL'}"
        )
    return "\n".join(lines) + "\n"


def verify_report(
    report: MeasureReport,
    *,
    phase_convention: PhaseConvention | str = PhaseConvention.I_POWER,
    matrix_qubit_cap: int = DEFAULT_MATRIX_QUBIT_CAP,
    eig_qubit_cap: int = DEFAULT_EIG_QUBIT_CAP,
) -> list[CheckResult]:
    """Rebuild one sweep point with dense matrices and compare with the closed forms.

    Raises CheckFailed when any quantity differs by more than VERIFY_TOL.
    """
    n, epsilon = report.n, report.epsilon
    if n > VERIFY_MAX_QUBITS:
        raise DimensionCapExceeded(2**n, 2**VERIFY_MAX_QUBITS, "verification matrix")
    max_dim, eig_dim = 2**matrix_qubit_cap, 2**eig_qubit_cap

    rho = pseudo_pure(PseudoPureParams(n, epsilon, phase_convention), max_dim=max_dim)
    target = ghz_state(n, phase_convention)
    basis, _ = singlet_form_basis(n, phase_convention, max_dim=max_dim)
    balanced = Bipartition.balanced(n)

    deviations = {
        "fidelity": abs(fidelity_with_pure(rho, target) - report.fidelity),
        "projection": float(
            np.max(np.abs(project_renormalize(rho, basis).entries - werner(report.x).entries))
        ),
        "ppt_min_eigenvalue": abs(
            hermitian_eig(partial_transpose(rho, balanced.part_a), max_dim=eig_dim).min_eigenvalue
            - pseudo_pure_min_pt_eigenvalue(n, epsilon)
        ),
        "ghz_entropy": abs(
            pure_entanglement_entropy(target, balanced, report.log_base, max_dim=eig_dim)
            - log2_unit(report.log_base)
        ),
    }
    results = [
        CheckResult(f"verify {name} n={n} eps={epsilon}", deviation <= VERIFY_TOL, f"deviation {deviation:.3e}")
        for name, deviation in deviations.items()
    ]
    failed = [result for result in results if not result.passed]
    if failed:
        raise CheckFailed("; ".join(f"{result.name}: {result.detail}" for result in failed))
    _LOGGER.debug("Dense verification passed for n=%d eps=%s", n, epsilon)
    return results


def _dense(n: int, epsilon: float, convention: PhaseConvention, matrix_dim: int) -> DensityMatrix:
    """Build the dense pseudo-pure state for one grid point."""
    return pseudo_pure(PseudoPureParams(n, epsilon, convention), max_dim=matrix_dim)


def _check_ppt_threshold(
    ns: Sequence[int],
    epsilons: Sequence[float],
    phase_convention: PhaseConvention,
    matrix_dim: int,
    eig_dim: int,
) -> CheckResult:
    """PPT on the balanced split flips exactly where the purity threshold lies."""
    failures: list[str] = []
    brackets: list[str] = []
    for n in ns:
        threshold = purity_threshold(n)
        below, above = None, None
        for epsilon in epsilons:
            rho = _dense(n, epsilon, phase_convention, matrix_dim)
            ppt = ppt_check(rho, Bipartition.balanced(n), max_dim=eig_dim)
            purity = is_fully_nonseparable(n, epsilon)
            if ppt.is_nonseparable != purity.is_nonseparable:
                failures.append(
                    f"n={n} eps={epsilon}: ppt {ppt.separable_flag.value}, "
                    f"purity {purity.separable_flag.value}"
                )
            if ppt.is_nonseparable:
                above = epsilon if above is None else above
            else:
                below = epsilon
        if below is not None and above is not None:
            if not below <= threshold < above:
                failures.append(f"n={n}: flip in ({below}, {above}] misses threshold {threshold:.6f}")
            brackets.append(f"n={n}: ({below}, {above}]")
    return _result("ppt flips at purity threshold", failures, ", ".join(brackets))


def _check_werner_fidelity_vs_ppt(xs: Sequence[float]) -> CheckResult:
    """For two-qubit Werner states the fidelity and PPT verdicts coincide."""
    failures = []
    target = singlet()
    for x in xs:
        rho = werner(x)
        by_fidelity = fidelity_criterion(rho, target).separable_flag
        by_ppt = ppt_check(rho, Bipartition.single(2, 1)).separable_flag
        if by_fidelity is not by_ppt:
            failures.append(f"x={x}: fidelity {by_fidelity.value}, ppt {by_ppt.value}")
    return _result("werner fidelity agrees with ppt", failures, f"{len(xs)} weights")


def _check_projection_chain(
    ns: Sequence[int], epsilons: Sequence[float], phase_convention: PhaseConvention, matrix_dim: int
) -> CheckResult:
    """Projecting onto the singlet-form basis gives werner(x_of(n, eps))."""
    failures = []
    worst = 0.0
    for n in ns:
        basis, _ = singlet_form_basis(n, phase_convention, max_dim=matrix_dim)
        for epsilon in epsilons:
            projected = project_renormalize(_dense(n, epsilon, phase_convention, matrix_dim), basis)
            deviation = float(np.max(np.abs(projected.entries - werner(x_of(n, epsilon)).entries)))
            worst = max(worst, deviation)
            if deviation > VERIFY_TOL:
                failures.append(f"n={n} eps={epsilon}: deviation {deviation:.3e}")
    return _result("projection gives werner(x)", failures, f"max deviation {worst:.3e}")


def _check_product_projection(
    ns: Sequence[int],
    phase_convention: PhaseConvention,
    matrix_dim: int,
    samples: int = _PRODUCT_SAMPLES,
) -> CheckResult:
    """Projected product states keep overlap <= 1/2 with the singlet."""
    rng = np.random.default_rng(_PRODUCT_SEED)
    target = singlet()
    failures = []
    worst = 0.0
    for n in ns:
        basis, _ = singlet_form_basis(n, phase_convention, max_dim=matrix_dim)
        for _ in range(samples):
            product = projector(random_product_state(n, rng, max_dim=matrix_dim), max_dim=matrix_dim)
            overlap = fidelity_with_pure(project_renormalize(product, basis), target)
            worst = max(worst, overlap)
            if overlap > FIDELITY_BOUND + VERIFY_TOL:
                failures.append(f"n={n}: singlet overlap {overlap:.6f}")
    return _result("projected product states stay separable", failures, f"max overlap {worst:.5f}")


def _check_projection_monotonicity(
    ns: Sequence[int], epsilons: Sequence[float], phase_convention: PhaseConvention, matrix_dim: int
) -> CheckResult:
    """An entangled projected state implies an entangled unprojected state."""
    failures = []
    target = singlet()
    for n in ns:
        basis, _ = singlet_form_basis(n, phase_convention, max_dim=matrix_dim)
        for epsilon in epsilons:
            projected = project_renormalize(_dense(n, epsilon, phase_convention, matrix_dim), basis)
            # witnesses within VERIFY_TOL of 1/2 sit on the threshold itself
            if fidelity_criterion(projected, target).margin <= VERIFY_TOL:
                continue
            if not is_fully_nonseparable(n, epsilon).is_nonseparable:
                failures.append(f"n={n} eps={epsilon}: projected state nonseparable, full state not")
    return _result("projection cannot create entanglement", failures, "")


def _check_four_ion_fidelity() -> CheckResult:
    """The four-ion GHZ fidelity lies within the quoted 0.57 +- 0.02."""
    rho = pseudo_pure(PseudoPureParams(FOUR_ION_N, FOUR_ION_EPSILON))
    fidelity = fidelity_with_pure(rho, ghz_state(FOUR_ION_N))
    failures = [] if abs(fidelity - FOUR_ION_FIDELITY) <= FOUR_ION_FIDELITY_TOL else [f"F = {fidelity:.5f}"]
    return _result("four-ion fidelity", failures, f"F = {fidelity:.5f}")


def _check_negativity(
    ns: Sequence[int],
    epsilons: Sequence[float],
    phase_convention: PhaseConvention,
    matrix_dim: int,
    eig_dim: int,
) -> CheckResult:
    """Dense negativity of the balanced split matches the closed form."""
    failures = []
    for n in ns:
        part = Bipartition.balanced(n).part_a
        for epsilon in epsilons:
            dense = negativity(_dense(n, epsilon, phase_convention, matrix_dim), part, max_dim=eig_dim)
            closed = pseudo_pure_negativity(n, epsilon)
            if abs(dense - closed) > VERIFY_TOL:
                failures.append(f"n={n} eps={epsilon}: dense {dense:.6g}, closed form {closed:.6g}")
    return _result("negativity closed form", failures, "")


def _check_ls_continuity() -> CheckResult:
    """The decomposition weight is continuous at x = 1/3."""
    failures = []
    at_boundary = ls_entanglement(WERNER_SEPARABLE_X, 1.0)
    if abs(at_boundary) >= 1e-12:
        failures.append(f"E(1/3) = {at_boundary:.3e}")
    step = 1e-9
    jump = abs(ls_lambda(WERNER_SEPARABLE_X + step) - 1.0)
    if jump > 2 * step:
        failures.append(f"lambda jumps by {jump:.3e} above 1/3")
    return _result("ls continuity at x=1/3", failures, f"E(1/3) = {at_boundary:.1e}")


def _check_ls_ordering(xs: Sequence[float]) -> CheckResult:
    """(3x - 1)/2 <= x on [1/3, 1]."""
    failures = [
        f"x={x}: {1.0 - ls_lambda(x):.6g} > {x:.6g}"
        for x in xs
        if x >= WERNER_SEPARABLE_X and 1.0 - ls_lambda(x) > x
    ]
    return _result("ls below eq10 bound", failures, "")


def _check_monotonicity(reports_by_n: dict[int, list[MeasureReport]]) -> CheckResult:
    """Every measure grows strictly with eps; e_ls only once x exceeds 1/3."""
    failures = []
    for n, reports in reports_by_n.items():
        names = _MEASURE_NAMES + (("e_bipartite_avg",) if n % 2 == 0 else ())
        for previous, current in zip(reports, reports[1:]):
            for name in names:
                if not getattr(current, name) > getattr(previous, name):
                    failures.append(f"n={n} {name} not increasing at eps={current.epsilon}")
            strict = previous.x > WERNER_SEPARABLE_X
            if (strict and not current.e_ls > previous.e_ls) or current.e_ls < previous.e_ls:
                failures.append(f"n={n} e_ls not increasing at eps={current.epsilon}")
    return _result("monotone in epsilon", failures, "")


def _check_scenarios(reports: Sequence[MeasureReport]) -> CheckResult:
    """The scenario measures are fixed multiples of the teleportation one."""
    failures = []
    for report in reports:
        tolerance = VERIFY_TOL * max(1.0, report.e_opnorm)
        if abs(report.e_opnorm - (report.n - 1) * report.e_teleport) > tolerance:
            failures.append(f"n={report.n} eps={report.epsilon}: operator norm")
        if report.e_bipartite_avg is not None and abs(2 * report.e_bipartite_avg - report.e_teleport) > tolerance:
            failures.append(f"n={report.n} eps={report.epsilon}: bipartite average")
        if abs(report.e_eq10 - report.e_teleport) > tolerance:
            failures.append(f"n={report.n} eps={report.epsilon}: eq10 bound")
    return _result("scenario consistency", failures, f"{len(reports)} points")


def _check_phase_invariance(
    ns: Sequence[int], epsilons: Sequence[float], matrix_dim: int, eig_dim: int
) -> CheckResult:
    """Dense results do not depend on the GHZ phase convention."""
    failures = []
    for n in ns:
        part = Bipartition.balanced(n).part_a
        for epsilon in epsilons:
            values = []
            for convention in PhaseConvention:
                rho = _dense(n, epsilon, convention, matrix_dim)
                basis, _ = singlet_form_basis(n, convention, max_dim=matrix_dim)
                values.append(
                    (
                        fidelity_with_pure(rho, ghz_state(n, convention)),
                        hermitian_eig(partial_transpose(rho, part), max_dim=eig_dim).min_eigenvalue,
                        project_renormalize(rho, basis).entries,
                    )
                )
            (f_a, pt_a, w_a), (f_b, pt_b, w_b) = values
            deviation = max(abs(f_a - f_b), abs(pt_a - pt_b), float(np.max(np.abs(w_a - w_b))))
            if deviation > VERIFY_TOL:
                failures.append(f"n={n} eps={epsilon}: deviation {deviation:.3e}")
    return _result("phase convention invariance", failures, "")


def run_checks(
    ns: Sequence[int],
    epsilons: Sequence[float],
    *,
    phase_convention: PhaseConvention | str = PhaseConvention.I_POWER,
    matrix_qubit_cap: int = DEFAULT_MATRIX_QUBIT_CAP,
    eig_qubit_cap: int = DEFAULT_EIG_QUBIT_CAP,
) -> list[CheckResult]:
    """Run the oracle suite over the configured grid."""
    phase_convention = PhaseConvention(phase_convention)
    ns = sorted(set(ns))
    epsilons = sorted(set(epsilons))
    dense_cap = min(matrix_qubit_cap, eig_qubit_cap)
    dense_ns = [n for n in ns if n <= dense_cap]
    skipped = [n for n in ns if n > dense_cap]
    if skipped:
        _LOGGER.warning("Skipping dense checks for n=%s above the %d-qubit cap", skipped, dense_cap)
    matrix_dim, eig_dim = 2**matrix_qubit_cap, 2**eig_qubit_cap

    reports_by_n = {n: [measure_report(n, epsilon) for epsilon in epsilons] for n in ns}
    werner_xs = sorted({float(x) for x in np.linspace(0.0, 1.0, 101)} | set(epsilons))

    checks: list[Callable[[], CheckResult]] = [
        lambda: _check_ppt_threshold(dense_ns, epsilons, phase_convention, matrix_dim, eig_dim),
        lambda: _check_werner_fidelity_vs_ppt(werner_xs),
        lambda: _check_projection_chain(dense_ns, epsilons, phase_convention, matrix_dim),
        lambda: _check_product_projection(dense_ns, phase_convention, matrix_dim),
        lambda: _check_projection_monotonicity(dense_ns, epsilons, phase_convention, matrix_dim),
        _check_four_ion_fidelity,
        lambda: _check_negativity(dense_ns, epsilons, phase_convention, matrix_dim, eig_dim),
        _check_ls_continuity,
        lambda: _check_ls_ordering(werner_xs),
        lambda: _check_monotonicity(reports_by_n),
        lambda: _check_scenarios([r for reports in reports_by_n.values() for r in reports]),
        lambda: _check_phase_invariance(dense_ns, epsilons, matrix_dim, eig_dim),
    ]
    results = []
    for check in checks:
        result = check()
        if result.passed:
            _LOGGER.debug("Check %s passed %s", result.name, result.detail)
        else:
            _LOGGER.error("Check %s failed: %s", result.name, result.detail)
        results.append(result)
    return results


def format_checks(results: Sequence[CheckResult]) -> str:
    """Render check results one per line."""
    lines = [
        f"{'PASS' if result.passed else 'FAIL'}  {result.name}" + (f"  ({result.detail})" if result.detail else "")
        for result in results
    ]
    passed = sum(result.passed for result in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"

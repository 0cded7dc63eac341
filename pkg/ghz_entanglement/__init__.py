"""Separability and entanglement of pseudo-pure GHZ states."""
from __future__ import annotations

__version__ = "1.0.0"

from .exceptions import (  # noqa: E402
    CheckFailed,
    DimensionCapExceeded,
    DimensionMismatch,
    GhzEntanglementError,
    InvalidConfig,
    InvalidParameter,
    InvalidStateError,
    NonHermitianError,
    ZeroProbabilityProjection,
)
from .linalg import (  # noqa: E402
    Bipartition,
    DensityMatrix,
    PureState,
    SpectralDecomposition,
    fidelity_with_pure,
    hermitian_eig,
    kron,
    negativity,
    partial_trace,
    partial_transpose,
    project_renormalize,
    von_neumann_entropy,
)
from .measures import (  # noqa: E402
    LsDecomposition,
    MeasureReport,
    bipartite_average_measure,
    eq10_entanglement,
    ls_decompose,
    ls_entanglement,
    ls_lambda,
    measure_report,
    operator_norm_measure,
    pure_entanglement_entropy,
    teleportation_measure,
)
from .separability import (  # noqa: E402
    Criterion,
    SeparabilityVerdict,
    Verdict,
    fidelity_criterion,
    is_fully_nonseparable,
    ppt_check,
    purity_threshold,
)
from .states import (  # noqa: E402
    GhzState,
    PhaseConvention,
    PseudoPureParams,
    SchmidtForm,
    experimental_mixture,
    ghz_state,
    pseudo_pure,
    schmidt_decompose,
    singlet_form_basis,
    werner,
    x_of,
)

__all__ = [
    "Bipartition",
    "CheckFailed",
    "Criterion",
    "DensityMatrix",
    "DimensionCapExceeded",
    "DimensionMismatch",
    "GhzEntanglementError",
    "GhzState",
    "InvalidConfig",
    "InvalidParameter",
    "InvalidStateError",
    "LsDecomposition",
    "MeasureReport",
    "NonHermitianError",
    "PhaseConvention",
    "PseudoPureParams",
    "PureState",
    "SchmidtForm",
    "SeparabilityVerdict",
    "SpectralDecomposition",
    "Verdict",
    "ZeroProbabilityProjection",
    "bipartite_average_measure",
    "eq10_entanglement",
    "experimental_mixture",
    "fidelity_criterion",
    "fidelity_with_pure",
    "ghz_state",
    "hermitian_eig",
    "is_fully_nonseparable",
    "kron",
    "ls_decompose",
    "ls_entanglement",
    "ls_lambda",
    "measure_report",
    "negativity",
    "operator_norm_measure",
    "partial_trace",
    "partial_transpose",
    "ppt_check",
    "project_renormalize",
    "pseudo_pure",
    "pure_entanglement_entropy",
    "purity_threshold",
    "schmidt_decompose",
    "singlet_form_basis",
    "teleportation_measure",
    "von_neumann_entropy",
    "werner",
    "x_of",
]

"""Constants for the GHZ entanglement package."""
from typing import Final

# Configuration
CONF_N: Final = "n"
CONF_EPSILON: Final = "epsilon"
CONF_LOG_BASE: Final = "log_base"
CONF_FORMAT: Final = "output_format"
CONF_PRECISION: Final = "precision"
CONF_CHECKS: Final = "checks"
CONF_VERIFY_MATRICES: Final = "verify_matrices"
CONF_REPRODUCE_PAPER: Final = "reproduce_paper"
CONF_OUT: Final = "out"
CONF_PHASE: Final = "phase_convention"
CONF_WORKERS: Final = "workers"
CONF_MATRIX_QUBIT_CAP: Final = "matrix_qubit_cap"
CONF_EIG_QUBIT_CAP: Final = "eig_qubit_cap"

# Environment overrides (read after load_dotenv)
ENV_LOG_BASE: Final = "GHZ_LOG_BASE"
ENV_PRECISION: Final = "GHZ_PRECISION"
ENV_WORKERS: Final = "GHZ_WORKERS"
ENV_MATRIX_QUBIT_CAP: Final = "GHZ_MATRIX_QUBIT_CAP"
ENV_EIG_QUBIT_CAP: Final = "GHZ_EIG_QUBIT_CAP"

# Defaults
DEFAULT_N: Final = 4
DEFAULT_EPSILON: Final = 0.54
DEFAULT_LOG_BASE: Final = 2.0
DEFAULT_FORMAT: Final = "table"
DEFAULT_PRECISION: Final = 3
DEFAULT_WORKERS: Final = 1
MIN_PRECISION: Final = 1
MAX_PRECISION: Final = 15

OUTPUT_FORMATS: Final = ("table", "json", "csv")

# Dimension caps, as qubit counts
DEFAULT_MATRIX_QUBIT_CAP: Final = 12
DEFAULT_EIG_QUBIT_CAP: Final = 10
GHZ_MAX_QUBITS: Final = 30
VERIFY_MAX_QUBITS: Final = 10
MATRIX_DIM_CAP: Final = 2**DEFAULT_MATRIX_QUBIT_CAP
EIG_DIM_CAP: Final = 2**DEFAULT_EIG_QUBIT_CAP

# Tolerances
HERMITIAN_TOL: Final = 1e-12
TRACE_TOL: Final = 1e-12
NORM_TOL: Final = 1e-12
PSD_TOL: Final = 1e-10
EIG_TOL: Final = 1e-10
ORTHONORMAL_TOL: Final = 1e-10
SCHMIDT_CUTOFF: Final = 1e-12
MIN_PROJECTION_PROB: Final = 1e-14
PT_NEGATIVITY_CUTOFF: Final = -1e-10
VERIFY_TOL: Final = 1e-10

# Separability
FIDELITY_BOUND: Final = 0.5
WERNER_SEPARABLE_X: Final = 1.0 / 3.0

# Headline values of the four-ion experiment
FOUR_ION_N: Final = 4
FOUR_ION_EPSILON: Final = 0.54
FOUR_ION_P_PURE: Final = 0.43
FOUR_ION_FIDELITY: Final = 0.57
FOUR_ION_FIDELITY_TOL: Final = 0.02
FOUR_ION_THRESHOLD: Final = 0.11111
FOUR_ION_E_BIPARTITE_AVG: Final = 0.412
FOUR_ION_E_TELEPORT: Final = 0.824
FOUR_ION_E_OPNORM: Final = 2.472
FOUR_ION_ROUNDING_TOL: Final = 5e-4
FOUR_ION_OPNORM_TOL: Final = 2e-3

# Report columns (CSV header and JSON keys)
FIELD_N: Final = "n"
FIELD_EPSILON: Final = "epsilon"
FIELD_X: Final = "x"
FIELD_LAMBDA: Final = "lambda"
FIELD_FIDELITY: Final = "fidelity"
FIELD_THRESHOLD: Final = "threshold"
FIELD_VERDICT: Final = "verdict"
FIELD_E_LS: Final = "e_ls"
FIELD_E_EQ10: Final = "e_eq10"
FIELD_E_BIPARTITE_AVG: Final = "e_bipartite_avg"
FIELD_E_TELEPORT: Final = "e_teleport"
FIELD_E_OPNORM: Final = "e_opnorm"
FIELD_LOG_BASE: Final = "log_base"

REPORT_FIELDS: Final = (
    FIELD_N,
    FIELD_EPSILON,
    FIELD_X,
    FIELD_LAMBDA,
    FIELD_FIDELITY,
    FIELD_THRESHOLD,
    FIELD_VERDICT,
    FIELD_E_LS,
    FIELD_E_EQ10,
    FIELD_E_BIPARTITE_AVG,
    FIELD_E_TELEPORT,
    FIELD_E_OPNORM,
    FIELD_LOG_BASE,
)

# Exit codes
EXIT_OK: Final = 0
EXIT_CHECK_FAILURE: Final = 1
EXIT_CONFIG_ERROR: Final = 2

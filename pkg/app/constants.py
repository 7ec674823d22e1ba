"""Constants used throughout the application."""

from enum import Enum
from typing import Final


class RunMode(str, Enum):
    """Batch modes of the command-line front end."""
    NU_SCAN = "nu-scan"
    BRANCHES = "branches"
    COUNT = "count"
    VERIFY = "verify"


class EigenSolver(str, Enum):
    """Dense Hermitian eigensolvers."""
    LAPACK = "lapack"
    JACOBI = "jacobi"


class BoundaryForm(str, Enum):
    """Parametrizations of the unitary boundary matrix U(lambda)."""
    CONSTANT = "constant"
    GENERATED = "generated"


class Provenance(str, Enum):
    """Where a pencil model comes from."""
    ABSTRACT = "abstract"
    DIFFERENTIAL = "differential"


class VerdictStatus(str, Enum):
    """Outcome of a counting validator."""
    PASS = "pass"
    FAIL = "fail"
    REFUTED_HYPOTHESIS = "refuted-hypothesis"
    FAIL_HYPOTHESIS = "fail-hypothesis"
    NOT_APPLICABLE = "not-applicable"


class CountingRule(str, Enum):
    """Counting validators reported by count and verify modes."""
    LOWER_BOUND = "lower_bound"
    MONOTONE_EQUALITY = "monotone_equality"
    NEGATIVE_TYPE_EQUALITY = "negative_type_equality"


class HypothesisName(str, Enum):
    """Hypothesis checks of differential problems."""
    RANK_CONSTANCY = "rank_constancy"
    KERNEL_CONSTANCY = "kernel_constancy"
    COEFFICIENT_MONOTONICITY = "coefficient_monotonicity"
    BOUNDARY_MONOTONICITY = "boundary_monotonicity"
    DERIVATIVE_CONSISTENCY = "derivative_consistency"
    VARIATIONAL_CONSISTENCY = "variational_consistency"


# Exit statuses of a run
EXIT_OK: Final[int] = 0
EXIT_ERROR: Final[int] = 1
EXIT_COUNTING_CONTRADICTION: Final[int] = 2

# linalg tolerances
HERMITIAN_TOL: Final[float] = 1e-12
JACOBI_TOL: Final[float] = 1e-13
JACOBI_MAX_SWEEPS: Final[int] = 100
CHOLESKY_PIVOT_TOL: Final[float] = 1e-12

# boundary tolerances
UNITARY_TOL: Final[float] = 1e-10
KERNEL_RESIDUAL_TOL: Final[float] = 1e-9
DERIVATIVE_STEP_SCALE: Final[float] = 1e-5

# Residue factor of (z + 1)/(z - 1) * (U - z)^-1 over a positively oriented contour,
# normalized by 1/(2 pi): c(u) = RESIDUE_FACTOR * (u + 1)/(u - 1)
RESIDUE_FACTOR: Final[complex] = -1j

# Sampling used by problem checks
POSITIVITY_GRID: Final[int] = 64
RANK_CHECK_POINTS: Final[int] = 32
FORM_DOMAIN_BC_TOL: Final[float] = 1e-6
TANGENCY_GOLDEN_ITERATIONS: Final[int] = 80

# CSV contract
CSV_DIGITS: Final[int] = 17

# Root refinement
ROOT_WIDTH_TOL: Final[float] = 1e-10

# Branches written by the branches mode when the config sets no m_max
DEFAULT_BRANCH_COUNT: Final[int] = 8

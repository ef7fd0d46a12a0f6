"""Cone-positivity classification of coupling matrices and solvability of
coupled power-type systems, with a numerical Neumann witness constructor."""

from .copositivity import (
    ClosedFormResult,
    Copositivity,
    CopositivityVerdict,
    Definiteness,
    Tolerance,
    boundary_positive,
    check_psd,
    classify_copositivity,
    simplex_min_quadratic,
    strict_copositivity_closed_form,
)
from .errors import (
    CapacityError,
    CoposolveError,
    DimensionError,
    InternalConsistencyError,
    NotApplicableError,
    ParameterError,
    PreconditionError,
)
from .forms import (
    ConeVector,
    FormValue,
    SymMatrix,
    negative_part_row_sums,
    p_form,
    principal_submatrix,
    quadratic_form,
)
from .mu_search import (
    MuCertificate,
    MuSearchBudget,
    MuSearchFailure,
    MuSearchInconclusive,
    MuViolation,
    appendix_limit_form,
    b_epsilon,
    constructive_mu_n2,
    find_mu,
    sufficient_condition,
    verify_mu,
)
from .neumann import (
    EnergyReport,
    FieldTuple,
    Grid,
    NeumannSolution,
    SolveConfig,
    SolveInconclusive,
    TrivialOnly,
    energy,
    find_direction_d,
    mountain_pass_solve,
    reflect_tile,
    refine_solution,
    theta_seeds,
    write_solution_csv,
)
from .solvability import (
    ConstantSolutionCertificate,
    ProblemParams,
    SolvabilityKind,
    SolvabilityVerdict,
    SufficientConditionCertificate,
    classify_solvability,
    constant_solution,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ClosedFormResult",
    "ConeVector",
    "ConstantSolutionCertificate",
    "Copositivity",
    "CopositivityVerdict",
    "CoposolveError",
    "Definiteness",
    "DimensionError",
    "EnergyReport",
    "FieldTuple",
    "FormValue",
    "Grid",
    "InternalConsistencyError",
    "MuCertificate",
    "MuSearchBudget",
    "MuSearchFailure",
    "MuSearchInconclusive",
    "MuViolation",
    "NeumannSolution",
    "NotApplicableError",
    "ParameterError",
    "PreconditionError",
    "ProblemParams",
    "SolvabilityKind",
    "SolvabilityVerdict",
    "SolveConfig",
    "SolveInconclusive",
    "SufficientConditionCertificate",
    "SymMatrix",
    "Tolerance",
    "TrivialOnly",
    "appendix_limit_form",
    "b_epsilon",
    "boundary_positive",
    "check_psd",
    "classify_copositivity",
    "classify_solvability",
    "constant_solution",
    "constructive_mu_n2",
    "energy",
    "find_direction_d",
    "find_mu",
    "mountain_pass_solve",
    "negative_part_row_sums",
    "p_form",
    "principal_submatrix",
    "quadratic_form",
    "reflect_tile",
    "refine_solution",
    "simplex_min_quadratic",
    "strict_copositivity_closed_form",
    "sufficient_condition",
    "theta_seeds",
    "verify_mu",
    "write_solution_csv",
]

"""Diagonal quasi-Newton solvers with a weak-Wolfe line search.

The library provides four related minimizers (two diagonal-model
variants, an inertial-extrapolation variant and a dense rank-two
variant), a catalogue of standard unconstrained test problems,
Dolan-More performance profiling, and two applied experiments (sparse
signal recovery, Muskingum flood-routing fit).
"""

from .bench import (
    ProfileCurves,
    ResultRow,
    ResultsTable,
    emit_profile_svg,
    performance_profile,
    run_suite,
)
from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyGrid,
    IncompatibleDimension,
    InvalidDimensions,
    IoError,
    NonFiniteValue,
    NoSolvedProblems,
    NotDescent,
    ParseError,
    QnoptError,
    SearchFailed,
    TooShort,
    UnknownProblem,
    UnknownSolver,
    ZeroReference,
    ZeroStep,
)
from .experiments import (
    CsInstance,
    MuskingumData,
    cs_instance,
    cs_objective,
    load_flood_csv,
    muskingum_problem,
    rel_err,
)
from .linesearch import LineSearchParams, StepResult, wwp_line_search
from .problems import EvalCounter, Problem, catalogue, evaluate, fd_gradient, make_problem
from .solvers import (
    PAIR_MODES,
    VARIANTS,
    SolverConfig,
    SolverReport,
    Status,
    inertial_coefficient,
    solve,
)
from .updates import (
    DiagonalHessian,
    diagonal_update,
    mbfgs3_full_update,
    modified_y,
    safeguarded_direction,
    y3_scalar,
)

__version__ = "0.1.0"

__all__ = [
    "CsInstance",
    "DiagonalHessian",
    "DimensionMismatch",
    "DomainError",
    "EmptyGrid",
    "EvalCounter",
    "IncompatibleDimension",
    "InvalidDimensions",
    "IoError",
    "LineSearchParams",
    "MuskingumData",
    "NonFiniteValue",
    "NoSolvedProblems",
    "NotDescent",
    "PAIR_MODES",
    "ParseError",
    "Problem",
    "ProfileCurves",
    "QnoptError",
    "ResultRow",
    "ResultsTable",
    "SearchFailed",
    "SolverConfig",
    "SolverReport",
    "StepResult",
    "Status",
    "TooShort",
    "UnknownProblem",
    "UnknownSolver",
    "VARIANTS",
    "ZeroReference",
    "ZeroStep",
    "catalogue",
    "cs_instance",
    "cs_objective",
    "diagonal_update",
    "emit_profile_svg",
    "evaluate",
    "fd_gradient",
    "inertial_coefficient",
    "load_flood_csv",
    "make_problem",
    "mbfgs3_full_update",
    "modified_y",
    "muskingum_problem",
    "performance_profile",
    "rel_err",
    "run_suite",
    "safeguarded_direction",
    "solve",
    "wwp_line_search",
    "y3_scalar",
]

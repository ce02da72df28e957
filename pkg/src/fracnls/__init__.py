"""Ground states of the 1D fractional NLS with one-sided derivatives.

The package discretizes the line problem

    (D_+^alpha D_-^alpha) u + V(x) u = f(u),   u >= 0, u != 0,

on a large periodic window by a Fourier pseudospectral method, builds the
constrained variational problem behind it (fibering map, natural constraint,
least energy level c), and exposes solvers plus the checkable consequences of
the theory: nonnegativity of minimizers, the gap c < c_infinity for potentials
below their limit at infinity, continuity of the level under potential shifts,
and the symmetry of ground states for even nondecreasing potentials via the
symmetric decreasing rearrangement.
"""

from .exceptions import (
    AdmissibilityError,
    ConfigurationError,
    HypothesisError,
    ProjectionError,
)
from .grid import (
    ComplexPair,
    Field,
    FractionalOrder,
    Grid,
    as_order,
    composed_operator,
    embed_field,
    forward_transform,
    integrate,
    inverse_transform,
    left_lw_derivative,
    make_grid,
    refine_field,
    right_lw_derivative,
)
from .spaces import (
    NormReport,
    embedding_ratio,
    inner_product_X,
    l2_norm,
    norm_X,
    norm_alpha,
    norm_report,
    seminorm_alpha,
    sup_norm,
)
from .problem import (
    CheckResult,
    Nonlinearity,
    Potential,
    Problem,
    ValidationReport,
    custom_nonlinearity,
    growth_bound_check,
    make_problem,
    power_nonlinearity,
    problem_from_config,
    validate_nonlinearity,
    validate_potential,
)
from .energy import (
    EnergyBreakdown,
    evaluate_I,
    evaluate_I_infinity,
    gradient_I,
    weak_residual_norm,
)
from .nehari import (
    LEVEL_TOL,
    ContinuityRow,
    ContinuityTable,
    FiberingReport,
    LevelComparison,
    LevelEstimate,
    compare_levels,
    continuity_sweep,
    level_c,
    level_c_infinity,
    nehari_project,
)
from .solver import (
    Backtracking,
    FixedStep,
    GapVerdict,
    GaussianBump,
    GroundStateReport,
    SolverConfig,
    SymmetryReport,
    check_nonnegativity,
    compare_c_to_c_infinity,
    default_start,
    ground_state,
    random_starts,
    symmetry_diagnostic,
)
from .rearrange import (
    LayerCakeResult,
    PolyaSzegoResult,
    PotentialMonotonicityResult,
    RearrangementReport,
    layer_cake_check,
    polya_szego_check,
    potential_monotonicity_check,
    rearrange,
    rearrange_values,
)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "ConfigurationError",
    "HypothesisError",
    "ProjectionError",
    "ComplexPair",
    "Field",
    "FractionalOrder",
    "Grid",
    "as_order",
    "composed_operator",
    "embed_field",
    "forward_transform",
    "integrate",
    "inverse_transform",
    "left_lw_derivative",
    "make_grid",
    "refine_field",
    "right_lw_derivative",
    "NormReport",
    "embedding_ratio",
    "inner_product_X",
    "l2_norm",
    "norm_X",
    "norm_alpha",
    "norm_report",
    "seminorm_alpha",
    "sup_norm",
    "CheckResult",
    "Nonlinearity",
    "Potential",
    "Problem",
    "ValidationReport",
    "custom_nonlinearity",
    "growth_bound_check",
    "make_problem",
    "power_nonlinearity",
    "problem_from_config",
    "validate_nonlinearity",
    "validate_potential",
    "EnergyBreakdown",
    "evaluate_I",
    "evaluate_I_infinity",
    "gradient_I",
    "weak_residual_norm",
    "LEVEL_TOL",
    "ContinuityRow",
    "ContinuityTable",
    "FiberingReport",
    "LevelComparison",
    "LevelEstimate",
    "compare_levels",
    "continuity_sweep",
    "level_c",
    "level_c_infinity",
    "nehari_project",
    "Backtracking",
    "FixedStep",
    "GapVerdict",
    "GaussianBump",
    "GroundStateReport",
    "SolverConfig",
    "SymmetryReport",
    "check_nonnegativity",
    "compare_c_to_c_infinity",
    "default_start",
    "ground_state",
    "random_starts",
    "symmetry_diagnostic",
    "LayerCakeResult",
    "PolyaSzegoResult",
    "PotentialMonotonicityResult",
    "RearrangementReport",
    "layer_cake_check",
    "polya_szego_check",
    "potential_monotonicity_check",
    "rearrange",
    "rearrange_values",
    "SUITES",
    "run_suite",
    "__version__",
]

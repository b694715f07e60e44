"""Chebyshev approximation of piecewise-smooth functions with certified decay and L1 error bounds."""

from .approximation import (
    ApproximationRun,
    ComparisonRow,
    build_approximation,
    comparison_table,
    l1_error,
    run_approximation,
)
from .bounds import (
    BoundParams,
    BoundResult,
    decay_bound_bv,
    decay_bound_smooth,
    derivative_coeff_bound,
    error_bound_majidian,
    error_bound_xiang,
    reconstruct_coefficient,
)
from .cli import builtin_example
from .coefficients import (
    CoefficientTable,
    aliasing_residual,
    derivative_coefficients,
    quadrature_coefficients,
    reference_coefficients,
)
from .core import (
    ChebSeries,
    Interval,
    chebyshev_points,
    eval_basis,
    eval_series,
    map_interval,
    map_reference,
)
from .errors import *  # noqa: F401,F403
from .funcspec import Derivative, FunctionSpec, Jump, derivative, evaluate_at, parse
from .variation import VariationReport, cheb_weighted_variation, total_variation

__version__ = "0.1.0"

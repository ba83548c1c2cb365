"""Bounds for harmonically s-convex functions, verified by quadrature.

The package computes the harmonic Hermite-Hadamard chain and five
Ostrowski-type bounds built from Beta/2F1 coefficient functions, and ships
the machinery to verify every closed form and inequality instance against
an independent adaptive-quadrature oracle.
"""

from .errors import DomainError, NumericError
from .numeric import (DEFAULT_TOL, FunctionSpec, Interval, QuadResult,
                      derivative, get_function, integrate, weighted_mean)
from .specfn import SpecFnConfig, beta, hyp2f1, ln_gamma
from .convexity import (ConvexityMode, ConvexityReport, check_am_hm,
                        check_convexity, grid_monotone, harmonic_combination,
                        proposition_implications)
from .bounds import (BoundResult, ConjugatePair, LambdaArgs,
                     classic_ostrowski_rhs, hh_harmonic_bounds,
                     hh_s_convex_bounds, lambda5, lambda_value, ostrowski_lhs,
                     ostrowski_rhs)
from .verify import (LambdaGrid, VerifyReport, lambda_consistency,
                     lambda_consistency_rows, lemma_residual,
                     matrix_summary, min_corollary_gap, run_ostrowski_matrix,
                     verify_theorem)

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "ConjugatePair", "ConvexityMode", "ConvexityReport",
    "DEFAULT_TOL", "DomainError", "FunctionSpec", "Interval", "LambdaArgs",
    "LambdaGrid", "NumericError", "QuadResult", "SpecFnConfig", "VerifyReport",
    "beta", "check_am_hm", "check_convexity", "classic_ostrowski_rhs",
    "derivative", "get_function", "grid_monotone", "harmonic_combination",
    "hh_harmonic_bounds", "hh_s_convex_bounds", "hyp2f1", "integrate",
    "lambda5", "lambda_consistency", "lambda_consistency_rows", "lambda_value",
    "lemma_residual", "ln_gamma", "matrix_summary", "min_corollary_gap",
    "ostrowski_lhs", "ostrowski_rhs", "proposition_implications",
    "run_ostrowski_matrix", "verify_theorem", "weighted_mean",
]

"""Discrete analogues of the Appell function F3: evaluation and identity checks."""
from .errors import AppellError, DivergenceDetected, PoleError, ShiftPoleError, ValidityError
from .numerics import (
    ExactScalar,
    binomial,
    complex_gamma,
    exact,
    parse_scalar,
    pochhammer_scaled,
    pochhammer_scaled_factorized,
    rising_factorial,
)
from .series import (
    DEFAULT_POLICY,
    Evaluation,
    KdFSpec,
    Params1,
    Params2,
    Point,
    TruncationPolicy,
    eval_1f0_disc,
    eval_f3_classical,
    eval_f3_disc1,
    eval_f3_disc2,
    eval_kdf,
    eval_xi,
    limit_degeneration,
    term_f3_disc1,
    term_f3_disc2,
)

from .operators import OperatorExpr, ParamShift, Residual, apply_operator_expr, operator_cross_check, theta_eigen_check
from .catalog import (
    Identity,
    Panel,
    SuiteReport,
    check_identity,
    default_panel,
    exact_panel,
    get_identity,
    list_identities,
    run_suite,
)
from .quadrature import QuadratureRule, gauss_jacobi, gauss_laguerre, gauss_legendre
from .integrals import REPS, IntegralRepSpec, check_reps, eval_integral_rep, get_rep, integral_vs_series

__all__ = [
    "AppellError",
    "DivergenceDetected",
    "PoleError",
    "ShiftPoleError",
    "ValidityError",
    "ExactScalar",
    "binomial",
    "complex_gamma",
    "exact",
    "parse_scalar",
    "pochhammer_scaled",
    "pochhammer_scaled_factorized",
    "rising_factorial",
    "DEFAULT_POLICY",
    "Evaluation",
    "KdFSpec",
    "Params1",
    "Params2",
    "Point",
    "TruncationPolicy",
    "eval_1f0_disc",
    "eval_f3_classical",
    "eval_f3_disc1",
    "eval_f3_disc2",
    "eval_kdf",
    "eval_xi",
    "limit_degeneration",
    "term_f3_disc1",
    "term_f3_disc2",
    "OperatorExpr",
    "ParamShift",
    "Residual",
    "apply_operator_expr",
    "operator_cross_check",
    "theta_eigen_check",
    "Identity",
    "Panel",
    "SuiteReport",
    "check_identity",
    "default_panel",
    "exact_panel",
    "get_identity",
    "list_identities",
    "run_suite",
    "QuadratureRule",
    "gauss_jacobi",
    "gauss_laguerre",
    "gauss_legendre",
    "REPS",
    "IntegralRepSpec",
    "check_reps",
    "eval_integral_rep",
    "get_rep",
    "integral_vs_series",
]

__version__ = "0.1.0"

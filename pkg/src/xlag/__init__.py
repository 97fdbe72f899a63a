"""Numerical construction and verification of X1-Laguerre polynomials.

Modules
-------
coefficients   the equation, its Sturm-Liouville coefficients, equivalence check
xpoly          the polynomial family as eigenfunctions of the cleared form
quadrature     Gauss-Laguerre and adaptive weighted integration, Gram matrices
frobenius      local analysis at 0, phi1 and the second solution phi2
classify       limit-point / limit-circle evidence at 0 and infinity
bvp            bracket, boundary condition, maximal domain, shooting spectrum
cli            the ``xlag`` command-line front end
"""

__version__ = "0.1.0"

from .bvp import (
    BoundaryCondition,
    ShootingConfig,
    bc_limit,
    bracket,
    maximal_domain_check,
    operator_spec,
    shoot_eigenvalues,
    verify_eigenpair,
)
from .classify import classify_endpoint, l2_membership, threshold_sweep
from .coefficients import (
    SLParameter,
    Variant,
    check_equivalence,
    eval_dp,
    eval_p,
    eval_q,
    eval_w,
    ode_residual_gkm,
    ode_residual_sl,
)
from .errors import (
    ConfigError,
    DomainError,
    NonConvergence,
    NoSignChange,
    NumericalError,
    XlagError,
)
from .frobenius import frobenius_series, indicial_exponents, phi1, phi2, wronskian_check
from .polynomial import Polynomial
from .quadrature import expand_function, gauss_laguerre_rule, gram_matrix, inner_product
from .xpoly import assert_no_constant_eigenpolynomial, build_xlaguerre, family

__all__ = [
    "BoundaryCondition",
    "ConfigError",
    "DomainError",
    "NoSignChange",
    "NonConvergence",
    "NumericalError",
    "Polynomial",
    "SLParameter",
    "ShootingConfig",
    "Variant",
    "XlagError",
    "assert_no_constant_eigenpolynomial",
    "bc_limit",
    "bracket",
    "build_xlaguerre",
    "check_equivalence",
    "classify_endpoint",
    "eval_dp",
    "eval_p",
    "eval_q",
    "eval_w",
    "expand_function",
    "family",
    "frobenius_series",
    "gauss_laguerre_rule",
    "gram_matrix",
    "indicial_exponents",
    "inner_product",
    "l2_membership",
    "maximal_domain_check",
    "ode_residual_gkm",
    "ode_residual_sl",
    "operator_spec",
    "phi1",
    "phi2",
    "shoot_eigenvalues",
    "threshold_sweep",
    "verify_eigenpair",
    "wronskian_check",
]

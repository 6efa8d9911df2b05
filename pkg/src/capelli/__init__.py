"""Exact Capelli interpolation polynomials and their difference operators."""

from .errors import CapelliError, PreconditionError
from .interpolation import (
    PTable,
    capelli_polynomial,
    hat_transform,
    interpolation_expand,
    p_table,
    q_polynomial,
)
from .linalg import solve_linear_exact
from .operators import (
    BinomialData,
    OperatorMatrix,
    apply_L_direct,
    binomial_data,
    exp_ad_L,
    exp_L_star,
    minus_involution,
    operator_matrix,
    scalar_product,
    top_component,
)
from .poly import MultiPoly, orbit_monomial_basis
from .rational import falling_factorial, format_rational, parse_rational, pochhammer
from .roots import (
    RootDatum,
    build_datum,
    dominance_class,
    enumerate_weights,
    f_tau,
    lambda_membership,
    rho_vector,
    virtual_dimension,
)
from .verify import SuiteReport, run_suite

__all__ = [
    "BinomialData", "CapelliError", "MultiPoly", "OperatorMatrix", "PTable",
    "PreconditionError", "RootDatum", "SuiteReport", "apply_L_direct",
    "binomial_data", "build_datum", "capelli_polynomial", "dominance_class",
    "enumerate_weights", "exp_L_star", "exp_ad_L", "f_tau", "falling_factorial",
    "format_rational", "hat_transform", "interpolation_expand", "lambda_membership",
    "minus_involution", "operator_matrix", "orbit_monomial_basis", "p_table",
    "parse_rational", "pochhammer", "q_polynomial", "rho_vector", "run_suite",
    "scalar_product", "solve_linear_exact", "top_component", "virtual_dimension",
]


def clear_caches() -> None:
    """Drop memoized tables and operator matrices (useful for timing)."""
    from . import interpolation, operators

    for fn in (interpolation._basis, interpolation._capelli_level, interpolation.p_table,
               operators._difference_matrix, operators.multiplication_matrix):
        fn.cache_clear()

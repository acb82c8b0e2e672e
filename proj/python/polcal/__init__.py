"""Finite polarization calculus.

Thin package around the _polcal extension: n-th polarizations
(multidirectional finite differences), their exact algebraic laws,
homogeneity classification, derivatives as infinitesimal limits, and Taylor
diagnostics.
"""

from _polcal import (
    AffineMap,
    Polynomial,
    PolcalError,
    Scalar,
    ScalarField,
    chain_expand,
    delta_chi,
    derive,
    euler_alternating_sum,
    euler_scaling_check,
    extract_components,
    is_homogeneous,
    is_homogeneous_polynomial,
    leibniz_expand,
    multinomial,
    parse_field,
    polarize,
    polarize_unidirectional,
    polynomial_field,
    reconstruct_increment,
    taylor,
    verify_suite,
)

__all__ = [
    "AffineMap",
    "Polynomial",
    "PolcalError",
    "Scalar",
    "ScalarField",
    "chain_expand",
    "delta_chi",
    "derive",
    "euler_alternating_sum",
    "euler_scaling_check",
    "extract_components",
    "is_homogeneous",
    "is_homogeneous_polynomial",
    "leibniz_expand",
    "multinomial",
    "parse_field",
    "polarize",
    "polarize_unidirectional",
    "polynomial_field",
    "reconstruct_increment",
    "taylor",
    "verify_suite",
]

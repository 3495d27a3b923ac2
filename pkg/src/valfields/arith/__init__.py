"""Exact arithmetic foundation: fields, polynomials, factorization."""

from .fields import (
    GF,
    QQ,
    ExtensionField,
    Field,
    PrimeField,
    Rational,
    RatFunc,
    RationalField,
    RationalFunctionField,
)
from .poly import (
    Poly,
    discriminant,
    is_squarefree,
    poly_gcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from .factor import (
    factor_any,
    factor_finite_field,
    factor_function_field,
    factor_over_extension,
    factor_rationals,
    factor_with_multiplicity,
)

__all__ = [
    "GF",
    "QQ",
    "ExtensionField",
    "Field",
    "Poly",
    "PrimeField",
    "RatFunc",
    "Rational",
    "RationalField",
    "RationalFunctionField",
    "discriminant",
    "factor_any",
    "factor_finite_field",
    "factor_function_field",
    "factor_over_extension",
    "factor_rationals",
    "factor_with_multiplicity",
    "is_squarefree",
    "poly_gcd",
    "resultant",
    "squarefree_decomposition",
    "squarefree_part",
]

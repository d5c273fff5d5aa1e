"""Exact algebra of q-shift difference operators with rational coefficients."""

from .laurent import EQ_TOL, LaurentPoly, LaurentRational
from .ore import OreOperator, factor_left, solve_conjugate
from .words import GEN_L, GEN_LAMBDA, AlgebraWord
from .invariant import (
    LEFT,
    RIGHT,
    b_map,
    decompose_invariant,
    involution_op,
    is_invariant,
    lambda_rational,
    lambda_rewrite,
    lambda_value,
    poly_at_rational,
)

__all__ = [
    "EQ_TOL", "LaurentPoly", "LaurentRational", "OreOperator",
    "factor_left", "solve_conjugate", "GEN_L", "GEN_LAMBDA", "AlgebraWord",
    "LEFT", "RIGHT", "b_map", "decompose_invariant", "involution_op",
    "is_invariant", "lambda_rational", "lambda_rewrite", "lambda_value",
    "poly_at_rational",
]

"""Exact verification of generalized Fibonacci-Lucas numbers, quaternions and their identities."""
from .exact_arith import Polynomial, QuadExt, poly_eval, quad_inv, quad_mul
from .quaternions import AlgebraParams, HxParams, Quaternion, qmul
from .sequences import FIBONACCI, LUCAS, GFLParams, IdentityReport, SequenceSpec, gen_s, gfl, term, term_fast

__all__ = [
    "AlgebraParams", "FIBONACCI", "GFLParams", "HxParams", "IdentityReport", "LUCAS", "Polynomial",
    "QuadExt", "Quaternion", "SequenceSpec", "gen_s", "gfl", "poly_eval", "qmul", "quad_inv",
    "quad_mul", "term", "term_fast",
]

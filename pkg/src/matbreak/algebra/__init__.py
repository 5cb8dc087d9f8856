"""Exact arithmetic over Z/m: residues, square matrices, linear solving,
characteristic polynomials and CRT."""

from .crt import crt_pair, crt_recombine
from .linsolve import LinearSolveResult, solve_linear
from .matrix import ModMatrix, lincomb, mat_inverse, mat_mul, mat_pow, parse_matrix_lines
from .modulus import (
    MAX_MODULUS,
    ModInt,
    Modulus,
    as_modulus,
    inverse_mod,
    is_prime,
    mod_inverse,
    random_prime,
)
from .poly import Polynomial, charpoly

__all__ = [
    "MAX_MODULUS",
    "LinearSolveResult",
    "ModInt",
    "ModMatrix",
    "Modulus",
    "Polynomial",
    "as_modulus",
    "charpoly",
    "crt_pair",
    "crt_recombine",
    "inverse_mod",
    "is_prime",
    "lincomb",
    "mat_inverse",
    "mat_mul",
    "mat_pow",
    "mod_inverse",
    "parse_matrix_lines",
    "random_prime",
    "solve_linear",
]

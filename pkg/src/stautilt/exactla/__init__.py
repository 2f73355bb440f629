"""Finite-field arithmetic, dense exact linear algebra and polynomial factoring."""

from .field import GF, BUILTIN_MODULI
from .linalg import Mat, RowReduction, row_reduce, solve_mat as solve
from .poly import factor_poly

__all__ = ["GF", "BUILTIN_MODULI", "Mat", "RowReduction", "row_reduce", "solve", "factor_poly"]

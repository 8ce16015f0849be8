"""Exact polynomial arithmetic over Q and Q(i)."""
from .gauss import I, GaussRat, conj, im_part, is_real, re_part
from .kernels import BACKEND
from .poly import Grading, Poly, VarTableMismatch, key_degree
from .rat import Rat, RationalFormatError, as_rat, format_rat, parse_rat
from .sqrt2 import SQRT2, QSqrt2
from .vars import ANTI, HOLO, REAL, VarTable, holo_coords, real_coords

__all__ = [
    "ANTI", "BACKEND", "HOLO", "I", "REAL", "SQRT2",
    "GaussRat", "Grading", "Poly", "QSqrt2", "Rat", "RationalFormatError",
    "VarTable", "VarTableMismatch",
    "as_rat", "conj", "format_rat", "holo_coords", "im_part", "is_real",
    "key_degree", "parse_rat", "re_part", "real_coords",
]

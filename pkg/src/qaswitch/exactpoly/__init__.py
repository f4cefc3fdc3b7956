"""Exact arithmetic: rationals, pi-polynomials, parameter polynomials and
the elimination toolkit (exact division, resultants, real-root isolation)."""

from ._backend import BACKEND
from .poly import (
    NVARS,
    VARIABLES,
    NotDivisible,
    ParamPoly,
    PolySyntaxError,
    Rational,
    Scalar,
    UnknownVariableError,
    as_poly,
    canonicalize,
    divides,
    exact_divide,
)
from .resultant import pseudo_remainder, resultant
from .roots import RootInterval, isolate_real_roots, real_root_count, sturm_sequence

__all__ = [
    "BACKEND",
    "NVARS",
    "VARIABLES",
    "NotDivisible",
    "ParamPoly",
    "PolySyntaxError",
    "Rational",
    "RootInterval",
    "Scalar",
    "UnknownVariableError",
    "as_poly",
    "canonicalize",
    "divides",
    "exact_divide",
    "isolate_real_roots",
    "pseudo_remainder",
    "real_root_count",
    "resultant",
    "sturm_sequence",
]

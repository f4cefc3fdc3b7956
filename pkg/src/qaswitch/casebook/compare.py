"""Equality of polynomials up to a constant and up to declared nonzero factors."""

from __future__ import annotations

from typing import Iterable, Mapping

from ..exactpoly import NotDivisible, ParamPoly, Scalar, as_poly, exact_divide


def strip_units(p: ParamPoly, units: Iterable[ParamPoly]) -> ParamPoly:
    """Divide out every power of each non-constant unit (and of pi)."""
    if p.is_zero():
        return p
    for u in [ParamPoly.pi(), *units]:
        u = as_poly(u)
        if u.is_constant():
            continue
        while True:
            try:
                p = exact_divide(p, u)
            except NotDivisible:
                break
    return p


def constant_ratio(a: ParamPoly, b: ParamPoly) -> Scalar | None:
    """c with a = c*b and c free of parameters, else None (both zero -> 1)."""
    if a.is_zero() or b.is_zero():
        return Scalar(1) if a.is_zero() and b.is_zero() else None
    try:
        q = exact_divide(a, b)
    except NotDivisible:
        return None
    if q.variables():
        return None
    return q.as_scalar()


def proportional(a: ParamPoly, b: ParamPoly, units: Iterable[ParamPoly] = ()) -> Scalar | None:
    """Ratio a/b after removing unit factors from both sides, when it is a constant."""
    units = list(units)
    return constant_ratio(strip_units(a, units), strip_units(b, units))


def reduce_cofactor(p: ParamPoly, factor: ParamPoly, eliminate: Mapping[str, ParamPoly]) -> ParamPoly:
    """factor * (p/factor)|eliminate, the representative used for branches where
    an earlier constant's factor has already been set aside.  Returns ``p``
    unchanged when ``factor`` does not divide it."""
    if p.is_zero():
        return p
    try:
        q = exact_divide(p, factor)
    except NotDivisible:
        return p
    return factor * q.subs(dict(eliminate))


__all__ = ["constant_ratio", "proportional", "reduce_cofactor", "strip_units"]

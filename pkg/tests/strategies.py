"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from qaswitch.exactpoly import ParamPoly

NAMES = ("lambda", "a20", "a11", "b02", "k")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def monomials(draw, names=NAMES, max_exp=3):
    coeff = draw(small_fracs.filter(lambda c: c != 0))
    m = ParamPoly.const(coeff)
    for n in names:
        e = draw(st.integers(0, max_exp))
        if e:
            m = m * ParamPoly.var(n) ** e
    if draw(st.booleans()) and draw(st.integers(0, 3)) == 0:
        m = m * ParamPoly.pi()
    return m


@st.composite
def polys(draw, names=NAMES, max_terms=4, max_exp=3):
    p = ParamPoly.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        p = p + draw(monomials(names, max_exp))
    return p


@st.composite
def nonzero_polys(draw, names=NAMES, max_terms=3, max_exp=2):
    p = draw(polys(names, max_terms, max_exp))
    if p.is_zero():
        p = ParamPoly.const(draw(small_fracs.filter(lambda c: c != 0)))
    return p


def points(names=NAMES):
    return st.fixed_dictionaries({n: st.fractions(min_value=-3, max_value=3, max_denominator=5) for n in names})


def as_fraction(s) -> Fraction:
    return s.rational()

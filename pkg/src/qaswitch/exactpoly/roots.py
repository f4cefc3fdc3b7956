"""Real-root isolation of rational univariate polynomials via Sturm sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .poly import ParamPoly

Coeffs = list  # Fractions, constant term first


@dataclass(frozen=True)
class RootInterval:
    """A closed interval [lo, hi] holding exactly one real root."""

    lo: Fraction
    hi: Fraction
    value: float

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi


def _coeffs(p: Union[ParamPoly, Sequence]) -> Coeffs:
    if isinstance(p, ParamPoly):
        if p.has_pi():
            raise ValueError("polynomial contains pi")
        if len(p.variables()) > 1:
            raise ValueError("polynomial is not univariate")
        c = p.univariate()
    else:
        c = [Fraction(x) for x in p]
    while c and c[-1] == 0:
        c.pop()
    return c


def _eval(c: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _deriv(c: Coeffs) -> Coeffs:
    return [i * c[i] for i in range(1, len(c))]


def _rem(a: Coeffs, b: Coeffs) -> Coeffs:
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        f = r[-1] / lb
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] -= f * bi
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _quo(a: Coeffs, b: Coeffs) -> Coeffs:
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(r) - 1 >= db and r:
        f = r[-1] / lb
        shift = len(r) - 1 - db
        q[shift] = f
        for i, bi in enumerate(b):
            r[shift + i] -= f * bi
        r.pop()
    return q


def _gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    while b:
        a, b = b, _rem(a, b)
    return [x / a[-1] for x in a]


def _monic_int(c: Coeffs) -> Coeffs:
    # scale to coprime integers; keeps Fraction arithmetic cheap
    from math import gcd, lcm

    L = lcm(*(x.denominator for x in c))
    ints = [int(x * L) for x in c]
    g = gcd(*ints)
    return [Fraction(v // g) for v in ints]


def squarefree(c: Coeffs) -> Coeffs:
    g = _gcd(c, _deriv(c))
    return _monic_int(_quo(c, g)) if len(g) > 1 else _monic_int(c)


def sturm_sequence(p) -> list[Coeffs]:
    c = squarefree(_coeffs(p))
    seq = [c, _deriv(c)]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _variations(seq: list[Coeffs], x: Fraction) -> int:
    n = 0
    prev = 0
    for c in seq:
        v = _eval(c, x)
        if v:
            s = 1 if v > 0 else -1
            if prev and s != prev:
                n += 1
            prev = s
    return n


def _bound(c: Coeffs) -> Fraction:
    lead = abs(c[-1])
    m = max((abs(a) / lead for a in c[:-1]), default=Fraction(0))
    b = Fraction(1)
    while b <= 1 + m:
        b *= 2
    return b


def real_root_count(p, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi] (whole line by default)."""
    seq = sturm_sequence(p)
    B = _bound(seq[0])
    a = -B if lo is None else Fraction(lo)
    b = B if hi is None else Fraction(hi)
    return _variations(seq, a) - _variations(seq, b)


def isolate_real_roots(p, precision: float = 1e-9) -> list[RootInterval]:
    """Disjoint isolating intervals of every distinct real root, refined to ``precision``."""
    if precision <= 0:
        raise ValueError("precision must be positive")
    c = _coeffs(p)
    if len(c) < 2:
        raise ValueError("polynomial is constant")
    seq = sturm_sequence(c)
    sf = seq[0]
    V = lambda x: _variations(seq, x)  # noqa: E731
    B = _bound(sf)
    eps = Fraction(precision)
    found: list[RootInterval] = []
    # entries: (a, b, V(a), V(b), b is a root already reported)
    stack = [(-B, B, V(-B), V(B), False)]
    while stack:
        a, b, va, vb, skip_b = stack.pop()
        n = va - vb - skip_b
        if n == 0:
            continue
        if not skip_b and _eval(sf, b) == 0:
            found.append(RootInterval(b, b, float(b)))
            stack.append((a, b, va, vb, True))
            continue
        if n == 1:
            while b - a > eps:
                m = (a + b) / 2
                if _eval(sf, m) == 0:
                    a = b = m
                    break
                vm = V(m)
                if va - vm == 1:
                    b, vb, skip_b = m, vm, False
                else:
                    a, va = m, vm
            found.append(RootInterval(a, b, float((a + b) / 2)))
            continue
        m = (a + b) / 2
        vm = V(m)
        stack.append((a, m, va, vm, False))
        stack.append((m, b, vm, vb, skip_b))
    found.sort(key=lambda r: r.lo)
    return found

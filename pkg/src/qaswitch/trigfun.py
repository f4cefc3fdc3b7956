"""Trigonometric polynomials with theta-polynomial, parameter-polynomial coefficients.

A :class:`TrigPoly` is a finite sum of ``c * theta^p * cos(j*theta)`` and
``c * theta^p * sin(j*theta)`` with ``c`` a :class:`~qaswitch.exactpoly.ParamPoly`.
Terms share the packed-key store of ``ParamPoly``; the low nine bits of a key
hold the Fourier slot and bits 9-16 the theta power.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .exactpoly import ParamPoly, Scalar
from .exactpoly._backend import kernels
from .exactpoly.poly import (
    PI_SHIFT,
    THETA_SHIFT,
    _Sparse,
    _check_overflow,
    _MASK,
    unpack,
    VARIABLES,
)

_SLOT = (1 << 9) - 1
_THETA = _MASK << THETA_SHIFT
_STRIP = _SLOT | _THETA


def _slot(key: int) -> tuple[int, int, int]:
    """(theta power, harmonic j, 1 for sin / 0 for cos)."""
    return (key >> THETA_SHIFT) & _MASK, (key >> 1) & 255, key & 1


def _mk(base: int, p: int, j: int, s: int) -> int:
    return base | (p << THETA_SHIFT) | (j << 1) | s


class TrigPoly(_Sparse):
    __slots__ = ()
    _rank = 1

    # -- construction --------------------------------------------------
    @classmethod
    def cos(cls, j: int = 1, coeff=1) -> "TrigPoly":
        return cls.term(coeff, 0, j, 0)

    @classmethod
    def sin(cls, j: int = 1, coeff=1) -> "TrigPoly":
        return cls.term(coeff, 0, j, 1)

    @classmethod
    def theta(cls, p: int = 1) -> "TrigPoly":
        return cls.term(1, p, 0, 0)

    @classmethod
    def term(cls, coeff, p: int, j: int, s: int) -> "TrigPoly":
        """coeff * theta^p * (cos|sin)(j*theta)."""
        if j < 0:
            j, coeff = -j, (-coeff if s else coeff)
        if s and j == 0:
            return cls()
        c = _as_param(coeff)
        t, d = c.raw()
        return cls._from({_mk(k, p, j, s): v for k, v in t.items()}, d)

    @classmethod
    def from_param(cls, c) -> "TrigPoly":
        t, d = _as_param(c).raw()
        return cls(dict(t), d, _raw=True)

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "TrigPoly":
        """coeff * cos(theta)^a * sin(theta)^b in the Fourier basis."""
        return cls.from_param(coeff) * _cos_sin_power(a, b)

    # -- arithmetic ----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Scalar):
            other = other.to_poly()
        if not isinstance(other, _Sparse):
            return NotImplemented
        if not self._t or not other._t:
            return TrigPoly()
        _check_overflow(self, other)
        if isinstance(other, TrigPoly):
            return TrigPoly._from(kernels.trig_mul(self._t, other._t), 2 * self._d * other._d)
        return TrigPoly._from(kernels.mul(self._t, other._t), self._d * other._d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "TrigPoly":
        out = TrigPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    tmul = __mul__

    # -- structure -----------------------------------------------------
    def harmonics(self) -> dict[int, tuple["TrigPoly", "TrigPoly"]]:
        """j -> (cos coefficient, sin coefficient), each a theta-polynomial."""
        parts: dict[tuple[int, int], dict] = {}
        for k, v in self._t.items():
            j, s = (k >> 1) & 255, k & 1
            parts.setdefault((j, s), {})[k & ~_SLOT] = v
        out: dict[int, list] = {}
        for (j, s), t in parts.items():
            out.setdefault(j, [TrigPoly(), TrigPoly()])[s] = TrigPoly._from(t, self._d)
        return {j: tuple(v) for j, v in sorted(out.items())}

    def max_harmonic(self) -> int:
        return max(((k >> 1) & 255 for k in self._t), default=0)

    def theta_degree(self) -> int:
        return max(((k >> THETA_SHIFT) & _MASK for k in self._t), default=0)

    def subs(self, mapping) -> "TrigPoly":
        """Substitute parameters inside the coefficients."""
        groups: dict[int, dict] = {}
        for k, v in self._t.items():
            groups.setdefault(k & _STRIP, {})[k & ~_STRIP] = v
        out = TrigPoly()
        for slot, t in groups.items():
            c = ParamPoly._from(t, self._d).subs(mapping)
            ct, cd = c.raw()
            out = out + TrigPoly._from({k | slot: v for k, v in ct.items()}, cd)
        return out

    # -- calculus ------------------------------------------------------
    def derivative(self) -> "TrigPoly":
        out: dict[int, int] = {}
        get = out.get
        for k, v in self._t.items():
            p, j, s = _slot(k)
            base = k & ~_STRIP
            if p:
                kk = _mk(base, p - 1, j, s)
                out[kk] = get(kk, 0) + p * v
            if j:
                kk = _mk(base, p, j, 1 - s)
                out[kk] = get(kk, 0) + (j * v if s else -j * v)
        return TrigPoly._from(out, self._d)

    def antiderivative_zero(self) -> "TrigPoly":
        """F with F' = self and F(0) = 0."""
        if not self._t:
            return TrigPoly()
        slots = {k & _STRIP for k in self._t}
        tables = {sl: _antideriv(*_slot(sl)) for sl in slots}
        L = math.lcm(*(c.denominator for tab in tables.values() for _, c in tab))
        itabs = {
            sl: [(key, c.numerator * (L // c.denominator)) for key, c in tab]
            for sl, tab in tables.items()
        }
        out: dict[int, int] = {}
        get = out.get
        for k, v in self._t.items():
            base = k & ~_STRIP
            for key, c in itabs[k & _STRIP]:
                kk = base | key
                out[kk] = get(kk, 0) + c * v
        return TrigPoly._from(out, self._d * L)

    def eval_at_pi(self) -> ParamPoly:
        """Exact value at theta = pi, with pi kept formal."""
        out: dict[int, int] = {}
        get = out.get
        for k, v in self._t.items():
            p, j, s = _slot(k)
            if s:
                continue
            kk = (k & ~_STRIP) + (p << PI_SHIFT)
            out[kk] = get(kk, 0) + (-v if j & 1 else v)
        return ParamPoly._from(out, self._d)

    def eval_at_zero(self) -> ParamPoly:
        out: dict[int, int] = {}
        for k, v in self._t.items():
            if not k & (_THETA | 1):
                out[k & ~_STRIP] = out.get(k & ~_STRIP, 0) + v
        return ParamPoly._from(out, self._d)

    def integral_0_pi(self) -> ParamPoly:
        """Definite integral over [0, pi] without building the antiderivative."""
        if not self._t:
            return ParamPoly()
        slots = {k & _STRIP for k in self._t}
        tables = {sl: _definite(*_slot(sl)) for sl in slots}
        L = math.lcm(*(c.denominator for tab in tables.values() for _, c in tab))
        out: dict[int, int] = {}
        get = out.get
        for k, v in self._t.items():
            base = k & ~_STRIP
            for q, c in tables[k & _STRIP]:
                kk = base + (q << PI_SHIFT)
                out[kk] = get(kk, 0) + c.numerator * (L // c.denominator) * v
        return ParamPoly._from(out, self._d * L)

    def evalf(self, theta: float, values: Mapping[str, float] | None = None) -> float:
        values = values or {}
        acc = 0.0
        for k, c in self.items():
            e, pi_e, _ = unpack(k & ~_STRIP)
            p, j, s = _slot(k)
            x = float(c) * math.pi**pi_e * theta**p
            for name, ei in zip(VARIABLES, e):
                if ei:
                    x *= float(values[name]) ** ei
            acc += x * (math.sin(j * theta) if s else math.cos(j * theta))
        return acc

    # -- text ----------------------------------------------------------
    def __str__(self) -> str:
        from .exactpoly.poly import format_terms

        def extra(k):
            _, j, s = _slot(k)
            if j == 0:
                return ""
            return f"{'sin' if s else 'cos'}({j}*t)"

        return format_terms(self.items(), extra)

    def __repr__(self) -> str:
        return f"TrigPoly('{self}')"


def _as_param(c) -> ParamPoly:
    if isinstance(c, ParamPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return ParamPoly.const(c)
    if isinstance(c, Scalar):
        return c.to_poly()
    if isinstance(c, str):
        return ParamPoly.parse(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


@lru_cache(maxsize=None)
def _cos_sin_power(a: int, b: int) -> TrigPoly:
    return TrigPoly.cos(1) ** a * TrigPoly.sin(1) ** b


@lru_cache(maxsize=None)
def _indefinite(p: int, j: int, s: int) -> tuple[tuple[int, int, int, Fraction], ...]:
    """Antiderivative of theta^p * (cos|sin)(j theta) as (q, j, s, coeff) terms."""
    if j == 0:
        return ((p + 1, 0, 0, Fraction(1, p + 1)),)
    # integration by parts
    if s == 0:
        head = (p, j, 1, Fraction(1, j))
        sign = Fraction(-p, j)
    else:
        head = (p, j, 0, Fraction(-1, j))
        sign = Fraction(p, j)
    out = [head]
    if p:
        out += [(q, jj, ss, c * sign) for q, jj, ss, c in _indefinite(p - 1, j, 1 - s)]
    return tuple(out)


@lru_cache(maxsize=None)
def _antideriv(p: int, j: int, s: int) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    at_zero = Fraction(0)
    for q, jj, ss, c in _indefinite(p, j, s):
        key = _mk(0, q, jj, ss)
        acc[key] = acc.get(key, 0) + c
        if q == 0 and ss == 0:
            at_zero += c
    if at_zero:
        acc[0] = acc.get(0, 0) - at_zero
    return tuple((k, c) for k, c in acc.items() if c)


@lru_cache(maxsize=None)
def _definite(p: int, j: int, s: int) -> tuple[tuple[int, Fraction], ...]:
    """Integral over [0, pi] as (pi power, coeff) pairs."""
    acc: dict[int, Fraction] = {}
    for key, c in _antideriv(p, j, s):
        q, jj, ss = _slot(key)
        if ss:
            continue
        v = -c if jj & 1 else c
        acc[q] = acc.get(q, 0) + v
    return tuple((q, c) for q, c in acc.items() if c)


def antiderivative_zero(f: TrigPoly) -> TrigPoly:
    return f.antiderivative_zero()


def eval_at_pi(f: TrigPoly) -> ParamPoly:
    return f.eval_at_pi()


def tmul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    return a * b


__all__ = ["TrigPoly", "antiderivative_zero", "eval_at_pi", "tmul"]

"""Exact multivariate polynomials over Q[pi].

Terms live in a ``dict[int, int]``: the key packs the exponent vector so that
monomial multiplication is integer addition and the canonical graded-lex
order is plain integer order; the value is an integer numerator over one
common positive denominator held by the polynomial.

Key layout, least significant bits first::

    s (1 bit, cos/sin) | j (8, harmonic) | theta (8) | pi (8) |
    kt k b02 b11 b20 a02 a11 a20 lambda delta (8 each) | total degree (8)

``ParamPoly`` never carries the first three fields; ``trigfun.TrigPoly``
reuses the same store with them.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from ._backend import kernels

Rational = Fraction

VARIABLES = ("delta", "lambda", "a20", "a11", "a02", "b20", "b11", "b02", "k", "kt")
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
NVARS = len(VARIABLES)

FIELD = 8
FOURIER_BITS = 9
THETA_SHIFT = 9
PI_SHIFT = 17
_PARAM_BASE = 25
PARAM_SHIFT = tuple(_PARAM_BASE + FIELD * (NVARS - 1 - i) for i in range(NVARS))
TDEG_SHIFT = _PARAM_BASE + FIELD * NVARS
_MASK = (1 << FIELD) - 1

# bit 7 of every field whose sum could carry out of its slot
_HIGH = (
    (1 << (TDEG_SHIFT + 7))
    | (1 << (PI_SHIFT + 7))
    | (1 << (THETA_SHIFT + 7))
    | (1 << 8)
)
_PARAM_MASK = sum(_MASK << s for s in PARAM_SHIFT) | (_MASK << TDEG_SHIFT)
_FIELD_MASKS = tuple(_MASK << s for s in (*PARAM_SHIFT, TDEG_SHIFT, PI_SHIFT, THETA_SHIFT))

Number = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the divisor does not divide."""


class PolySyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownVariableError(PolySyntaxError):
    def __init__(self, name: str, pos: int):
        super().__init__(f"unknown variable {name!r}", pos)
        self.name = name


def pack(exps: Iterable[int] = (), pi: int = 0, theta: int = 0) -> int:
    exps = tuple(exps) + (0,) * (NVARS - len(tuple(exps)))
    key = 0
    for e, s in zip(exps, PARAM_SHIFT):
        if e < 0 or e > 127:
            raise OverflowError("exponent out of range")
        key |= e << s
    tdeg = sum(exps)
    if tdeg > 127 or pi > 127 or theta > 127:
        raise OverflowError("exponent out of range")
    return key | (tdeg << TDEG_SHIFT) | (pi << PI_SHIFT) | (theta << THETA_SHIFT)


def unpack(key: int) -> tuple[tuple[int, ...], int, int]:
    """Return (param exponents, pi exponent, theta exponent)."""
    exps = tuple((key >> s) & _MASK for s in PARAM_SHIFT)
    return exps, (key >> PI_SHIFT) & _MASK, (key >> THETA_SHIFT) & _MASK


def var_exponent(key: int, index: int) -> int:
    return (key >> PARAM_SHIFT[index]) & _MASK


def pi_exponent(key: int) -> int:
    return (key >> PI_SHIFT) & _MASK


def _mono_divides(kd: int, kp: int) -> bool:
    for m in _FIELD_MASKS:
        if (kd & m) > (kp & m):
            return False
    return True


def _normalized(t: dict, d: int) -> tuple[dict, int]:
    if not t:
        return {}, 1
    if d < 0:
        t = {k: -v for k, v in t.items()}
        d = -d
    g = math.gcd(d, *t.values())
    if g > 1:
        t = {k: v // g for k, v in t.items()}
        d //= g
    return t, d


def _check_overflow(a: "_Sparse", b: "_Sparse") -> None:
    if (a._orkeys() | b._orkeys()) & _HIGH:
        raise OverflowError("exponent exceeds the packed-key range")


class _Sparse:
    """Shared sparse store: integer numerators over a common denominator."""

    __slots__ = ("_t", "_d", "_or", "_hash")

    def __init__(self, terms: dict | None = None, den: int = 1, *, _raw: bool = False):
        if _raw:
            self._t, self._d = terms, den
        else:
            t = {k: v for k, v in (terms or {}).items() if v}
            self._t, self._d = _normalized(t, den)
        self._or = None
        self._hash = None

    @classmethod
    def _from(cls, t: dict, d: int):
        t, d = _normalized({k: v for k, v in t.items() if v}, d)
        return cls(t, d, _raw=True)

    def _orkeys(self) -> int:
        if self._or is None:
            self._or = kernels.or_keys(self._t)
        return self._or

    # -- basic queries -------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self) -> int:
        return len(self._t)

    def raw(self) -> tuple[dict, int]:
        return self._t, self._d

    def coefficient(self, key: int) -> Fraction:
        return Fraction(self._t.get(key, 0), self._d)

    def items(self):
        """(key, Fraction) pairs in canonical (descending) order."""
        d = self._d
        return [(k, Fraction(self._t[k], d)) for k in sorted(self._t, reverse=True)]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = type(self).const(other)
        if not isinstance(other, _Sparse):
            return NotImplemented
        return self._d == other._d and self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._d, frozenset(self._t.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------
    @classmethod
    def const(cls, c: Number):
        c = Fraction(c)
        return cls({0: c.numerator}, c.denominator) if c else cls()

    _rank = 0

    def _coerce(self, other):
        if isinstance(other, _Sparse):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).const(other)
        return None

    def _add(self, other: "_Sparse", sign: int):
        if type(self) is type(other):
            if not other._t:
                return self
            if not self._t:
                return other if sign > 0 else -other
        d1, d2 = self._d, other._d
        L = d1 // math.gcd(d1, d2) * d2
        f1, f2 = L // d1, (L // d2) * sign
        t = {k: v * f1 for k, v in self._t.items()} if f1 != 1 else dict(self._t)
        get = t.get
        for k, v in other._t.items():
            t[k] = get(k, 0) + v * f2
        cls = type(other) if other._rank > self._rank else type(self)
        return cls._from(t, L)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o, 1)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._add(self, -1)

    def __neg__(self):
        return type(self)({k: -v for k, v in self._t.items()}, self._d, _raw=True)

    def __pos__(self):
        return self

    def scale(self, c: Number):
        c = Fraction(c)
        if not c or not self._t:
            return type(self)()
        return type(self)._from({k: v * c.numerator for k, v in self._t.items()}, self._d * c.denominator)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        if isinstance(other, _Sparse) and other.is_constant():
            c = other.constant()
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / c)
        return NotImplemented

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant(self) -> Fraction:
        """Value of a constant polynomial (no variables, no pi)."""
        if not self.is_constant():
            raise ValueError("polynomial is not a rational constant")
        return Fraction(self._t.get(0, 0), self._d)


class Scalar:
    """Polynomial in the formal transcendental pi with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Number] | Number | None = None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, Mapping):
            terms = {0: terms}
        self.terms = {int(p): Fraction(c) for p, c in terms.items() if c}

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other)
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return Scalar(t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Scalar) else Scalar(other)))

    def __mul__(self, other):
        other = other if isinstance(other, Scalar) else Scalar(other)
        t: dict[int, Fraction] = {}
        for p, c in self.terms.items():
            for q, e in other.terms.items():
                t[p + q] = t.get(p + q, 0) + c * e
        return Scalar(t)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar involves pi")
        return self.terms.get(0, Fraction(0))

    def __float__(self):
        return float(sum(c * Fraction(math.pi) ** p for p, c in self.terms.items()))

    def to_poly(self) -> "ParamPoly":
        out = ParamPoly()
        for p, c in self.terms.items():
            out = out + ParamPoly.const(c) * ParamPoly.pi() ** p
        return out

    def __repr__(self):
        return f"Scalar({self.to_poly()})"

    def __str__(self):
        return str(self.to_poly())


class ParamPoly(_Sparse):
    """Polynomial in the fixed parameter list with :class:`Scalar` coefficients."""

    __slots__ = ()

    # -- construction --------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        if name not in VAR_INDEX:
            raise UnknownVariableError(name, 0)
        e = [0] * NVARS
        e[VAR_INDEX[name]] = 1
        return cls({pack(e): 1}, 1, _raw=True)

    @classmethod
    def pi(cls) -> "ParamPoly":
        return cls({pack(pi=1): 1}, 1, _raw=True)

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        return _Parser(text).parse()

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, Number]) -> "ParamPoly":
        """Build from ``{(exponent tuple, pi power): coefficient}``."""
        fr = {pack(e, pi=p): Fraction(c) for (e, p), c in terms.items() if c}
        if not fr:
            return cls()
        L = math.lcm(*(c.denominator for c in fr.values()))
        return cls._from({k: c.numerator * (L // c.denominator) for k, c in fr.items()}, L)

    # -- arithmetic ----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Scalar):
            other = other.to_poly()
        if not isinstance(other, _Sparse):
            return NotImplemented
        if type(other) is not ParamPoly:
            return other.__rmul__(self)
        if not self._t or not other._t:
            return ParamPoly()
        _check_overflow(self, other)
        return ParamPoly._from(kernels.mul(self._t, other._t), self._d * other._d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power")
        result = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structure -----------------------------------------------------
    def terms(self) -> dict[tuple[int, ...], Scalar]:
        """Monomial exponent vector -> Scalar coefficient."""
        out: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for k, v in self._t.items():
            e, p, _ = unpack(k)
            out.setdefault(e, {})[p] = Fraction(v, self._d)
        return {e: Scalar(t) for e, t in out.items()}

    def variables(self) -> list[str]:
        acc = self._orkeys()
        return [n for n, s in zip(VARIABLES, PARAM_SHIFT) if (acc >> s) & _MASK]

    def has_pi(self) -> bool:
        return bool((self._orkeys() >> PI_SHIFT) & _MASK)

    def degree(self, name: str | None = None) -> int:
        if not self._t:
            return -1
        if name is None:
            return max(k >> TDEG_SHIFT for k in self._t)
        s = PARAM_SHIFT[VAR_INDEX[name]]
        return max((k >> s) & _MASK for k in self._t)

    def pi_degree(self) -> int:
        return max(((k >> PI_SHIFT) & _MASK for k in self._t), default=-1)

    def coeffs_in(self, name: str) -> dict[int, "ParamPoly"]:
        """Split as sum_i c_i * name**i; returns {i: c_i}."""
        idx = VAR_INDEX[name]
        s = PARAM_SHIFT[idx]
        parts: dict[int, dict] = {}
        for k, v in self._t.items():
            e = (k >> s) & _MASK
            nk = k - (e << s) - (e << TDEG_SHIFT)
            parts.setdefault(e, {})[nk] = v
        return {e: ParamPoly._from(t, self._d) for e, t in parts.items()}

    def scalar_coeffs(self) -> dict[int, Scalar]:
        """pi-power -> rational; only for constant-in-parameters polynomials."""
        if self._orkeys() & _PARAM_MASK:
            raise ValueError("polynomial depends on parameters")
        return Scalar({pi_exponent(k): Fraction(v, self._d) for k, v in self._t.items()}).terms

    def as_scalar(self) -> Scalar:
        return Scalar(self.scalar_coeffs())

    def pi_part(self, p: int) -> "ParamPoly":
        """Coefficient of pi**p as a pi-free polynomial."""
        shift = p << PI_SHIFT
        return ParamPoly._from(
            {k - shift: v for k, v in self._t.items() if pi_exponent(k) == p}, self._d
        )

    def leading_key(self) -> int:
        return max(self._t)

    def leading_coefficient(self) -> Fraction:
        return Fraction(self._t[max(self._t)], self._d)

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self._t:
            return Fraction(0)
        return Fraction(math.gcd(*self._t.values()), self._d)

    def primitive(self) -> "ParamPoly":
        """Integer-coefficient associate with positive leading coefficient."""
        if not self._t:
            return self
        g = math.gcd(*self._t.values())
        if self._t[max(self._t)] < 0:
            g = -g
        return ParamPoly({k: v // g for k, v in self._t.items()}, 1, _raw=True)

    def diff(self, name: str) -> "ParamPoly":
        s = PARAM_SHIFT[VAR_INDEX[name]]
        one = (1 << s) + (1 << TDEG_SHIFT)
        t = {}
        for k, v in self._t.items():
            e = (k >> s) & _MASK
            if e:
                t[k - one] = v * e
        return ParamPoly._from(t, self._d)

    def subs(
        self,
        mapping: Mapping[str, Union["ParamPoly", Number, str]],
        den: Union["ParamPoly", Number, str, None] = None,
        weight: int | None = None,
    ) -> "ParamPoly":
        """Simultaneous substitution of variables by polynomials.

        With ``den`` every mapped value is read as ``value/den`` and the
        result is multiplied by ``den**weight`` (default: the largest total
        degree in the mapped variables) so that it stays polynomial.
        """
        sub = {}
        for name, value in mapping.items():
            if name not in VAR_INDEX:
                raise UnknownVariableError(name, 0)
            sub[VAR_INDEX[name]] = as_poly(value)
        if not sub or not self._t:
            return self
        idxs = sorted(sub)
        strip = sum(_MASK << PARAM_SHIFT[i] for i in idxs)
        groups: dict[tuple, dict] = {}
        for k, v in self._t.items():
            es = tuple((k >> PARAM_SHIFT[i]) & _MASK for i in idxs)
            tot = sum(es)
            rest = (k & ~strip) - (tot << TDEG_SHIFT)
            groups.setdefault(es, {})[rest] = v
        powers: dict[tuple[int, int], ParamPoly] = {}

        def power(i: int, e: int) -> ParamPoly:
            if (i, e) not in powers:
                powers[(i, e)] = sub[i] ** e
            return powers[(i, e)]

        if den is not None:
            den = as_poly(den)
            if den.is_zero():
                raise ZeroDivisionError("zero substitution denominator")
            top = max(sum(es) for es in groups)
            if weight is None:
                weight = top
            elif weight < top:
                raise ValueError("weight below the substituted degree")
        out = ParamPoly()
        for es, t in groups.items():
            factor = ParamPoly.const(1)
            for i, e in zip(idxs, es):
                if e:
                    factor = factor * power(i, e)
            if den is not None and weight - sum(es):
                factor = factor * den ** (weight - sum(es))
            out = out + factor * ParamPoly._from(t, self._d)
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Scalar:
        """Exact value at a rational point (all variables bound); pi stays formal."""
        missing = set(self.variables()) - set(values)
        if missing:
            raise ValueError(f"unbound variables: {sorted(missing)}")
        vals = {VAR_INDEX[n]: Fraction(v) for n, v in values.items() if n in VAR_INDEX}
        acc: dict[int, Fraction] = {}
        pw: dict[tuple[int, int], Fraction] = {}
        for k, v in self._t.items():
            e, p, _ = unpack(k)
            term = Fraction(v)
            for i, ei in enumerate(e):
                if ei:
                    key = (i, ei)
                    if key not in pw:
                        pw[key] = vals[i] ** ei
                    term *= pw[key]
            acc[p] = acc.get(p, 0) + term
        return Scalar({p: c / self._d for p, c in acc.items()})

    def evalf(self, values: Mapping[str, float | Number]) -> float:
        return float(self.evaluate({n: Fraction(v) for n, v in values.items()}))

    def univariate(self, name: str | None = None) -> list[Fraction]:
        """Dense coefficient list (constant first) of a pi-free univariate polynomial."""
        vs = self.variables()
        if self.has_pi():
            raise ValueError("polynomial contains pi")
        if len(vs) > 1 or (name is not None and vs and vs[0] != name):
            raise ValueError("polynomial is not univariate")
        if not vs:
            return [self.constant()] if self._t else []
        cs = self.coeffs_in(vs[0])
        n = max(cs)
        return [cs[i].constant() if i in cs else Fraction(0) for i in range(n + 1)]

    # -- text ----------------------------------------------------------
    def __str__(self) -> str:
        return format_terms(self.items())

    def __repr__(self) -> str:
        return f"ParamPoly('{self}')"


def _mono_text(key: int, extra: str = "") -> list[str]:
    e, p, th = unpack(key)
    parts = []
    if p:
        parts.append("pi" if p == 1 else f"pi^{p}")
    if th:
        parts.append("t" if th == 1 else f"t^{th}")
    for name, ei in zip(VARIABLES, e):
        if ei:
            parts.append(name if ei == 1 else f"{name}^{ei}")
    if extra:
        parts.append(extra)
    return parts


def _coef_text(c: Fraction, has_factors: bool) -> str:
    if c.denominator == 1:
        return "" if (has_factors and c == 1) else str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def format_terms(items, extra=None) -> str:
    """Canonical text of (key, Fraction) pairs given in canonical order."""
    if not items:
        return "0"
    out = []
    for i, (k, c) in enumerate(items):
        factors = _mono_text(k, extra(k) if extra else "")
        neg = c < 0
        mag = _coef_text(-c if neg else c, bool(factors))
        body = "*".join(([mag] if mag else []) + factors)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def as_poly(value) -> ParamPoly:
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, Scalar):
        return value.to_poly()
    if isinstance(value, (int, Fraction)):
        return ParamPoly.const(value)
    if isinstance(value, str):
        return ParamPoly.parse(value)
    raise TypeError(f"cannot convert {type(value).__name__} to ParamPoly")


def canonicalize(text: str) -> ParamPoly:
    return ParamPoly.parse(text)


# -- exact division ------------------------------------------------------
def exact_divide(p: ParamPoly, d: ParamPoly) -> ParamPoly:
    """Quotient q with q*d == p; raises :class:`NotDivisible` otherwise."""
    p, d = as_poly(p), as_poly(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ParamPoly()
    if d.is_constant():
        return p.scale(1 / d.constant())
    dt, dd = d.raw()
    kd = max(dt)
    lead = Fraction(dt[kd], dd)
    dlist = [(k - kd, Fraction(v, dd) / lead) for k, v in dt.items() if k != kd]
    pt, pd = p.raw()
    rem = {k: Fraction(v, pd) for k, v in pt.items()}
    heap = [-k for k in rem]
    heapq.heapify(heap)
    q: dict[int, Fraction] = {}
    while heap:
        kp = -heapq.heappop(heap)
        c = rem.get(kp)
        if not c:
            rem.pop(kp, None)
            continue
        if not _mono_divides(kd, kp):
            raise NotDivisible("leading term not divisible")
        del rem[kp]
        shift = kp - kd
        q[shift] = c / lead
        for off, dc in dlist:
            k = kp + off
            v = rem.get(k)
            if v is None:
                rem[k] = -c * dc
                heapq.heappush(heap, -k)
            else:
                rem[k] = v - c * dc
    L = math.lcm(*(v.denominator for v in q.values()))
    out = ParamPoly._from({k: v.numerator * (L // v.denominator) for k, v in q.items()}, L)
    return out


def divides(d: ParamPoly, p: ParamPoly) -> bool:
    try:
        exact_divide(p, d)
    except NotDivisible:
        return False
    return True


# -- parser ----------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("num", m.group(1), start))
            elif m.group(2):
                self.toks.append(("id", m.group(2), start))
            else:
                op = m.group(3)
                self.toks.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> ParamPoly:
        if not self.toks:
            raise PolySyntaxError("empty expression", 0)
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {val!r}", pos)
        return out

    def expr(self) -> ParamPoly:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> ParamPoly:
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                f = self.factor()
                if not f.is_constant():
                    raise PolySyntaxError("division by a non-constant", pos)
                if f.constant() == 0:
                    raise PolySyntaxError("division by zero", pos)
                acc = acc.scale(1 / f.constant())
            else:
                return acc

    def factor(self) -> ParamPoly:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolySyntaxError("expected integer exponent", pos)
            base = base ** int(val)
        return base

    def base(self) -> ParamPoly:
        kind, val, pos = self.take()
        if kind == "num":
            return ParamPoly.const(int(val))
        if kind == "id":
            if val == "pi":
                return ParamPoly.pi()
            if val not in VAR_INDEX:
                raise UnknownVariableError(val, pos)
            return ParamPoly.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, v2, p2 = self.take()
            if kind != "op" or v2 != ")":
                raise PolySyntaxError("expected ')'", p2)
            return inner
        if kind == "op" and val in "+-":
            b = self.factor()
            return -b if val == "-" else b
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {val!r}", pos)

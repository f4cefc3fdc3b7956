"""Resultants by the subresultant pseudo-remainder sequence.

Coefficients are ParamPoly in the remaining variables; every division in
the sequence is exact, so no rational functions appear.
"""

from __future__ import annotations

from .poly import ParamPoly, as_poly, exact_divide


def _dense(p: ParamPoly, var: str) -> list[ParamPoly]:
    cs = p.coeffs_in(var)
    if not cs:
        return []
    return [cs.get(i, ParamPoly()) for i in range(max(cs) + 1)]


def _trim(a: list[ParamPoly]) -> list[ParamPoly]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def pseudo_remainder(a: list[ParamPoly], b: list[ParamPoly]) -> list[ParamPoly]:
    """R with lc(b)**(deg a - deg b + 1) * a = Q*b + R, coefficient lists low-first."""
    r = _trim(list(a))
    db = len(b) - 1
    lc = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lc * x for x in r]
        for i, bi in enumerate(b):
            if not bi.is_zero():
                r[shift + i] = r[shift + i] - c * bi
        r.pop()
        _trim(r)
        e -= 1
    if e > 0 and r:
        f = lc ** e
        r = [f * x for x in r]
    return r


def resultant(p, q, var: str) -> ParamPoly:
    """Resultant of p and q with respect to ``var`` (Sylvester determinant)."""
    p, q = as_poly(p), as_poly(q)
    if var not in p.variables() and var not in q.variables():
        raise ValueError(f"variable {var!r} occurs in neither polynomial")
    a, b = _dense(p, var), _dense(q, var)
    if not a or not b:
        return ParamPoly()
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            s = -1
    if len(b) == 1:
        return b[0] ** (len(a) - 1) * s
    g = ParamPoly.const(1)
    h = ParamPoly.const(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = pseudo_remainder(a, b)
        if not r:
            return ParamPoly()
        a = b
        div = g * h ** delta
        b = [exact_divide(x, div) for x in r]
        g = a[-1]
        if delta:
            h = exact_divide(g ** delta, h ** (delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    res = exact_divide(b[0] ** da, h ** (da - 1))
    return res * s


def sylvester_matrix(p, q, var: str) -> list[list[ParamPoly]]:
    a, b = _dense(as_poly(p), var)[::-1], _dense(as_poly(q), var)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ParamPoly()] * i + a + [ParamPoly()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ParamPoly()] * i + b + [ParamPoly()] * (size - n - 1 - i))
    return rows

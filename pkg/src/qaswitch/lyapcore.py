"""Half-return series, focus values and period constants.

With x = r^(1/lambda) cos(theta) a half system becomes

    (1 + sum_k psi_{k+2} r^k) dr/dtheta = lambda * r * sum_k phi_{k+2} r^k.

The solution with r(0) = h is expanded as r = sum_m u_m(theta) h^m.  Two
equivalent recursions are provided: the textbook one driven by the radial
series R_k (``variational_solve``) and a quotient-free one that works on the
equation above directly (``solve_half``), using r^j r' = (r^(j+1))'/(j+1).
Focus values are V_m = u_m(pi) - v_m(pi), where v is the series of the
reflected, time-reversed lower half.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactpoly import ParamPoly, as_poly
from .sysmodel import (
    AngularForm,
    HalfSystem,
    PreconditionError,
    Substitution,
    SwitchingSystem,
    polar_decompose,
    reflect_time_reverse,
)
from .trigfun import TrigPoly

DEFAULT_FOCUS_ORDER = 8
DEFAULT_PERIOD_ORDER = 6


@dataclass
class ReturnSeries:
    """u_1..u_N of one half and the power tables Omega[j][m] = [h^m] r^j."""

    order: int
    u: list[TrigPoly]  # u[0] unused
    omega: dict[int, list[TrigPoly]] = field(default_factory=dict)

    def coefficient(self, m: int) -> TrigPoly:
        return self.u[m]

    def power(self, j: int, m: int) -> TrigPoly:
        """[h^m] r^j, extending the table on demand (needs u_1..u_{m-j+1})."""
        if j == 1:
            return self.u[m]
        if m < j:
            return TrigPoly()
        row = self.omega.setdefault(j, [])
        while len(row) <= m:
            row.append(None)
        if row[m] is None:
            if j == 2:
                row[m] = _square_coeff(self.u, m)
            else:
                acc = TrigPoly()
                for i in range(1, m - j + 2):
                    acc = acc + self.u[i] * self.power(j - 1, m - i)
                row[m] = acc
        return row[m]

    def at_pi(self) -> list[ParamPoly]:
        return [ParamPoly()] + [self.u[m].eval_at_pi() for m in range(1, self.order + 1)]


def _square_coeff(u: Sequence[TrigPoly], m: int) -> TrigPoly:
    # sum_{i+j=m} u_i u_j using symmetry; u_1 = 1 costs nothing
    acc = TrigPoly()
    for i in range(1, (m + 1) // 2):
        acc = acc + (u[m - 1] if i == 1 else u[i] * u[m - i]) * 2
    if m % 2 == 0:
        h = u[m // 2]
        acc = acc + (h if m == 2 else h * h)
    return acc


def _check_order(N: int, low: int = 2) -> None:
    if not isinstance(N, int) or N < low:
        raise ValueError(f"order must be an integer >= {low}")


def variational_solve(Rs: Sequence[TrigPoly], N: int) -> ReturnSeries:
    """u_m = int_0^theta sum_{j=1}^{m-1} R_j Omega_{j+1,m}, u_1 = 1."""
    _check_order(N)
    series = ReturnSeries(N, [TrigPoly(), TrigPoly.const(1)])
    for m in range(2, N + 1):
        acc = TrigPoly()
        for j in range(1, m):
            R = Rs[j - 1] if j - 1 < len(Rs) else TrigPoly()
            if not R.is_zero():
                acc = acc + R * series.power(j + 1, m)
        series.u.append(acc.antiderivative_zero())
    return series


def solve_half(form: AngularForm, N: int) -> ReturnSeries:
    """Same series as :func:`variational_solve`, without forming the R_k."""
    _check_order(N)
    if not form.delta.is_zero():
        raise PreconditionError("series require delta = 0")
    series = ReturnSeries(N, [TrigPoly(), TrigPoly.const(1)])
    lam = form.lam
    lphi = {k: form.phi(k + 2) * lam for k in range(1, N) if not form.phi(k + 2).is_zero()}
    psi = {k: form.psi(k + 2) for k in range(1, N) if not form.psi(k + 2).is_zero()}
    for m in range(2, N + 1):
        acc = TrigPoly()
        for k in range(1, m):
            if k not in lphi and k not in psi:
                continue
            P = series.power(k + 1, m)
            if P.is_zero():
                continue
            if k in lphi:
                acc = acc + lphi[k] * P
            if k in psi:
                acc = acc - (psi[k] * P.derivative()).scale(Fraction(1, k + 1))
        series.u.append(acc.antiderivative_zero())
    return series


def half_period_series(form: AngularForm, series: ReturnSeries, N: int) -> list[ParamPoly]:
    """[h^m] int_0^pi dtheta / (1 + sum_k psi_{k+2} r^k) for m = 0..N."""
    if series.order < N:
        raise ValueError("return series too short")
    psi = {k: form.psi(k + 2) for k in range(1, N + 1) if not form.psi(k + 2).is_zero()}
    s = [TrigPoly()]
    for m in range(1, N + 1):
        acc = TrigPoly()
        for k, p in psi.items():
            if k <= m:
                acc = acc + p * series.power(k, m)
        s.append(acc)
    w = [TrigPoly.const(1)]
    for m in range(1, N + 1):
        acc = TrigPoly()
        for i in range(1, m + 1):
            if not s[i].is_zero() and not w[m - i].is_zero():
                acc = acc - s[i] * w[m - i]
        w.append(acc)
    return [wm.integral_0_pi() for wm in w]


# -- results ------------------------------------------------------------------
@dataclass(frozen=True)
class FocusValues:
    """V_m (m = 2..N): coefficient of h^m in the displacement function.

    ``zeroth`` is the separately reported 2*pi*delta.  ``scale`` records the
    factor D^(m-1) by which early substitution with a denominator D
    multiplied V_m (``None`` when no denominator was used).
    """

    values: dict[int, ParamPoly]
    zeroth: ParamPoly
    denominator: ParamPoly | None = None

    @property
    def order(self) -> int:
        return max(self.values)

    def __getitem__(self, m: int) -> ParamPoly:
        return self.values[m]

    def L(self, j: int) -> ParamPoly:
        """Index shift used for the printed constants: L_j ~ V_{j+1}."""
        return self.values[j + 1]

    def all_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def first_nonzero(self) -> int | None:
        for m in sorted(self.values):
            if not self.values[m].is_zero():
                return m
        return None


@dataclass(frozen=True)
class PeriodConstants:
    """T_m (m = 1..N): coefficient of h^m in T(h) - 2*pi."""

    values: dict[int, ParamPoly]
    denominator: ParamPoly | None = None

    @property
    def order(self) -> int:
        return max(self.values)

    def __getitem__(self, m: int) -> ParamPoly:
        return self.values[m]

    def all_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())


# -- drivers ------------------------------------------------------------------
def _prepare(s: SwitchingSystem, subs: Substitution | None) -> SwitchingSystem:
    if subs is not None:
        s = s.subs(subs.mapping, den=subs.denominator)
    if not s.delta.is_zero():
        raise PreconditionError("higher constants require delta = 0; the zeroth constant is 2*pi*delta")
    return s


def _halves(s: SwitchingSystem) -> tuple[AngularForm, AngularForm]:
    up = polar_decompose(s.upper, s.lam, s.delta)
    lo = polar_decompose(reflect_time_reverse(s.lower), s.lam, s.delta)
    return up, lo


def _solve_pair(up: AngularForm, lo: AngularForm, N: int, parallel: bool):
    if lo == up:
        su = solve_half(up, N)
        return su, su
    if parallel and (os.cpu_count() or 1) > 1:
        with ThreadPoolExecutor(2) as ex:
            fu = ex.submit(solve_half, up, N)
            fl = ex.submit(solve_half, lo, N)
            return fu.result(), fl.result()
    return solve_half(up, N), solve_half(lo, N)


def focus_values(
    s: SwitchingSystem, N: int = DEFAULT_FOCUS_ORDER, subs: Substitution | None = None, parallel: bool = False
) -> FocusValues:
    """V_2..V_N of the switching system, optionally after early substitution."""
    _check_order(N)
    delta = s.delta
    if subs is not None:
        delta = delta.subs({k: v for k, v in subs.mapping.items() if k in ("lambda", "delta")})
    zeroth = ParamPoly.pi() * delta * 2
    s = _prepare(s, subs)
    up, lo = _halves(s)
    su, sl = _solve_pair(up, lo, N, parallel)
    a, b = su.at_pi(), sl.at_pi()
    vals = {m: a[m] - b[m] for m in range(2, N + 1)}
    return FocusValues(vals, zeroth, subs.denominator if subs else None)


def period_constants(
    s: SwitchingSystem, N: int = DEFAULT_PERIOD_ORDER, subs: Substitution | None = None, parallel: bool = False
) -> PeriodConstants:
    """T_1..T_N of the return time T(h) - 2*pi."""
    _check_order(N, 1)
    s = _prepare(s, subs)
    up, lo = _halves(s)
    su, sl = _solve_pair(up, lo, max(N, 2), parallel)
    tu = half_period_series(up, su, N)
    tl = tu if sl is su else half_period_series(lo, sl, N)
    return PeriodConstants({m: tu[m] + tl[m] for m in range(1, N + 1)}, subs.denominator if subs else None)


def apply_conditions(values, subs: Substitution | Mapping, den=None):
    """Substitute into already computed constants.

    With a denominator D the result for V_m is D^(m-1) * V_m(p/D) (D^m * T_m
    for period constants), i.e. exactly what early substitution produces.
    """
    if not isinstance(subs, Substitution):
        subs = Substitution({k: as_poly(v) for k, v in subs.items()}, None if den is None else as_poly(den))
    D = subs.denominator
    if D is not None and D.is_zero():
        raise ZeroDivisionError("zero declared denominator")
    period = isinstance(values, PeriodConstants)
    direct = {k: v for k, v in subs.mapping.items() if k in ("lambda", "delta")}
    rest = {k: v for k, v in subs.mapping.items() if k not in direct}
    out = {}
    for m, v in values.values.items():
        if D is None:
            out[m] = v.subs(subs.mapping)
        else:
            w = m if period else m - 1
            out[m] = v.subs(direct).subs(rest, den=D, weight=w) if rest else v.subs(direct) * D**w
    if period:
        return PeriodConstants(out, D)
    return FocusValues(out, values.zeroth.subs(subs.mapping) if D is None else values.zeroth, D)


__all__ = [
    "DEFAULT_FOCUS_ORDER",
    "DEFAULT_PERIOD_ORDER",
    "FocusValues",
    "HalfSystem",
    "PeriodConstants",
    "ReturnSeries",
    "apply_conditions",
    "focus_values",
    "half_period_series",
    "period_constants",
    "solve_half",
    "variational_solve",
]

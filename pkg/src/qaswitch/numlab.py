"""Floating-point oracle for the series engine.

Each half is integrated in the angle,

    dr/dtheta = lambda * r * (delta + Phi) / (1 + Psi),   dt/dtheta = 1 / (1 + Psi),

with Phi = sum_k phi_{k+2}(theta) r^k and Psi likewise, evaluated straight
from the coefficient tables.  The upper half runs theta: 0 -> pi.  The lower
half is not reflected: it runs in its own coordinates from theta = 2*pi back
to pi, which checks the reflection rule used by the symbolic side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from .sysmodel import HalfSystem, PreconditionError, SwitchingSystem

GUARD = 0.1
DEFAULT_TOL = 1e-12
# DOP853 silently raises smaller rtol values to 100 * eps
RTOL_FLOOR = 100 * np.finfo(float).eps
R_MAX = 1e3


class NumericGuardError(ArithmeticError):
    """Trajectory left the region where the angular form is valid."""


def _float_table(h: HalfSystem, params: Mapping[str, float]) -> list[tuple[int, list, list]]:
    out = []
    for d in h.degrees():
        F = [(a, b, c.evalf(params)) for (a, b), c in h.F.get(d, {}).items()]
        G = [(a, b, c.evalf(params)) for (a, b), c in h.G.get(d, {}).items()]
        out.append((d, F, G))
    return out


@dataclass
class NumericInstance:
    lam: float
    delta: float
    upper: list
    lower: list
    params: dict = field(default_factory=dict)

    @classmethod
    def from_system(cls, s: SwitchingSystem, params: Mapping[str, float] | None = None) -> "NumericInstance":
        params = {k: float(v) for k, v in (params or {}).items()}
        lam = s.lam.evalf(params)
        if lam == 0:
            raise PreconditionError("lambda must be nonzero")
        delta = s.delta.evalf(params)
        return cls(lam, delta, _float_table(s.upper, params), _float_table(s.lower, params), params)

    def angular(self, which: str, theta: float, r: float) -> tuple[float, float]:
        """(Phi, Psi) at (theta, r) for one half in its own coordinates."""
        c, s = math.cos(theta), math.sin(theta)
        Phi = Psi = 0.0
        for d, F, G in self.upper if which == "upper" else self.lower:
            X = sum(A * c**a * s**b for a, b, A in F)
            Y = sum(B * c**a * s**b for a, b, B in G)
            rk = r ** (d - 1)
            Phi += (c * X + s * Y) * rk
            Psi += (c * Y - s * X) * rk
        return Phi, Psi


@dataclass(frozen=True)
class HalfResult:
    r: float
    time: float
    error: float
    steps: int


def _integrate(inst: NumericInstance, h: float, which: str, tol: float, with_time: bool):
    lam, delta = inst.lam, inst.delta

    def rhs(theta, y):
        Phi, Psi = inst.angular(which, theta, y[0])
        den = 1.0 + Psi
        dr = lam * y[0] * (delta + Phi) / den
        return [dr, 1.0 / den] if with_time else [dr]

    def guard(theta, y):
        return 1.0 + inst.angular(which, theta, y[0])[1] - GUARD

    def blowup(theta, y):
        return R_MAX - abs(y[0])

    guard.terminal = blowup.terminal = True
    span = (0.0, math.pi) if which == "upper" else (2 * math.pi, math.pi)
    y0 = [h, 0.0] if with_time else [h]
    sol = solve_ivp(
        rhs, span, y0, method="DOP853", rtol=max(tol, RTOL_FLOOR), atol=tol * 1e-3 * h, events=[guard, blowup]
    )
    if sol.status == 1 or not sol.success:
        raise NumericGuardError(f"{which} half left the validity region (h={h})")
    r = float(sol.y[0, -1])
    t = abs(float(sol.y[1, -1])) if with_time else float("nan")
    return r, t, sol.t.size


def half_return(
    inst: NumericInstance, h: float, which: str = "upper", tol: float = DEFAULT_TOL, with_time: bool = False
) -> HalfResult:
    """r at theta = pi for the trajectory starting at radius h on the positive x-axis."""
    if h <= 0:
        raise ValueError("h must be positive")
    if which not in ("upper", "lower"):
        raise ValueError("which must be 'upper' or 'lower'")
    if inst.delta != 0 and with_time:
        raise PreconditionError("period runs require delta = 0")
    r, t, n = _integrate(inst, h, which, tol, with_time)
    # companion run at a tighter tolerance gives the error estimate
    r2, t2, _ = _integrate(inst, h, which, tol / 32, with_time)
    err = abs(r - r2) + abs(r2) * 1e-15
    if with_time:
        err = max(err, abs(t - t2))
    return HalfResult(r2, t2, err, n)


def displacement(inst: NumericInstance, h: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """(Delta(h), error estimate) with Delta = upper half-return - lower half-return."""
    up = half_return(inst, h, "upper", tol)
    lo = half_return(inst, h, "lower", tol)
    return up.r - lo.r, up.error + lo.error


def period_numeric(inst: NumericInstance, h: float, tol: float = DEFAULT_TOL) -> float:
    """Total return time of the orbit through (h, 0)."""
    if inst.delta != 0:
        raise PreconditionError("period runs require delta = 0")
    up = half_return(inst, h, "upper", tol, with_time=True)
    lo = half_return(inst, h, "lower", tol, with_time=True)
    return up.time + lo.time


@dataclass
class ScanResult:
    h: list[float]
    delta: list[float]
    error: list[float]
    sign_changes: int
    roots: list[float]
    noise_floor: float
    steps: int = 0

    def report(self) -> str:
        lines = ["# h  Delta(h)  error"]
        lines += [f"{h:.10g}  {d:.17g}  {e:.3g}" for h, d, e in zip(self.h, self.delta, self.error)]
        lines.append(f"# sign changes: {self.sign_changes}")
        lines += [f"# root: {r:.12g}" for r in self.roots]
        return "\n".join(lines)


def displacement_scan(
    inst: NumericInstance, h_min: float, h_max: float, n_grid: int, tol: float = DEFAULT_TOL, root_tol: float = 1e-10
) -> ScanResult:
    """Sample Delta on a uniform grid, count sign changes and bisect each bracket."""
    if not 0 < h_min < h_max:
        raise ValueError("need 0 < h_min < h_max")
    if n_grid < 2:
        raise ValueError("n_grid must be at least 2")
    if inst.delta != 0:
        raise PreconditionError("displacement runs require delta = 0")
    hs = [float(x) for x in np.linspace(h_min, h_max, n_grid)]
    ds, es = [], []
    for h in hs:
        d, e = displacement(inst, h, tol)
        ds.append(d)
        es.append(e)
    floor = 10 * tol * max(1.0, h_max)
    signs = [0 if abs(d) <= max(floor, 2 * e) else (1 if d > 0 else -1) for d, e in zip(ds, es)]
    roots = []
    prev = None
    for i, s in enumerate(signs):
        if s == 0:
            continue
        if prev is not None and signs[prev] != s:
            a, b = hs[prev], hs[i]
            roots.append(bisect(lambda x: displacement(inst, x, tol)[0], a, b, xtol=root_tol))
        prev = i
    return ScanResult(hs, ds, es, len(roots), roots, floor)


@dataclass(frozen=True)
class CrossCheck:
    order: float | None
    residuals: list[float]
    relative: float
    exact: bool


def series_crosscheck(
    inst: NumericInstance,
    coefficients: Mapping[int, float],
    hs: Sequence[float] | None = None,
    tol: float = 3e-14,
) -> CrossCheck:
    """Compare numeric Delta(h) with sum_m V_m h^m; fit residual ~ C h^p.

    ``coefficients`` maps m to the value of V_m at the instance.  Residuals
    under the noise floor are dropped from the fit; if none remain the
    series is reported as exact to tolerance.  Without an explicit ``hs``
    the grid starts at (0.05, 0.07, 0.1) and grows by factors of sqrt(2)
    (up to 0.3) until three residuals clear the noise floor.
    """
    auto = hs is None
    hs = list(hs or (0.05, 0.07, 0.1))
    res, scale = [], []

    def sample(h):
        d, e = displacement(inst, h, tol)
        s = sum(v * h**m for m, v in coefficients.items())
        res.append((h, abs(d - s), max(e, 10 * tol * h)))
        scale.append(max(abs(d), 1e-300))

    for h in hs:
        sample(h)
    while auto and sum(r > 10 * e for _, r, e in res) < 3 and hs[-1] * 1.414 <= 0.3:
        hs.append(hs[-1] * 1.414)
        try:
            sample(hs[-1])
        except NumericGuardError:
            break
    usable = [(h, r) for h, r, e in res if r > 10 * e]
    rel = max(r / s for (_, r, _), s in zip(res, scale))
    if len(usable) < 2:
        return CrossCheck(None, [r for _, r, _ in res], rel, True)
    x = np.log([h for h, _ in usable])
    y = np.log([r for _, r in usable])
    p = float(np.polyfit(x, y, 1)[0])
    return CrossCheck(p, [r for _, r, _ in res], rel, False)


__all__ = [
    "CrossCheck",
    "HalfResult",
    "NumericGuardError",
    "NumericInstance",
    "ScanResult",
    "displacement",
    "displacement_scan",
    "half_return",
    "period_numeric",
    "series_crosscheck",
]

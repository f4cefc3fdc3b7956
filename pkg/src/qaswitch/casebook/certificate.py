"""Limit-cycle evidence: an exact sign-alternation certificate and a numeric
two-cycle configuration.

The certificate starts on the A1(a) branch where V_2..V_6 vanish and
V_7 does not, then moves five coefficients by Newton's method until
V_2..V_6 are the coefficients of V_7 * prod (h - r_i).  The point is
rounded to rationals and the truncated displacement
2*pi*delta + V_2 h + ... + V_7 h^6 is re-examined exactly: its signs
alternate, |V_j| increases with j, and Sturm counting finds six positive
roots for pi replaced by either rational bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..exactpoly import ParamPoly, as_poly, real_root_count
from ..numlab import NumericInstance, displacement_scan
from .catalog import base_system, data_path, load_condition
from .elimination import six_cycle_window
from .verify import full_focus

# rational bounds around pi (error below 1e-15)
PI_LO = Fraction(3141592653589793, 10**15)
PI_HI = Fraction(3141592653589794, 10**15)
FREE = ("a11", "a02", "b20", "b11", "b02")


@dataclass
class Certificate:
    lam: Fraction
    params: dict[str, Fraction]
    delta: Fraction
    values: dict[int, "object"]  # Scalar per index
    floats: dict[int, float]
    alternating: bool
    dominance: bool
    positive_roots: tuple[int, int]
    target_roots: tuple[float, ...]
    newton_residual: float

    @property
    def ok(self) -> bool:
        n = len(self.target_roots)
        return self.alternating and self.dominance and self.positive_roots == (n, n)

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "params": {k: str(v) for k, v in self.params.items()},
            "delta": str(self.delta),
            "values": {f"V_{m}": f"{v:.6e}" for m, v in self.floats.items()},
            "alternating": self.alternating,
            "dominance": self.dominance,
            "positive_roots": {"pi_lower": self.positive_roots[0], "pi_upper": self.positive_roots[1]},
            "target_roots": list(self.target_roots),
            "newton_residual": self.newton_residual,
            "ok": self.ok,
        }


def _scalar_at(s, pi: Fraction) -> Fraction:
    return sum((c * pi**p for p, c in s.terms.items()), Fraction(0))


def _base_point(lam: Fraction) -> dict[str, float]:
    """Float point on the A1(a) branch with f_1 = 0 (a20 = 1, k > 0)."""
    w = six_cycle_window("A1a")
    quad = [as_poly(w.quadratic[f"A{i}"]).evalf({"lambda": float(lam)}) for i in range(3)]
    ks = [r.real for r in np.roots(quad[::-1]) if abs(r.imag) < 1e-12 and r.real > 0]
    if not ks:
        raise ValueError(f"no positive k-root of f_1 at lambda = {lam}")
    p = {"lambda": float(lam), "delta": 0.0, "a20": 1.0, "b02": math.sqrt(ks[0])}
    sub = load_condition("branch-A1a").substitution
    den = sub.denominator.evalf(p)
    for v, e in sub.mapping.items():
        p[v] = e.evalf(p) if v in ("lambda", "delta") else e.evalf(p) / den
    return p


@lru_cache(maxsize=None)
def cyclicity_certificate(lam: Fraction = Fraction(2), scale: float = 0.01, n: int = 6) -> Certificate:
    fv = full_focus(n + 1)
    V = {m: fv[m].subs({"lambda": ParamPoly.const(lam)}) for m in range(2, n + 2)}
    dV = {m: {u: V[m].diff(u) for u in FREE} for m in V}
    roots = tuple(scale * (i + 1) for i in range(n))
    coef = np.poly(roots)[::-1]  # monic, constant term first
    q = _base_point(lam)

    def F(p):
        top = V[n + 1].evalf(p)
        return np.array([V[m].evalf(p) - top * coef[m - 1] for m in range(2, n + 1)])

    res = math.inf
    for _ in range(30):
        f = F(q)
        res = float(np.abs(f).max())
        top = np.array([dV[n + 1][u].evalf(q) for u in FREE])
        J = np.array([[dV[m][u].evalf(q) for u in FREE] for m in range(2, n + 1)]) - np.outer(coef[1:n], top)
        step = np.linalg.solve(J, -f)
        for u, d in zip(FREE, step):
            q[u] += d
        if np.abs(step).max() < 1e-15:
            break
    params = {k: Fraction(v).limit_denominator(10**15) for k, v in q.items() if k not in ("lambda", "delta")}
    pt = {**params, "lambda": lam, "delta": Fraction(0)}
    vals = {m: V[m].evaluate(pt) for m in V}
    top = float(vals[n + 1])
    delta = Fraction(top * coef[0] / (2 * math.pi)).limit_denominator(10**20)
    fl = {m: float(v) for m, v in vals.items()}
    signs = [math.copysign(1, fl[m]) for m in sorted(fl)]
    alternating = all(a != b for a, b in zip(signs, signs[1:])) and math.copysign(1, delta) != signs[0]
    dominance = all(abs(fl[m]) < abs(fl[m + 1]) for m in range(2, n + 1))
    counts = []
    for pi in (PI_LO, PI_HI):
        c = [2 * pi * delta] + [_scalar_at(vals[m], pi) for m in range(2, n + 2)]
        counts.append(real_root_count(c, Fraction(0), None))
    return Certificate(lam, params, delta, vals, fl, alternating, dominance, tuple(counts), roots, res)


# -- numeric two-cycle configuration -------------------------------------------
def two_cycle_fixture() -> dict:
    with data_path("two_cycle.json").open() as fh:
        return json.load(fh)


def verify_two_cycle() -> dict:
    fx = two_cycle_fixture()
    inst = NumericInstance.from_system(base_system(), fx["params"])
    sc = fx["scan"]
    res = displacement_scan(inst, sc["h_min"], sc["h_max"], sc["grid"])
    return {
        "params": fx["params"],
        "roots": res.roots,
        "target_roots": fx["target_roots"],
        "sign_changes": res.sign_changes,
        "noise_floor": res.noise_floor,
        "ok": len(res.roots) >= fx["min_roots"],
    }


__all__ = ["Certificate", "cyclicity_certificate", "two_cycle_fixture", "verify_two_cycle"]

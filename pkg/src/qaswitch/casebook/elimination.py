"""Elimination behind the seven- and six-cycle arguments of the A1 branches.

The focus values of a branch are homogeneous in (a20, b02) with only even
powers of b02, so b02^2 = k*a20^2 turns them into polynomials in (k, lambda).
Every printed step is checked exactly; a failed check becomes a
discrepancy in the record instead of an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..exactpoly import (
    NotDivisible,
    ParamPoly,
    as_poly,
    exact_divide,
    isolate_real_roots,
    pseudo_remainder,
    real_root_count,
    resultant,
)
from .catalog import elimination_data, load_case, polynomial
from .compare import constant_ratio, strip_units
from .verify import _units, case_focus

ROOT_TOL = 1e-6


@dataclass
class Check:
    claim: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"claim": self.claim, "ok": self.ok, **self.detail}


@dataclass
class EliminationRecord:
    case: str
    citation: str
    ratio_var: str
    f: dict[str, ParamPoly]
    checks: list[Check] = field(default_factory=list)
    det_J: ParamPoly | None = None
    resultant: ParamPoly | None = None
    roots: list[float] = field(default_factory=list)
    lambda_star: Fraction | None = None
    k_star: Fraction | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def discrepancies(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def check(self, claim: str, ok: bool, **detail) -> bool:
        self.checks.append(Check(claim, bool(ok), detail))
        return bool(ok)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "citation": self.citation,
            "ratio_var": self.ratio_var,
            "f": {k: str(v) for k, v in self.f.items()},
            "det_J": None if self.det_J is None else str(self.det_J),
            "resultant_terms": None if self.resultant is None else len(self.resultant),
            "roots": self.roots,
            "lambda_star": None if self.lambda_star is None else str(self.lambda_star),
            "k_star": None if self.k_star is None else str(self.k_star),
            "checks": [c.to_dict() for c in self.checks],
        }


def ratio_form(f: ParamPoly, var: str = "k") -> ParamPoly:
    """Replace b02^(2j) by var^j * a20^(2j)."""
    out = ParamPoly.const(0)
    for e, c in f.coeffs_in("b02").items():
        if e % 2:
            raise ValueError("odd power of b02; ratio substitution does not apply")
        out = out + c * as_poly(f"{var}^{e // 2}*a20^{e}")
    return out


def engine_f(case: str) -> tuple[dict[str, ParamPoly], dict[str, str]]:
    """f_1..f_3 recovered from the engine's V_6..V_8 of the branch.

    Units and pi are stripped, then each is rescaled to the printed
    normalization when the two are proportional (otherwise the stripped
    engine value is kept).  Returns the f's and the ratios engine/printed.
    """
    data = elimination_data(case)
    c = load_case(case)
    fv = case_focus(case)
    units = _units(c.nonzero, c.substitution.denominator)
    out, ratios = {}, {}
    for name, (k, e) in zip(data["f"], sorted(c.expected.items())):
        v = strip_units(fv[k + 1], units)
        printed = polynomial(name)
        core = strip_units(printed, units)
        r = constant_ratio(v, core)
        ratios[name] = None if r is None else str(r)
        out[name] = v if r is None or not r.is_rational() else exact_divide(printed, core) * v * (1 / r.rational())
    return out, ratios


def _ratio_subs(p: ParamPoly, var: str, num: ParamPoly, den: ParamPoly) -> tuple[ParamPoly, int]:
    w = p.degree(var)
    return p.subs({var: num}, den=den, weight=w), w


def _univariate_lambda(p: ParamPoly) -> ParamPoly:
    # drop the a20 power of a product homogeneous in a20
    co = p.coeffs_in("a20")
    if len(co) != 1:
        raise ValueError("not a single power of a20")
    return next(iter(co.values()))


def _rational_root(r, p: ParamPoly) -> Fraction | None:
    # small-denominator rational inside the isolating interval that is an exact root
    if r.exact:
        return r.lo
    for q in range(1, 200):
        x = Fraction(round(r.value * q), q)
        if r.contains(x) and not p.evaluate({"lambda": x}).rational():
            return x
    return None


@lru_cache(maxsize=None)
def cyclicity_pipeline(case: str) -> EliminationRecord:
    data = elimination_data(case)
    kv = data["ratio"]
    f, ratios = engine_f(case)
    rec = EliminationRecord(case, data["citation"], kv, f)
    for name, r in ratios.items():
        rec.check(f"engine {name} proportional to printed", r is not None, ratio=r)
    f1, f2, f3 = (ratio_form(f[n], kv) for n in data["f"])

    # f_2 = unit * f_2a * f_2b
    sp = data["f2_split"]
    a, b, unit = as_poly(sp["a"]), as_poly(sp["b"]), as_poly(sp["unit"])
    try:
        q = exact_divide(f2, a * b)
        rec.check("f_2 = unit * f_2a * f_2b", q == unit, quotient=str(q), printed_unit=str(unit), note=sp.get("note"))
    except NotDivisible:
        rec.check("f_2 = unit * f_2a * f_2b", False, note="not divisible")

    # the linear branch k = num/den and the products on it
    br = data["branch"]
    num, den = as_poly(br["num"]), as_poly(br["den"])
    rec.check("f_2a vanishes on the branch", _ratio_subs(a, kv, num, den)[0].is_zero(), k=f"({num})/({den})")
    g1, w1 = _ratio_subs(f1, kv, num, den)
    g3, w3 = _ratio_subs(f3, kv, num, den)
    C3 = polynomial("C3")
    names = dict.fromkeys(("a20", "lambda-1", "2*lambda-9", "5*lambda+16", *data["branch_units"]))
    profile = [as_poly(u) for u in names] + [C3]
    for label, g, w, key in (("f_1", g1, w1, "f1_branch"), ("f_3", g3, w3, "f3_branch")):
        target = as_poly(data[key]) * den**w
        r = constant_ratio(g, target)
        detail = {"ratio": None if r is None else str(r)}
        if r != 1:
            pg, cg = factor_profile(exact_divide(g, den**w) if _divides(g, den**w) else g, profile)
            pt, ct = factor_profile(as_poly(data[key]), profile)
            detail["engine_factors"] = pg
            detail["printed_factors"] = pt
            detail["cofactor_ratio"] = str(cg * (1 / ct.constant())) if ct.is_constant() and cg.is_constant() else None
        rec.check(f"{label} on the branch equals the printed product", r == 1, **detail)
    try:
        exact_divide(g3, C3)
        rec.check("C_3 divides f_3 on the branch", True)
    except NotDivisible:
        rec.check("C_3 divides f_3 on the branch", False)

    # lambda* : roots of f_1 on the branch, off the branch units, with f_3 != 0 and k > 0
    units = [as_poly(u) for u in data["branch_units"]]
    g1l = _univariate_lambda(exact_divide(g1, den**w1) if _divides(g1, den**w1) else g1)
    sols = []
    for r in isolate_real_roots(g1l):
        x = _rational_root(r, g1l)
        if x is None:
            continue
        pt = {"lambda": x, "a20": Fraction(1)}
        if any(not u.evaluate(pt).rational() for u in units):
            continue
        if not g3.evaluate(pt).rational():
            continue
        kx = num.evaluate(pt).rational() / den.evaluate(pt).rational()
        if kx > 0:
            sols.append((x, kx))
    star = Fraction(data["lambda_star"])
    rec.check("unique branch solution with f_1 = 0, f_3 != 0, k > 0", [s[0] for s in sols] == [star], solutions=[[str(x), str(k)] for x, k in sols])
    if len(sols) == 1:
        rec.lambda_star, rec.k_star = sols[0]

    # Jacobian of (f_1, f_2) in (k, lambda) at the solution
    if rec.lambda_star is not None:
        at = {kv: as_poly(str(rec.k_star)), "lambda": as_poly(str(rec.lambda_star))}
        J = [[g.diff(v).subs(at) for v in (kv, "lambda")] for g in (f1, f2)]
        rec.det_J = J[0][0] * J[1][1] - J[0][1] * J[1][0]
        rec.check("det J", rec.det_J == as_poly(data["det_J"]), value=str(rec.det_J), printed=data["det_J"])

    # resultant of f_1 and f_2b in k
    R = resultant(f1, b, kv)
    rec.resultant = R
    fac, cof = as_poly(data["resultant_factor"]), as_poly(data["resultant_cofactor"])
    rest = None
    try:
        rest = exact_divide(R, fac)
        rec.check("printed factor divides the resultant", True)
    except NotDivisible:
        rec.check("printed factor divides the resultant", False)
    if rest is not None:
        try:
            left = exact_divide(rest, cof)
            rec.check("printed cofactor divides the remaining resultant", True, remaining=str(left))
        except NotDivisible:
            rec.check("printed cofactor divides the remaining resultant", False, remaining=str(rest))
    roots = [r.value for r in isolate_real_roots(fac, precision=1e-12)]
    rec.roots = roots
    printed_roots = [float(x) for x in data["resultant_roots"]]
    match = len(roots) == len(printed_roots) and all(abs(x - y) < ROOT_TOL for x, y in zip(roots, printed_roots))
    rec.check("real roots of the factor", match, computed=[f"{x:.10f}" for x in roots], printed=data["resultant_roots"])

    # k as a rational function of lambda along the factor (last subresultant step)
    kf = data.get("k_formula")
    if kf:
        A = [f1.coeffs_in(kv).get(i, ParamPoly.const(0)) for i in range(f1.degree(kv) + 1)]
        B = [b.coeffs_in(kv).get(i, ParamPoly.const(0)) for i in range(b.degree(kv) + 1)]
        # one pseudo-division leaves r0 + r1*k, so k = -r0/r1 on common roots
        lin = pseudo_remainder(A, B)
        ok = False
        if len(lin) == 2:
            expr = lin[0] * as_poly(kf["den"]) + lin[1] * as_poly(kf["num"])
            ok = expr.is_zero() or _divides(expr, fac)
        rec.check("k formula along the resultant factor", ok, note=kf.get("note"))
    return rec


def factor_profile(p: ParamPoly, factors) -> tuple[dict[str, int], ParamPoly]:
    """Multiplicity of each listed factor in p, and what is left over."""
    out = {}
    for u in factors:
        n = 0
        while True:
            try:
                p = exact_divide(p, u)
            except NotDivisible:
                break
            n += 1
        out[str(u)] = n
    return out, p


def _divides(p: ParamPoly, d: ParamPoly) -> bool:
    try:
        exact_divide(p, d)
        return True
    except NotDivisible:
        return False


# -- the six-cycle window ------------------------------------------------------------
@dataclass
class Window:
    case: str
    quadratic: dict[str, str]
    discriminant: str
    critical: list[float]
    intervals: list[dict]
    samples: list[dict]
    boundary: float | None
    upper: float | None
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "quadratic": self.quadratic,
            "discriminant": self.discriminant,
            "critical": self.critical,
            "intervals": self.intervals,
            "samples": self.samples,
            "boundary": self.boundary,
            "upper": self.upper,
            "checks": [c.to_dict() for c in self.checks],
        }


def positive_k_roots(quad: list[ParamPoly], lam: Fraction) -> int:
    c = [q.evaluate({"lambda": lam}).rational() for q in quad]
    while c and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        return 0
    return real_root_count(c, Fraction(0), None) - (1 if c[0] == 0 else 0)


def six_cycle_window(case: str) -> Window:
    """lambda-intervals where f_1 = 0 has one or two positive k-roots."""
    data = elimination_data(case)
    kv = data["ratio"]
    f, _ = engine_f(case)
    f1 = ratio_form(f[data["f"][0]], kv)
    checks: list[Check] = []
    co = f1.coeffs_in(kv)
    # f_1 = unit * a20^4 (A_2 k^2 + A_1 k + A_0)
    quad = [_univariate_lambda(co.get(i, ParamPoly.const(0))) for i in range(3)]
    if "A2" in data:
        ratios = [constant_ratio(quad[i], as_poly(data[f"A{i}"])) for i in range(3)]
        same = ratios[0] is not None and all(r == ratios[0] for r in ratios)
        checks.append(Check("A_0, A_1, A_2 match the printed quadratic", same, {"ratio": None if not same else str(ratios[0])}))
        if same:
            quad = [as_poly(data[f"A{i}"]) for i in range(3)]
    disc = quad[1] ** 2 - quad[2] * quad[0] * 4
    if "discriminant" in data:
        r = constant_ratio(disc, as_poly(data["discriminant"]))
        checks.append(Check("discriminant identity", r == 1 if r is not None else False, {"ratio": None if r is None else str(r)}))
    crit: set[float] = {0.0}
    for p in (*quad, disc):
        if p.is_constant():
            continue
        crit.update(r.value for r in isolate_real_roots(p, precision=1e-12))
    crit_sorted = sorted(crit)
    edges = [crit_sorted[0] - 1.0, *crit_sorted, crit_sorted[-1] + 1.0]
    intervals = []
    for lo, hi in zip(edges, edges[1:]):
        mid = Fraction((lo + hi) / 2).limit_denominator(10**6)
        n = positive_k_roots(quad, mid)
        if intervals and intervals[-1]["positive_roots"] == n:
            intervals[-1]["hi"] = hi
        else:
            intervals.append({"lo": lo, "hi": hi, "positive_roots": n})
    intervals[0]["lo"], intervals[-1]["hi"] = None, None
    samples = []
    for lam, want in data["window"]["samples"]:
        n = positive_k_roots(quad, Fraction(lam))
        c = [q.evaluate({"lambda": Fraction(lam)}).rational() for q in quad]
        samples.append({"lambda": lam, "positive_roots": n, "real_roots": real_root_count(c), "expected": want})
        checks.append(Check(f"positive k-roots at lambda = {lam}", n == want, {"count": n, "expected": want}))
    win = data["window"]
    boundary = upper = None
    if win.get("boundary"):
        fac = as_poly(data["discriminant_factor"])
        rs = [r.value for r in isolate_real_roots(fac, precision=1e-12) if 0 < r.value < 1]
        boundary = rs[0] if len(rs) == 1 else None
        checks.append(Check("boundary root of the discriminant factor", boundary is not None and abs(boundary - float(win["boundary"])) < ROOT_TOL, {"computed": boundary, "printed": win["boundary"]}))
    if win.get("upper"):
        target = float(win["upper"])
        near = [c for c in crit_sorted if abs(c - target) < ROOT_TOL]
        upper = near[0] if near else None
        checks.append(Check("upper end of the window", upper is not None, {"computed": upper, "printed": win["upper"]}))
    return Window(
        case,
        {f"A{i}": str(q) for i, q in enumerate(quad)},
        str(disc),
        crit_sorted,
        intervals,
        samples,
        boundary,
        upper,
        checks,
    )


__all__ = [
    "Check",
    "EliminationRecord",
    "Window",
    "cyclicity_pipeline",
    "engine_f",
    "factor_profile",
    "positive_k_roots",
    "ratio_form",
    "six_cycle_window",
]

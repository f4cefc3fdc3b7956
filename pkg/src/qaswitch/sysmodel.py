"""Switching systems, their polar form and the radial series.

Each half plane carries

    x' = delta*x - y + sum_k (x^2+y^2)^((k-1)(lambda-1)/2) F_k(x, y)
    y' = x + delta*y + sum_k (x^2+y^2)^((k-1)(lambda-1)/2) G_k(x, y)

with homogeneous F_k, G_k of degree k.  Under x = r^(1/lambda) cos(theta)
the radial equation has integer powers of r only, so a system is stored as
its coefficient tables and never needs the exponent itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

from .exactpoly import ParamPoly, as_poly, divides, exact_divide
from .exactpoly.poly import VAR_INDEX
from .trigfun import TrigPoly

Table = Mapping[tuple[int, int], ParamPoly]


class PreconditionError(ValueError):
    """Input is well formed but outside the operation's domain."""


class SystemFormatError(ValueError):
    """Malformed system or substitution file."""


def _clean(table: Mapping) -> dict[tuple[int, int], ParamPoly]:
    out = {}
    for (a, b), c in table.items():
        c = as_poly(c)
        if a < 0 or b < 0:
            raise ValueError("negative exponent in coefficient table")
        if not c.is_zero():
            out[(int(a), int(b))] = c
    return out


@dataclass(frozen=True)
class HalfSystem:
    """Nonlinear coefficient tables of one half plane, keyed by degree."""

    F: dict[int, dict[tuple[int, int], ParamPoly]] = field(default_factory=dict)
    G: dict[int, dict[tuple[int, int], ParamPoly]] = field(default_factory=dict)

    @classmethod
    def from_tables(cls, F: Mapping | None = None, G: Mapping | None = None) -> "HalfSystem":
        """Build from flat ``{(alpha, beta): coeff}`` maps; degrees are inferred."""
        out_f: dict[int, dict] = {}
        out_g: dict[int, dict] = {}
        for src, dst in ((F or {}, out_f), (G or {}, out_g)):
            for (a, b), c in _clean(src).items():
                if a + b < 2:
                    raise ValueError("nonlinear tables start at degree 2")
                dst.setdefault(a + b, {})[(a, b)] = c
        return cls(out_f, out_g)

    def degrees(self) -> list[int]:
        return sorted(set(self.F) | set(self.G))

    def max_degree(self) -> int:
        return max(self.degrees(), default=1)

    def coefficient(self, which: str, a: int, b: int) -> ParamPoly:
        table = self.F if which == "F" else self.G
        return table.get(a + b, {}).get((a, b), ParamPoly())

    def map_coefficients(self, fn) -> "HalfSystem":
        F = {(a, b): fn(c) for t in self.F.values() for (a, b), c in t.items()}
        G = {(a, b): fn(c) for t in self.G.values() for (a, b), c in t.items()}
        return HalfSystem.from_tables(F, G)

    def entries(self):
        for t in (self.F, self.G):
            for tab in t.values():
                yield from tab.values()

    def __add__(self, other: "HalfSystem") -> "HalfSystem":
        F: dict = {}
        G: dict = {}
        for h in (self, other):
            for t, acc in ((h.F, F), (h.G, G)):
                for tab in t.values():
                    for key, c in tab.items():
                        acc[key] = acc.get(key, ParamPoly()) + c
        return HalfSystem.from_tables(F, G)

    def is_linear(self) -> bool:
        return not self.F and not self.G


@dataclass(frozen=True)
class SwitchingSystem:
    lam: ParamPoly
    delta: ParamPoly
    upper: HalfSystem
    lower: HalfSystem

    def __post_init__(self):
        lam = as_poly(self.lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "delta", as_poly(self.delta))
        if lam.is_zero():
            raise PreconditionError("lambda = 0 is not allowed")

    def subs(self, mapping: Mapping, den=None) -> "SwitchingSystem":
        """Substitute parameters everywhere.

        With a denominator ``D`` the mapped values are read as ``value/D`` and
        every table entry is multiplied by ``D``; since the k-th focus value
        is homogeneous of degree k-1 in the entries (degree k for period
        constants) the results scale by a known power of ``D``.  lambda and
        delta must then be mapped to polynomials.
        """
        mapping = {k: as_poly(v) for k, v in mapping.items()}
        for name in mapping:
            if name not in VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
        direct = {k: v for k, v in mapping.items() if k in ("lambda", "delta")}
        lam = self.lam.subs(direct) if direct else self.lam
        delta = self.delta.subs(direct) if direct else self.delta
        if den is None:
            fn = lambda c: c.subs(mapping)  # noqa: E731
        else:
            rest = {k: v for k, v in mapping.items() if k not in direct}
            entries = [c for h in (self.upper, self.lower) for c in h.entries()]
            if any(_mapped_degree(c, rest) > 1 for c in entries):
                raise PreconditionError("coefficient entries must be linear in the mapped variables")
            # entries are scaled by D: x -> p/D becomes p, y -> D*y
            fn = lambda c: c.subs(direct).subs(rest, den=den, weight=1)  # noqa: E731
        return SwitchingSystem(lam, delta, self.upper.map_coefficients(fn), self.lower.map_coefficients(fn))


def _mapped_degree(c: ParamPoly, mapping: Mapping) -> int:
    names = [n for n in mapping if n not in ("lambda", "delta")]
    if not names:
        return 0
    return max((sum(e[VAR_INDEX[n]] for n in names) for e in c.terms()), default=0)


@dataclass(frozen=True)
class AngularForm:
    """phi_k and psi_k (k >= 3) of the polar form, plus lambda and delta."""

    phis: dict[int, TrigPoly]
    psis: dict[int, TrigPoly]
    lam: ParamPoly
    delta: ParamPoly

    def max_index(self) -> int:
        return max(list(self.phis) + list(self.psis), default=2)

    def phi(self, k: int) -> TrigPoly:
        return self.phis.get(k, TrigPoly())

    def psi(self, k: int) -> TrigPoly:
        return self.psis.get(k, TrigPoly())


def _homogeneous(table: Mapping[tuple[int, int], ParamPoly]) -> TrigPoly:
    out = TrigPoly()
    for (a, b), c in table.items():
        out = out + TrigPoly.monomial(a, b, c)
    return out


def polar_decompose(h: HalfSystem, lam=None, delta=0) -> AngularForm:
    """phi_k = cos*X_{k-1} + sin*Y_{k-1}, psi_k = cos*Y_{k-1} - sin*X_{k-1}."""
    c, s = TrigPoly.cos(), TrigPoly.sin()
    phis, psis = {}, {}
    for d in h.degrees():
        X = _homogeneous(h.F.get(d, {}))
        Y = _homogeneous(h.G.get(d, {}))
        phi = c * X + s * Y
        psi = c * Y - s * X
        if not phi.is_zero():
            phis[d + 1] = phi
        if not psi.is_zero():
            psis[d + 1] = psi
    lam = as_poly("lambda" if lam is None else lam)
    return AngularForm(phis, psis, lam, as_poly(delta))


def reflect_time_reverse(lower: HalfSystem) -> HalfSystem:
    """Map (x, y, t) -> (x, -y, -t): A_ab -> -(-1)^b A_ab, B_ab -> (-1)^b B_ab."""
    F = {(a, b): (c if b % 2 else -c) for t in lower.F.values() for (a, b), c in t.items()}
    G = {(a, b): (-c if b % 2 else c) for t in lower.G.values() for (a, b), c in t.items()}
    return HalfSystem.from_tables(F, G)


def radial_series(form: AngularForm, N: int) -> list[TrigPoly]:
    """[R_1, ..., R_N] with dr/dtheta = sum_k R_k r^(k+1)."""
    if not form.delta.is_zero():
        raise PreconditionError("radial series requires delta = 0")
    if N < 1:
        raise ValueError("order must be at least 1")
    R: list[TrigPoly] = []
    for k in range(1, N + 1):
        acc = form.phi(k + 2) * form.lam
        for i in range(1, k):
            psi = form.psi(i + 2)
            if not psi.is_zero():
                acc = acc - psi * R[k - i - 1]
        R.append(acc)
    return R


def symmetry_check(s: SwitchingSystem) -> dict[str, bool]:
    """Reversibility with respect to the y-axis and the x-axis."""
    y_axis = s.delta.is_zero()
    for h in (s.upper, s.lower):
        for t in h.F.values():
            y_axis &= all(a % 2 == 0 for (a, b) in t)
        for t in h.G.values():
            y_axis &= all(a % 2 == 1 for (a, b) in t)
    r = reflect_time_reverse(s.lower)
    x_axis = r.F == s.upper.F and r.G == s.upper.G
    return {"y_axis": bool(y_axis), "x_axis": bool(x_axis)}


# -- file formats ------------------------------------------------------------
_SYSTEM_KEYS = {"lambda", "delta", "upper", "lower", "name", "citation"}


def _parse_coeff(value, where: str) -> ParamPoly:
    try:
        if isinstance(value, bool):
            raise TypeError
        if isinstance(value, int):
            return ParamPoly.const(value)
        if isinstance(value, str):
            return ParamPoly.parse(value)
    except ValueError as exc:
        raise SystemFormatError(f"{where}: {exc}") from exc
    except TypeError:
        pass
    raise SystemFormatError(f"{where}: expected a polynomial string or integer")


def _parse_half(obj, where: str) -> HalfSystem:
    if not isinstance(obj, dict):
        raise SystemFormatError(f"{where}: expected an object")
    F: dict = {}
    G: dict = {}
    for deg, block in obj.items():
        if not deg.isdigit() or int(deg) < 2:
            raise SystemFormatError(f"{where}: bad degree key {deg!r}")
        if not isinstance(block, dict) or set(block) - {"F", "G"}:
            raise SystemFormatError(f"{where}.{deg}: only 'F' and 'G' allowed")
        for which, dst in (("F", F), ("G", G)):
            for key, val in block.get(which, {}).items():
                if len(key) != 2 or not key.isdigit():
                    raise SystemFormatError(f"{where}.{deg}.{which}: bad exponent key {key!r}")
                a, b = int(key[0]), int(key[1])
                if a + b != int(deg):
                    raise SystemFormatError(f"{where}.{deg}.{which}: key {key} has wrong degree")
                dst[(a, b)] = _parse_coeff(val, f"{where}.{deg}.{which}.{key}")
    return HalfSystem.from_tables(F, G)


def system_from_dict(obj: Mapping) -> SwitchingSystem:
    if not isinstance(obj, Mapping):
        raise SystemFormatError("system must be an object")
    extra = set(obj) - _SYSTEM_KEYS
    if extra:
        raise SystemFormatError(f"unknown keys: {sorted(extra)}")
    lam = obj.get("lambda", "lambda")
    lam = _parse_coeff(lam, "lambda") if not isinstance(lam, float) else _float_error("lambda")
    delta = _parse_coeff(obj.get("delta", 0), "delta")
    upper = _parse_half(obj.get("upper", {}), "upper")
    lower = _parse_half(obj.get("lower", {}), "lower")
    try:
        return SwitchingSystem(lam, delta, upper, lower)
    except PreconditionError as exc:
        raise SystemFormatError(str(exc)) from exc


def _float_error(name):
    raise SystemFormatError(f"{name}: use an exact string such as \"9/2\" instead of a float")


def load_system(path: Union[str, Path]) -> SwitchingSystem:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SystemFormatError(f"{path}: {exc}") from exc
    return system_from_dict(obj)


def system_to_dict(s: SwitchingSystem) -> dict:
    def half(h: HalfSystem) -> dict:
        out: dict = {}
        for which, t in (("F", h.F), ("G", h.G)):
            for d, tab in t.items():
                out.setdefault(str(d), {})[which] = {f"{a}{b}": str(c) for (a, b), c in sorted(tab.items(), reverse=True)}
        return out

    return {"lambda": str(s.lam), "delta": str(s.delta), "upper": half(s.upper), "lower": half(s.lower)}


@dataclass(frozen=True)
class Substitution:
    """Simultaneous assignments ``var -> value/denominator``."""

    mapping: dict[str, ParamPoly]
    denominator: ParamPoly | None = None
    nonzero: tuple[ParamPoly, ...] = ()

    @classmethod
    def from_dict(cls, obj: Mapping) -> "Substitution":
        extra = set(obj) - {"substitutions", "denominator", "nonzero", "name", "citation"}
        if extra:
            raise SystemFormatError(f"unknown keys: {sorted(extra)}")
        subs = obj.get("substitutions", {})
        if not isinstance(subs, Mapping):
            raise SystemFormatError("'substitutions' must be an object")
        mapping = {}
        for name, val in subs.items():
            if name not in VAR_INDEX:
                raise SystemFormatError(f"substitution for unknown variable {name!r}")
            mapping[name] = _parse_coeff(val, f"substitutions.{name}")
        den = obj.get("denominator")
        den = None if den is None else _parse_coeff(den, "denominator")
        if den is not None and den.is_zero():
            raise SystemFormatError("denominator is zero")
        nz = tuple(_parse_coeff(v, "nonzero") for v in obj.get("nonzero", []))
        return cls(mapping, den, nz)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Substitution":
        with open(path) as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise SystemFormatError(f"{path}: {exc}") from exc

    def apply(self, p: ParamPoly, weight: int | None = None) -> ParamPoly:
        if self.denominator is None:
            return p.subs(self.mapping)
        return p.subs(self.mapping, den=self.denominator, weight=weight)

    def then(self, other: "Substitution") -> "Substitution":
        """One simultaneous substitution equal to applying ``self`` and then ``other``.

        lambda and delta are always mapped directly (never divided by the
        denominator).  Values of ``other`` that still mention variables
        eliminated by ``self`` are rewritten too.  The result's denominator
        is the product of the distinct per-variable denominators.
        """
        clash = set(self.mapping) & set(other.mapping)
        if clash:
            raise ValueError(f"variables substituted twice: {sorted(clash)}")
        one = ParamPoly.const(1)
        frac: dict[str, tuple[ParamPoly, ParamPoly]] = {}
        for k, v in self.mapping.items():
            den = one if k in _DIRECT else (self.denominator or one)
            frac[k] = _push_frac(v, den, other.mapping, other.denominator)
        for k, v in other.mapping.items():
            den = one if k in _DIRECT else (other.denominator or one)
            frac[k] = _push_frac(v, den, self.mapping, self.denominator)
        D = one
        for k, (n, d) in frac.items():
            if k in _DIRECT or d.is_constant() or divides(d, D):
                continue
            D = d if divides(D, d) else D * d
        mapping = {}
        for k, (n, d) in frac.items():
            if k in _DIRECT:
                mapping[k] = n * (1 / d.constant())
            elif d.is_constant():
                mapping[k] = n * D * (1 / d.constant())
            else:
                mapping[k] = n * exact_divide(D, d)
        nz = self.nonzero + tuple(x for x in other.nonzero if x not in self.nonzero)
        return Substitution(mapping, None if D.is_constant() and D.constant() == 1 else D, nz)

    @classmethod
    def chain(cls, steps: Sequence["Substitution"]) -> "Substitution":
        out = cls({})
        for s in steps:
            out = out.then(s)
        return out


_DIRECT = ("lambda", "delta")


def _push(p: ParamPoly, mapping: Mapping, den) -> tuple[ParamPoly, int]:
    # p under ``mapping`` (non-direct values read as value/den) equals q / den^e
    direct = {k: v for k, v in mapping.items() if k in _DIRECT}
    rest = {k: v for k, v in mapping.items() if k not in _DIRECT}
    p = p.subs(direct) if direct else p
    if not rest:
        return p, 0
    if den is None:
        return p.subs(rest), 0
    e = _mapped_degree(p, rest)
    return p.subs(rest, den=den, weight=e), e


def _push_frac(num: ParamPoly, den: ParamPoly, mapping: Mapping, d) -> tuple[ParamPoly, ParamPoly]:
    (n, e1), (m, e2) = _push(num, mapping, d), _push(den, mapping, d)
    if e1 > e2:
        m = m * d ** (e1 - e2)
    elif e2 > e1:
        n = n * d ** (e2 - e1)
    return n, m


__all__ = [
    "AngularForm",
    "HalfSystem",
    "PreconditionError",
    "Substitution",
    "SwitchingSystem",
    "SystemFormatError",
    "load_system",
    "polar_decompose",
    "radial_series",
    "reflect_time_reverse",
    "symmetry_check",
    "system_from_dict",
    "system_to_dict",
]

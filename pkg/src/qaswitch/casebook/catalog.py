"""Read-only access to the bundled fixture of printed results."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping

from ..exactpoly import ParamPoly, as_poly
from ..sysmodel import Substitution, SwitchingSystem, system_from_dict

FIXTURE = "casebook.json"


class UnknownEntryError(KeyError):
    """Name not present in the catalog."""


@lru_cache(maxsize=None)
def raw() -> dict:
    with resources.files(__package__).joinpath("data", FIXTURE).open() as fh:
        return json.load(fh)


def data_path(name: str):
    return resources.files(__package__).joinpath("data", name)


@lru_cache(maxsize=None)
def base_system() -> SwitchingSystem:
    return system_from_dict(raw()["system"])


def _poly_or_none(text) -> ParamPoly | None:
    return None if text is None else as_poly(text)


@dataclass(frozen=True)
class ConditionSet:
    name: str
    kind: str
    substitution: Substitution
    relations: tuple[ParamPoly, ...]
    citation: str
    mechanism: str | None = None

    @property
    def mapping(self) -> dict[str, ParamPoly]:
        return self.substitution.mapping

    def satisfied_by(self, point: Mapping[str, object]) -> bool:
        """True when every relation vanishes at an exact parameter point."""
        return all(not r.evaluate(point) for r in self.relations)


def condition_names(kind: str | None = None) -> list[str]:
    conds = raw()["conditions"]
    return [n for n, c in conds.items() if kind is None or c["kind"] == kind]


def _substitution(obj: Mapping) -> Substitution:
    keep = {k: obj[k] for k in ("substitutions", "denominator", "nonzero") if k in obj}
    return Substitution.from_dict(keep)


@lru_cache(maxsize=None)
def load_condition(name: str) -> ConditionSet:
    conds = raw()["conditions"]
    if name not in conds:
        raise UnknownEntryError(f"unknown condition {name!r}; known: {', '.join(conds)}")
    c = conds[name]
    return ConditionSet(
        name,
        c["kind"],
        _substitution(c),
        tuple(as_poly(r) for r in c["relations"]),
        c["citation"],
        c.get("mechanism"),
    )


@dataclass(frozen=True)
class Expected:
    """A printed constant: (num / den) * factor, plus provenance."""

    index: int
    num: ParamPoly
    citation: str
    den: ParamPoly | None = None
    factor: str | None = None
    status: str = "expected"
    note: str | None = None
    corrected: "Expected | None" = None

    def numerator(self) -> ParamPoly:
        p = self.num
        if self.factor:
            p = p * polynomial(self.factor)
        return p

    def evalf(self, values: Mapping[str, float]) -> float:
        v = self.numerator().evalf(values)
        return v / self.den.evalf(values) if self.den is not None else v


def _expected(index: int, obj: Mapping) -> Expected:
    corr = obj.get("corrected")
    corrected = None
    if corr:
        merged = {"citation": obj["citation"] + " (corrected reading)", "factor": obj.get("factor"), "den": obj.get("den")}
        merged.update(corr)
        corrected = _expected(index, merged)
    return Expected(
        index,
        as_poly(obj["num"]),
        obj["citation"],
        _poly_or_none(obj.get("den")),
        obj.get("factor"),
        obj.get("status", "expected"),
        obj.get("note"),
        corrected,
    )


@lru_cache(maxsize=None)
def polynomial(name: str) -> ParamPoly:
    polys = raw()["polynomials"]
    if name not in polys:
        raise UnknownEntryError(f"unknown polynomial {name!r}")
    return as_poly(polys[name])


@dataclass(frozen=True)
class Case:
    """A branch of the case tree: a substitution chain and the printed L_k."""

    name: str
    citation: str
    substitution: Substitution
    nonzero: tuple[ParamPoly, ...]
    expected: dict[int, Expected]
    reduce: dict | None = None
    parent: str | None = None

    @property
    def order(self) -> int:
        return max(self.expected) + 1


def case_names() -> list[str]:
    return list(raw()["cases"])


def _steps(steps) -> list[Substitution]:
    out = []
    for st in steps:
        if "condition" in st:
            out.append(load_condition(st["condition"]).substitution)
        else:
            out.append(_substitution(st))
    return out


@lru_cache(maxsize=None)
def load_case(name: str) -> Case:
    cases = raw()["cases"]
    if name not in cases:
        raise UnknownEntryError(f"unknown case {name!r}; known: {', '.join(cases)}")
    c = cases[name]
    chain: list[Substitution] = []
    nonzero: list[ParamPoly] = []
    if c.get("parent"):
        par = load_case(c["parent"])
        chain.append(par.substitution)
        nonzero += par.nonzero
    chain += _steps(c["steps"])
    nonzero += [as_poly(n) for n in c.get("nonzero", []) if as_poly(n) not in nonzero]
    expected = {int(k): _expected(int(k), v) for k, v in c["expected"].items()}
    return Case(name, c["citation"], Substitution.chain(chain), tuple(nonzero), expected, c.get("reduce"), c.get("parent"))


@dataclass(frozen=True)
class PeriodBlock:
    condition: str
    citation: str
    chains: dict[int, Substitution]  # tau index -> substitution in force
    nonzero: tuple[ParamPoly, ...]
    expected: dict[int, Expected]


@lru_cache(maxsize=None)
def load_period() -> PeriodBlock:
    p = raw()["period"]
    expected = {int(k): _expected(int(k), v) for k, v in p["expected"].items()}
    steps = p["steps"]
    subs = _steps(steps)
    chains = {}
    for m in expected:
        active = [s for s, st in zip(subs, steps) if st.get("from", 1) <= m]
        chains[m] = Substitution.chain(active)
    return PeriodBlock(p["condition"], p["citation"], chains, tuple(as_poly(n) for n in p["nonzero"]), expected)


def elimination_data(case: str) -> dict:
    el = raw()["elimination"]
    if case not in el:
        raise UnknownEntryError(f"no elimination data for {case!r}; known: {', '.join(el)}")
    return el[case]


def integral_data(name: str) -> dict:
    ints = raw()["integrals"]
    if name not in ints:
        raise UnknownEntryError(f"unknown first integral {name!r}")
    return ints[name]


def first_constants() -> dict[int, Expected]:
    fc = raw()["first_constants"]
    return {1: _expected(1, fc["L1"]), 2: _expected(2, fc["L2"])}


__all__ = [
    "Case",
    "ConditionSet",
    "Expected",
    "PeriodBlock",
    "UnknownEntryError",
    "base_system",
    "case_names",
    "condition_names",
    "data_path",
    "elimination_data",
    "first_constants",
    "integral_data",
    "load_case",
    "load_condition",
    "load_period",
    "polynomial",
    "raw",
]

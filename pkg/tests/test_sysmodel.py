import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaswitch.casebook import base_system, load_condition
from qaswitch.exactpoly import ParamPoly, as_poly
from qaswitch.sysmodel import (
    HalfSystem,
    PreconditionError,
    Substitution,
    SwitchingSystem,
    SystemFormatError,
    load_system,
    polar_decompose,
    radial_series,
    reflect_time_reverse,
    symmetry_check,
    system_from_dict,
    system_to_dict,
)
from qaswitch.trigfun import TrigPoly

M = TrigPoly.monomial


def test_cubic_angular_terms():
    form = polar_decompose(base_system().upper)
    phi = M(3, 0, "a20") + M(2, 1, "a11+b20") + M(1, 2, "a02+b11") + M(0, 3, "b02")
    psi = M(3, 0, "b20") + M(2, 1, "b11-a20") + M(1, 2, "b02-a11") + M(0, 3, "-a02")
    assert form.phi(3) == phi
    assert form.psi(3) == psi


def test_cubic_terms_by_sampling():
    form = polar_decompose(base_system().upper)
    vals = {"a20": 0.3, "a11": -0.7, "a02": 1.1, "b20": 0.2, "b11": -0.4, "b02": 0.9}
    for th in (0.1, 1.3, 2.9):
        c, s = math.cos(th), math.sin(th)
        X = vals["a20"] * c * c + vals["a11"] * c * s + vals["a02"] * s * s
        Y = vals["b20"] * c * c + vals["b11"] * c * s + vals["b02"] * s * s
        assert form.phi(3).evalf(th, vals) == pytest.approx(c * X + s * Y)
        assert form.psi(3).evalf(th, vals) == pytest.approx(c * Y - s * X)


def test_pure_rotation_has_no_angular_terms():
    form = polar_decompose(HalfSystem.from_tables())
    assert form.phis == {} and form.psis == {}
    assert all(R.is_zero() for R in radial_series(form, 5))


def test_time_reversal_sign_rule():
    empty = HalfSystem.from_tables()
    assert reflect_time_reverse(empty) == empty
    h = reflect_time_reverse(HalfSystem.from_tables({(2, 0): 1}, {(1, 1): 1}))
    assert h.F[2] == {(2, 0): ParamPoly.const(-1)}
    assert h.G[2] == {(1, 1): ParamPoly.const(-1)}
    h = reflect_time_reverse(HalfSystem.from_tables({(0, 2): 1}))
    assert h.F[2] == {(0, 2): ParamPoly.const(-1)}


coeff_tables = st.dictionaries(
    st.sampled_from([(2, 0), (1, 1), (0, 2)]), st.integers(-3, 3).filter(bool).map(ParamPoly.const), max_size=3
)


@given(coeff_tables, coeff_tables)
def test_time_reversal_is_an_involution(F, G):
    h = HalfSystem.from_tables(F, G)
    assert reflect_time_reverse(reflect_time_reverse(h)) == h


def test_symmetry_flags():
    sub = load_condition("(i)").substitution
    s = base_system().subs(sub.mapping)
    assert symmetry_check(s)["y_axis"]
    assert symmetry_check(base_system()) == {"y_axis": False, "x_axis": False}
    up = HalfSystem.from_tables({(2, 0): "a20", (1, 1): "a11", (0, 2): "a02"}, {(2, 0): "b20", (1, 1): "b11", (0, 2): "b02"})
    # lower = (-F(x,-y), G(x,-y)) is the time-reversed reflection of the upper half
    lo = reflect_time_reverse(up)
    assert symmetry_check(SwitchingSystem(as_poly("lambda"), ParamPoly(), up, lo))["x_axis"]


def test_radial_series_first_term():
    form = polar_decompose(base_system().upper, delta=0)
    R = radial_series(form, 3)
    assert R[0] == form.phi(3) * as_poly("lambda")
    with pytest.raises(PreconditionError):
        radial_series(polar_decompose(base_system().upper, delta="delta"), 3)


# -- files ----------------------------------------------------------------------------------
def test_system_roundtrip(tmp_path):
    s = base_system()
    p = tmp_path / "s.json"
    p.write_text(json.dumps(system_to_dict(s)))
    assert load_system(p) == s


@pytest.mark.parametrize(
    "obj",
    [
        {"upper": {"2": {"F": {"30": "a20"}}}},
        {"upper": {"1": {"F": {"10": "a20"}}}},
        {"upper": {"2": {"H": {}}}},
        {"lambda": 1.5},
        {"lambda": "0"},
        {"color": "red"},
        {"upper": {"2": {"F": {"20": "x"}}}},
    ],
)
def test_malformed_systems(obj):
    with pytest.raises(SystemFormatError):
        system_from_dict(obj)


def test_malformed_substitutions():
    with pytest.raises(SystemFormatError):
        Substitution.from_dict({"substitutions": {"zz": "1"}})
    with pytest.raises(SystemFormatError):
        Substitution.from_dict({"substitutions": {"a11": "0"}, "denominator": "0"})


def test_chain_equals_sequential_application():
    s1 = Substitution.from_dict({"substitutions": {"b20": "0"}})
    s2 = Substitution.from_dict({"substitutions": {"a11": "-2*b02-b20"}})
    chained = Substitution.chain([s1, s2])
    p = as_poly("a11^2+a11*b20+b02")
    # later values are read on the variety of the earlier steps
    assert chained.apply(p) == s1.apply(s2.apply(s1.apply(p)))


def test_denominator_substitution_scales_entries():
    sub = load_condition("(v)").substitution
    s = base_system().subs(sub.mapping, den=sub.denominator)
    # a20 is unmapped and gets multiplied by the denominator
    assert s.upper.coefficient("F", 2, 0) == as_poly("8*b20^2*a20")

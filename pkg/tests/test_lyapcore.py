import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaswitch.casebook import base_system, load_condition, proportional
from qaswitch.exactpoly import ParamPoly, as_poly
from qaswitch.lyapcore import apply_conditions, focus_values, period_constants, solve_half, variational_solve
from qaswitch.sysmodel import (
    HalfSystem,
    PreconditionError,
    Substitution,
    SwitchingSystem,
    polar_decompose,
    radial_series,
    reflect_time_reverse,
)
from qaswitch.trigfun import TrigPoly

ZERO_DELTA = Substitution({"delta": ParamPoly()})


def test_variational_trivial_cases():
    s = variational_solve([], 5)
    assert s.u[1] == TrigPoly.const(1)
    assert all(s.u[m].is_zero() for m in range(2, 6))
    s = variational_solve([TrigPoly.cos()], 3)
    assert s.u[2] == TrigPoly.sin()
    assert s.u[3] == TrigPoly.sin() * TrigPoly.sin()


def test_first_upper_coefficient_at_pi():
    form = polar_decompose(base_system().upper, delta=0)
    s = variational_solve(radial_series(form, 4), 4)
    assert s.u[2].eval_at_pi() == as_poly("(2/3)*lambda*(a11+2*b02+b20)")


def test_direct_solver_matches_radial_series():
    form = polar_decompose(base_system().upper, delta=0)
    a = solve_half(form, 5)
    b = variational_solve(radial_series(form, 5), 5)
    assert all(a.u[m] == b.u[m] for m in range(1, 6))


def test_first_focus_value():
    fv = focus_values(base_system(), 3, subs=ZERO_DELTA)
    assert fv[2] == as_poly("(2/3)*lambda*(a11+2*b02+b20)")
    # printed L_1 = -(2/3)(a11+2b02+b20)lambda: fixed ratio -1
    assert str(proportional(fv[2], as_poly("-(2/3)*(a11+2*b02+b20)*lambda"))) == "-1"
    assert fv.zeroth.is_zero()


def test_zeroth_constant_and_delta_precondition():
    with pytest.raises(PreconditionError):
        focus_values(base_system(), 3)
    up = HalfSystem.from_tables()
    s = SwitchingSystem(as_poly("lambda"), as_poly("delta"), up, up)
    with pytest.raises(PreconditionError):
        focus_values(s, 2)


def test_x_axis_symmetric_system_has_no_focus_values():
    up = base_system().upper
    s = SwitchingSystem(as_poly("lambda"), ParamPoly(), up, reflect_time_reverse(up))
    assert focus_values(s, 6).all_zero()


def test_condition_ii_is_a_center():
    assert focus_values(base_system(), 8, subs=load_condition("(ii)").substitution).all_zero()


def test_linear_period_constants_vanish():
    empty = HalfSystem.from_tables()
    s = SwitchingSystem(as_poly("1"), ParamPoly(), empty, empty)
    assert period_constants(s, 6).all_zero()


def test_first_period_constant_under_condition_i():
    pc = period_constants(base_system(), 2, subs=load_condition("(i)").substitution)
    assert proportional(pc[1], as_poly("(2/3)*(a20+2*a02-b11)")) is not None


def test_isochronous_condition_I():
    sub = load_condition("(I)").substitution
    assert period_constants(base_system(), 8, subs=sub).all_zero()


def test_case_b_second_constant():
    sub = Substitution({"delta": ParamPoly(), "b20": ParamPoly(), "a11": as_poly("-2*b02")})
    v3 = focus_values(base_system(), 3, subs=sub)[3]
    assert proportional(v3, as_poly("-(1/8)*pi*b02*(2*a20+b11)*lambda")) is not None


def test_apply_conditions_identity():
    fv = focus_values(base_system(), 4, subs=ZERO_DELTA)
    assert apply_conditions(fv, {}).values == fv.values


@settings(max_examples=8)
@given(
    st.sampled_from(["a11", "a20", "b11"]),
    st.fractions(min_value=-2, max_value=2, max_denominator=3),
    st.sampled_from(["b02", "a02"]),
)
def test_late_substitution_equals_early_substitution(var, c, other):
    mapping = {"delta": ParamPoly(), var: as_poly(other) * c}
    sub = Substitution(mapping)
    early = focus_values(base_system(), 5, subs=sub)
    late = apply_conditions(focus_values(base_system(), 5, subs=ZERO_DELTA), sub)
    assert early.values == late.values


def test_late_substitution_with_denominator():
    sub = load_condition("(v)").substitution
    early = focus_values(base_system(), 4, subs=sub)
    late = apply_conditions(focus_values(base_system(), 4, subs=ZERO_DELTA), sub)
    assert early.values == late.values


def test_order_validation():
    with pytest.raises(ValueError):
        focus_values(base_system(), 1, subs=ZERO_DELTA)
    with pytest.raises(ValueError):
        period_constants(base_system(), 0, subs=ZERO_DELTA)


def test_parallel_halves_agree():
    lo = HalfSystem.from_tables({(2, 0): "b11"}, {(0, 2): "a02"})
    s = SwitchingSystem(as_poly("lambda"), ParamPoly(), base_system().upper, lo)
    a = focus_values(s, 4, subs=ZERO_DELTA)
    b = focus_values(s, 4, subs=ZERO_DELTA, parallel=True)
    assert a.values == b.values

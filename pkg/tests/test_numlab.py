import math
import random

import pytest

from qaswitch.casebook import base_system
from qaswitch.casebook.verify import full_focus
from qaswitch.exactpoly import ParamPoly, as_poly
from qaswitch.lyapcore import period_constants
from qaswitch.numlab import (
    NumericGuardError,
    NumericInstance,
    displacement,
    displacement_scan,
    half_return,
    period_numeric,
    series_crosscheck,
)
from qaswitch.sysmodel import HalfSystem, PreconditionError, Substitution, SwitchingSystem, reflect_time_reverse

COEFFS = ("a20", "a11", "a02", "b20", "b11", "b02")


def linear():
    e = HalfSystem.from_tables()
    return NumericInstance.from_system(SwitchingSystem(as_poly("1"), ParamPoly(), e, e))


def generic_point(seed, lam=None):
    rng = random.Random(seed)
    p = {c: rng.uniform(-0.5, 0.5) for c in COEFFS}
    p.update(delta=0.0, **{"lambda": lam if lam is not None else rng.uniform(0.5, 3)})
    return p


def test_linear_half_return_is_identity():
    inst = linear()
    for h in (0.01, 0.2):
        assert half_return(inst, h).r == pytest.approx(h, abs=1e-12)
        assert half_return(inst, h, "lower").r == pytest.approx(h, abs=1e-12)


def test_center_halves_agree():
    p = {"lambda": 2, "a20": 1, "b02": 1, "a11": -2, "b11": -2, "a02": 0.3, "b20": 0, "delta": 0}
    inst = NumericInstance.from_system(base_system(), p)
    up = half_return(inst, 0.05, "upper")
    lo = half_return(inst, 0.05, "lower")
    assert abs(up.r - lo.r) < 1e-10


def test_argument_checks():
    inst = linear()
    with pytest.raises(ValueError):
        half_return(inst, -1.0)
    with pytest.raises(ValueError):
        half_return(inst, 0.1, "middle")
    with pytest.raises(ValueError):
        displacement_scan(inst, 0.2, 0.1, 5)
    hot = NumericInstance.from_system(base_system(), {**generic_point(0), "delta": 0.1})
    with pytest.raises(PreconditionError):
        period_numeric(hot, 0.1)


def test_guard_fires_far_from_the_origin():
    # psi_3 = -sin(theta): the angular speed 1 - r*sin(theta) collapses for r near 1
    p = {"lambda": 1, "a20": 1, "a02": 1, "a11": 0, "b20": 0, "b11": 0, "b02": 0, "delta": 0}
    inst = NumericInstance.from_system(base_system(), p)
    half_return(inst, 0.1)
    with pytest.raises(NumericGuardError):
        half_return(inst, 2.0)


def test_linear_period():
    assert period_numeric(linear(), 0.1) == pytest.approx(2 * math.pi, abs=1e-10)


@pytest.mark.parametrize("h", [0.05, 0.1])
def test_isochronous_instance(h):
    p = {"lambda": 3, "a20": 0.7, "b11": 0.7, "a11": 0, "a02": 0, "b20": 0, "b02": 0, "delta": 0}
    inst = NumericInstance.from_system(base_system(), p)
    assert period_numeric(inst, h) == pytest.approx(2 * math.pi, abs=1e-8)


def test_first_period_constant_against_numeric_slope():
    sub = Substitution({"delta": ParamPoly(), "a11": ParamPoly(), "b20": ParamPoly(), "b02": ParamPoly()})
    pc = period_constants(base_system(), 3, subs=sub)
    p = {"lambda": 1.5, "a20": 0.4, "a02": -0.3, "b11": 0.2, "a11": 0, "b20": 0, "b02": 0, "delta": 0}
    inst = NumericInstance.from_system(base_system(), p)
    # Richardson slope of T(h) - 2*pi at small h
    h = 1e-3
    d1 = period_numeric(inst, h) - 2 * math.pi
    d2 = period_numeric(inst, 2 * h) - 2 * math.pi
    slope = (4 * d1 - d2) / (2 * h)
    assert slope == pytest.approx(pc[1].evalf(p), rel=1e-6)


def test_x_axis_symmetric_scan_is_flat():
    up = base_system().upper
    s = SwitchingSystem(as_poly("lambda"), ParamPoly(), up, reflect_time_reverse(up))
    inst = NumericInstance.from_system(s, generic_point(1))
    res = displacement_scan(inst, 0.01, 0.2, 8)
    assert res.sign_changes == 0
    assert all(abs(d) <= res.noise_floor for d in res.delta)
    cc = series_crosscheck(inst, {})
    assert cc.exact


def test_perturbed_center_leading_order():
    p = {"lambda": 2, "a20": 0.3, "a02": 0.2, "b11": -0.1, "a11": 0, "b20": 0, "b02": 1e-3, "delta": 0}
    inst = NumericInstance.from_system(base_system(), p)
    v2 = full_focus(3)[2].evalf(p)
    for h in (0.002, 0.004, 0.008):
        d, _ = displacement(inst, h)
        assert math.copysign(1, d) == math.copysign(1, v2)
        assert d == pytest.approx(v2 * h * h, rel=0.2)


@pytest.mark.parametrize("seed", range(3))
def test_series_order_generic(seed):
    fv = full_focus(8)
    p = generic_point(seed)
    inst = NumericInstance.from_system(base_system(), p)
    cc = series_crosscheck(inst, {m: fv[m].evalf(p) for m in range(2, 9)})
    assert cc.exact or cc.order >= 8.7


def test_corrupted_coefficient_is_flagged():
    fv = full_focus(8)
    p = generic_point(7)
    inst = NumericInstance.from_system(base_system(), p)
    coeffs = {m: fv[m].evalf(p) for m in range(2, 9)}
    coeffs[3] *= 2
    cc = series_crosscheck(inst, coeffs)
    assert cc.order == pytest.approx(3, abs=0.3)

import math
from fractions import Fraction

import numpy as np
import pytest

from qaswitch.casebook import cyclicity_certificate, cyclicity_pipeline, ratio_form, six_cycle_window, verify_two_cycle
from qaswitch.casebook.certificate import PI_HI, PI_LO
from qaswitch.casebook.elimination import positive_k_roots
from qaswitch.exactpoly import as_poly


def checks(rec):
    return {c.claim: c for c in rec.checks}


def test_ratio_form():
    assert ratio_form(as_poly("b02^2*a11+b02^4")) == as_poly("k*a20^2*a11+k^2*a20^4")
    with pytest.raises(ValueError):
        ratio_form(as_poly("b02*a11"))


def test_a1a_determinant_and_roots():
    rec = cyclicity_pipeline("A1a")
    assert rec.det_J == as_poly("(8384103915264/78125)*a20^10")
    assert rec.roots == pytest.approx([-2.59473685, -1.58363608], abs=1e-6)
    assert (rec.lambda_star, rec.k_star) == (Fraction(-16, 5), Fraction(16, 3))
    c = checks(rec)
    for claim in ("C_3 divides f_3 on the branch", "printed factor divides the resultant", "k formula along the resultant factor"):
        assert c[claim].ok


def test_a1a_branch_sign():
    # engine and printed f_1 on the branch differ by exactly -1
    c = checks(cyclicity_pipeline("A1a"))["f_1 on the branch equals the printed product"]
    assert not c.ok and c.detail["ratio"] == "-1"


def test_a1b_determinant():
    rec = cyclicity_pipeline("A1b")
    assert rec.det_J == as_poly("-(304277047914997479168/78125)*a20^10")
    assert rec.lambda_star == Fraction(-16, 5)
    assert len(rec.roots) == 3


def test_a1b_printed_branch_factors():
    c = checks(cyclicity_pipeline("A1b"))
    assert c["f_1 on the branch equals the printed product"].detail["cofactor_ratio"] == "1"
    assert c["f_3 on the branch equals the printed product"].detail["cofactor_ratio"] == "(59049/5924)"


def _float_count(quad, lam):
    c = [float(q.evalf({"lambda": lam})) for q in quad]
    return sum(1 for r in np.roots(c[::-1]) if abs(r.imag) < 1e-9 and r.real > 0)


@pytest.mark.parametrize("lam", ["1/10", "1/5", "11/10", "6/5", "13/10", "3"])
def test_positive_root_count_matches_float_roots(lam):
    w = six_cycle_window("A1a")
    quad = [as_poly(w.quadratic[f"A{i}"]) for i in range(3)]
    assert positive_k_roots(quad, Fraction(lam)) == _float_count(quad, float(Fraction(lam)))


def test_a1a_window():
    w = six_cycle_window("A1a")
    assert w.boundary == pytest.approx(0.23512585, abs=1e-6)
    threshold = 9 * math.sqrt(3 / 155)
    tail, mid, low = w.intervals[-1], w.intervals[-2], w.intervals[-3]
    assert tail["lo"] == pytest.approx(threshold, abs=1e-9) and tail["positive_roots"] == 1
    assert (mid["lo"], mid["positive_roots"]) == (1.0, 2)
    assert (low["lo"], low["hi"], low["positive_roots"]) == (0.0, 1.0, 0)


def test_a1b_window():
    w = six_cycle_window("A1b")
    assert w.upper == pytest.approx(5.132341426, abs=1e-8)
    quad = [as_poly(w.quadratic[f"A{i}"]) for i in range(3)]
    assert positive_k_roots(quad, Fraction(3)) == 1


def test_certificate():
    cert = cyclicity_certificate()
    assert cert.ok
    assert cert.alternating and cert.dominance
    assert cert.positive_roots == (6, 6)
    assert PI_LO < Fraction(math.pi) < PI_HI


def test_certificate_values_are_exact_evaluations():
    cert = cyclicity_certificate()
    from qaswitch.casebook.verify import full_focus

    fv = full_focus(7)
    pt = {**cert.params, "lambda": cert.lam, "delta": Fraction(0)}
    for m in range(2, 8):
        assert fv[m].evaluate(pt).terms == cert.values[m].terms


def test_two_cycle_fixture():
    rep = verify_two_cycle()
    assert rep["ok"]
    assert len(rep["roots"]) >= 2
    assert all(0 < r < 0.3 for r in rep["roots"])

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from discrete_appell.errors import ShiftPoleError, ValidityError
from discrete_appell.numerics import exact
from discrete_appell.operators import (
    Lin,
    OperatorExpr,
    ParamShift,
    Repeat,
    apply_operator_expr,
    expand_monomials,
    numeric_shift_apply,
    operator_cross_check,
    theta_eigen_check,
)
from discrete_appell.series import Params1, Params2, Point, evaluate, term_f3_disc1
from oracles import F, f3d1_brute

P1 = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1=4, t2=5, k1=2, k2=1)
P2 = Params2(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t=4, k=2)
PT = Point(0.3, -0.3)
PTC = Point(0.5, 0.2 + 0.1j)


# -- Lin algebra ----------------------------------------------------------------


def test_lin_arithmetic():
    e = (Lin.op("Th1") / 2 + Lin.op("Th2") / 3 + 5 - 1) * 2
    assert e.const == 8 and e.coef == {"Th1": 1, "Th2": Fraction(2, 3)}
    assert (3 - Lin.op("theta")).coef == {"theta": -1}
    assert (Lin.op("theta") - Lin.op("theta")).is_constant()


def test_lin_rejects_nonlinear():
    with pytest.raises(TypeError):
        Lin.op("theta") * Lin.op("phi")
    with pytest.raises(TypeError):
        1 / Lin.op("theta")


def test_expand_monomials():
    poly = expand_monomials([Lin.op("theta") + 1, Lin.op("phi") + 2])
    assert poly == {(0, 0, 0, 0, 0): 2, (1, 0, 0, 0, 0): 2, (0, 1, 0, 0, 0): 1, (1, 1, 0, 0, 0): 1}


# -- weight path ------------------------------------------------------------------


def test_affine_factor_at_origin():
    ev = apply_operator_expr(OperatorExpr(("a1+theta",)), P1, Point(0, 0))
    assert ev.value == complex(P1.a1)


def test_identity_operator_is_series():
    ev = apply_operator_expr(OperatorExpr(), P1, PT)
    assert ev.value == evaluate("f3d1", P1, PT).value
    assert operator_cross_check(OperatorExpr(), P1, PT).abs == 0


def test_theta_on_single_term():
    # t1 = 4, k1 = 2, m = 1: the coefficient carries 4*3 = 12, Theta gives 4*(12 - 3*2) = 24
    p = Params1(1, 1, 1, 1, 1, t1=4, t2=0, k1=2, k2=1)
    assert term_f3_disc1(p, 1, 0) == 12
    assert 4 * (12 - term_f3_disc1(p.replace(t1=3), 1, 0)) == 24
    x = 0.25
    ev = apply_operator_expr(OperatorExpr(("Th1",)), p, Point(x, 0))
    # only m <= 2 survive; weight 2m
    ref = sum(2 * m * term_f3_disc1(p, m, 0) * x ** m for m in range(3))
    assert abs(ev.value - ref) < 1e-14


def test_weight_path_against_brute_force():
    e = OperatorExpr(("theta", "phi+b2"))
    ev = apply_operator_expr(e, P1, Point(F(1, 3), F(-1, 4)), exact_mode=True)
    ref = 0
    for m in range(3):
        for n in range(6):
            ref += m * (n + P1.b2) * term_f3_disc1(P1, m, n) * F(1, 3) ** m * F(-1, 4) ** n
    assert ev.value == exact(ref)


def test_constant_zero_short_circuits():
    # t1 - 5 would be negative; a zero leading factor means the shifted series is never evaluated
    e = OperatorExpr(("t1-4",), ParamShift.of({"t1": "t1-5"}))
    assert apply_operator_expr(e, P1, PT).value == 0


def test_repeat_factors():
    e = OperatorExpr(repeat=Repeat("theta+b1+i", "i", "0", "r-1"))
    direct = OperatorExpr(("theta+b1", "theta+b1+1", "theta+b1+2"))
    a = apply_operator_expr(e, P1, PT, env={"r": 3}).value
    b = apply_operator_expr(direct, P1, PT).value
    assert a == b


def test_theta_phi_commute_exactly():
    e1 = OperatorExpr(("theta", "phi"))
    e2 = OperatorExpr(("phi", "theta"))
    a = apply_operator_expr(e1, P1, PTC).value
    b = apply_operator_expr(e2, P1, PTC).value
    assert a == b


def test_shift_pole():
    e = OperatorExpr((), ParamShift.of({"c": "c-4"}))
    p = P1.replace(c=3)
    with pytest.raises(ShiftPoleError):
        apply_operator_expr(e, p, PT)


def test_wrong_form_operator():
    with pytest.raises(ValidityError):
        apply_operator_expr(OperatorExpr(("Th",)), P1, PT)
    with pytest.raises(ValidityError):
        apply_operator_expr(OperatorExpr(("Th1",)), P2, PT)


# -- shift path -------------------------------------------------------------------


def test_delta_at_origin_is_zero():
    assert numeric_shift_apply("Delta", "t1", "f3d1", P1, Point(0, 0)) == 0


def test_theta_shift_matches_weight():
    a = numeric_shift_apply("Theta", "t1", "f3d1", P1, PT)
    b = apply_operator_expr(OperatorExpr(("Th1",)), P1, PT).value
    assert abs(a - b) <= 1e-12 * abs(b)


def test_theta_power_shift_matches_weight():
    a = numeric_shift_apply("Theta", "t", "f3d2", P2, PTC, power=2)
    b = apply_operator_expr(OperatorExpr(("Th", "Th")), P2, PTC).value
    assert abs(a - b) <= 1e-12 * abs(b)


def test_delta_with_unit_step():
    q = P1.replace(k1=1)
    d = numeric_shift_apply("Delta", "t1", "f3d1", q, PT)
    shifted = q.replace(a1=q.a1 + 1, b1=q.b1 + 1, c=q.c + 1)
    ref = q.a1 * q.b1 * F(3, 10) / q.c * f3d1_brute(*[getattr(shifted, f) for f in
                                                      ("a1", "a2", "b1", "b2", "c", "t1", "t2", "k1", "k2")],
                                                    F(3, 10), F(-3, 10))
    assert abs(d - float(ref)) <= 1e-12 * abs(float(ref))


def test_rho_is_parameter_offset():
    a = numeric_shift_apply("rho", "t1", "f3d1", P1, PT, power=2)
    b = evaluate("f3d1", P1.replace(t1=2), PT).value
    assert abs(a - b) <= 1e-15


def test_shift_matched_extents_non_terminating():
    # k = 0 makes the series independent of t; Delta must vanish to rounding
    p = P1.replace(k1=0, k2=0)
    assert abs(numeric_shift_apply("Delta", "t1", "f3d1", p, PT)) < 1e-15


def test_shift_apply_rejects_unknown():
    with pytest.raises(ValueError):
        numeric_shift_apply("nabla", "t1", "f3d1", P1, PT)


# -- cross checks -----------------------------------------------------------------


def test_cross_check_difference_equation_operator():
    e = OperatorExpr(("Th1", "Th1/k1+Th2/k2+c-1"))
    assert operator_cross_check(e, P1, PT).rel <= 1e-11


def test_cross_check_rho():
    e = OperatorExpr((), ParamShift.of({"t1": "t1-k1"}))
    assert operator_cross_check(e, P1, PT).rel <= 1e-12


@pytest.mark.parametrize("factors", [("theta", "theta-1"), ("phi+b2", "Th2/k2+a2"), ("c+theta+phi-1",)])
def test_cross_check_mixed(factors):
    e = OperatorExpr(factors, ParamShift.of({"a1": "a1+1", "t2": "t2-k2"}))
    assert operator_cross_check(e, P1, PTC).rel <= 1e-11


def test_cross_check_second_form():
    e = OperatorExpr(("Th", "Th/k+c-1", "theta+a1"), ParamShift.of({"t": "t-k"}))
    assert operator_cross_check(e, P2, PTC).rel <= 1e-11


def test_cross_check_needs_termination():
    with pytest.raises(ValidityError):
        operator_cross_check(OperatorExpr(("theta",)), P1.replace(k1=0, k2=0), PT)


# -- eigen relation -----------------------------------------------------------------


@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 3), st.integers(1, 3), st.integers(-3, 9),
       st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_theta_eigen_relation_exact(m, n, k1, k2, t1, t2):
    p = Params1(F(1, 3), F(2, 5), F(-4, 3), F(5, 2), F(9, 4), t1, t2, k1, k2)
    assert theta_eigen_check(p, m, n, "t1")
    assert theta_eigen_check(p, m, n, "t2")


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 3),
       st.fractions(min_value=-4, max_value=8, max_denominator=5))
def test_theta_eigen_relation_second_form(m, n, k, t):
    p = Params2(F(1, 3), F(2, 5), F(-4, 3), F(5, 2), F(9, 4), t, k)
    assert theta_eigen_check(p, m, n, "t")


def test_exact_mode_operator():
    e = OperatorExpr(("Th1", "Th1/k1+Th2/k2+c-1"))
    a = apply_operator_expr(e, P1, Point(F(1, 3), F(1, 5)), exact_mode=True).value
    b = apply_operator_expr(e, P1, Point(1 / 3, 0.2)).value
    assert abs(complex(a) - b) < 1e-13 * abs(b)
    assert isinstance(a.re, Fraction)

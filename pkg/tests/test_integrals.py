from fractions import Fraction as F

import pytest

from discrete_appell.catalog import default_panel
from discrete_appell.errors import ValidityError
from discrete_appell.integrals import (
    REPS,
    TOL_INTEGRAL,
    check_reps,
    complex_t_cases,
    eval_integral_rep,
    get_rep,
    integral_vs_series,
    rep_violation,
)
from discrete_appell.series import Params1, Params2, Point, evaluate

P1 = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2) + 3, t1=2, t2=2, k1=1, k2=1)
P2 = Params2(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2) + 3, t=3, k=2)


def _params(spec):
    return P1 if spec.variant == "f3d1" else P2


def test_registry():
    assert len(REPS) == 12
    assert len({r.rep_id for r in REPS}) == 12
    assert sum(r.variant == "f3d1" for r in REPS) == 7
    with pytest.raises(KeyError):
        get_rep("F9-z")


@pytest.mark.parametrize("spec", [r for r in REPS if not r.exponent or not r.exponent.startswith("-")],
                         ids=lambda r: r.rep_id)
def test_origin_gives_one(spec):
    # half-line: the integrand collapses to the gamma density; simplex: the Dirichlet normalisation
    v = eval_integral_rep(spec, _params(spec), Point(0, 0))
    assert abs(v - 1) <= 1e-12


def test_laguerre_form_example():
    p = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1=2, t2=2, k1=1, k2=1)
    pt = Point(0.25, 0.25)
    assert integral_vs_series("F1-a1", p, pt, 64).rel <= 1e-6


def test_simplex_form_example():
    p = Params1(F(1, 2), F(3, 4), 1, 1, 3.5, t1=2, t2=3, k1=1, k2=2)
    pt = Point(0.2, -0.15)
    assert integral_vs_series("F1-simplex", p, pt, 48).rel <= 1e-6


@pytest.mark.parametrize("spec", [r for r in REPS if not r.exponent or not r.exponent.startswith("-")],
                         ids=lambda r: r.rep_id)
def test_rule_doubling(spec):
    pt = Point(0.3, complex(0.2, 0.1))
    p = _params(spec)
    small = integral_vs_series(spec, p, pt, 32).rel
    large = integral_vs_series(spec, p, pt, 64).rel
    assert large <= max(small, TOL_INTEGRAL)
    assert large <= TOL_INTEGRAL


def test_panel_subset_sweep():
    cases = [(c.params, c.point) for c in default_panel().cases[::9]]
    results = check_reps(cases)
    statuses = {r.status for r in results}
    assert "fail" not in statuses, [r for r in results if r.status == "fail"][:3]
    assert sum(r.status == "pass" for r in results) > 20
    assert all(r.rel <= TOL_INTEGRAL for r in results if r.status == "pass")


def test_complex_t_forms():
    results = check_reps(complex_t_cases(), reps=[get_rep("F1-t1"), get_rep("F1-t2")])
    passed = [r for r in results if r.status == "pass"]
    assert len(passed) == 4
    assert all(r.rel <= TOL_INTEGRAL for r in passed)
    assert sum(r.status == "unverifiable" for r in results) == 2
    assert "fail" not in {r.status for r in results}


@pytest.mark.parametrize("rep_id,p", [
    ("F1-t1", P1),
    ("F1-simplex", P1.replace(c=2)),
    ("F2-b1", P2.replace(b1=F(-1, 2))),
    ("F2-a1", P1),
])
def test_violations_raise(rep_id, p):
    assert rep_violation(get_rep(rep_id), p)
    with pytest.raises(ValidityError):
        eval_integral_rep(rep_id, p, Point(0.1, 0.1))


def test_legendre_simplex_option():
    # integer b's and gap make every power polynomial, so the plain tensor rule is exact too
    p = Params2(F(1, 2), F(3, 4), 1, 2, 5, t=3, k=1)
    pt = Point(0.3, -0.2)
    ref = complex(evaluate("f3d2", p, pt).value)
    v = eval_integral_rep("F2-simplex", p, pt, 24, simplex_rule="legendre")
    assert abs(v - ref) <= 1e-10 * abs(ref)
    with pytest.raises(ValueError):
        eval_integral_rep("F2-simplex", p, pt, 8, simplex_rule="nope")

import json
import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from discrete_appell.catalog import (
    GROUPS,
    Case,
    Panel,
    catalog_operator_terms,
    check_identity,
    check_printed,
    default_panel,
    dumps_canonical,
    exact_panel,
    format_scalar,
    get_identity,
    list_identities,
    panel_from_json,
    panel_to_json,
    params_from_dict,
    run_suite,
    term_cross_check,
)
from discrete_appell.errors import ValidityError
from discrete_appell.numerics import exact, rising_factorial
from discrete_appell.series import Params1, Params2, Point
from oracles import F

P1 = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1=4, t2=3, k1=2, k2=1)
P2 = Params2(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t=4, k=1)
PT = Point(F(3, 10), F(-3, 10))


# -- registry ---------------------------------------------------------------------


def test_group_sizes():
    counts = Counter(i.group for i in list_identities())
    assert set(counts) == set(GROUPS)
    assert counts["DR1"] == counts["QR1"] == counts["DR2"] == 45
    assert counts["QR2"] == 17
    assert counts["CT1"] == counts["CT2"] == 10
    assert counts["RC1"] == counts["RC2"] == 7
    assert len({i.id for i in list_identities()}) == sum(counts.values())


def test_unknown_identity():
    with pytest.raises(KeyError):
        get_identity("XX9-9")


def test_every_identity_has_a_formula():
    assert all(i.formula for i in list_identities())


# -- single checks ----------------------------------------------------------------


def test_contiguous_at_origin_is_exact():
    res = check_identity("CT1-1", (P1, Point(0, 0)), exact_mode=True)
    assert res.abs == 0


@pytest.mark.parametrize("ident,env", [("RC1-1", {"s": 1}), ("FS1-1", {"r": 2}), ("DE1-1", {}), ("DR2-7", {})])
def test_exact_residual_is_zero(ident, env):
    p = P1 if ident.endswith("1-1") or ident.startswith("RC1") else P2
    assert check_identity(ident, (p, PT), env=env, exact_mode=True).abs == 0


def test_float_residual_within_tolerance():
    ident = get_identity("QR1-5")
    res = check_identity(ident, (P1, Point(0.5, 0.2 + 0.1j)))
    assert res.rel <= ident.tol


def test_validity_violation_raises():
    # nonpole(c-1) fails at c = 1
    with pytest.raises(ValidityError):
        check_identity("CT1-9", (P1.replace(c=1), PT))


def test_wrong_family_raises():
    with pytest.raises(ValidityError):
        check_identity("DE2-1", (P1, PT))


@pytest.mark.parametrize("ident", ["DF1-3", "QR1-17", "RED2-2"])
def test_printed_form_differs(ident):
    i = get_identity(ident)
    p = P1 if i.family == "f3d1" else P2
    if ident == "RED2-2":
        p = p.replace(k=1)
    pt = Point(0.3, -0.3) if ident != "RED2-2" else Point(0.3, 0.2)
    assert check_printed(i, (p, pt), env={"r": 3} if i.sweep else None).rel > 1e-3


def test_printed_second_form_contiguous_agrees():
    assert check_printed("CT2-9", (P2, Point(0.3, -0.3))).rel <= 1e-12


def test_limit_identity_reports_ratio():
    p = Params1(1, 1, 1, 1, 2, t1=2, t2=2, k1=1, k2=1)
    res = check_identity("LIM1-1", (p, Point(0.25, 0.25)))
    assert math.isfinite(res.rel) and res.rel < 0.011


# -- coefficient identity behind the prefactor-derivative formulas --------------------


@given(st.fractions(min_value=-5, max_value=5, max_denominator=9), st.integers(0, 8), st.integers(0, 6))
def test_pochhammer_lattice_identity(b, m, r):
    assert rising_factorial(b, m) * rising_factorial(b + m, r) == rising_factorial(b, r) * rising_factorial(b + r, m)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=9), st.fractions(min_value=-2, max_value=2,
                                                                             max_denominator=9),
       st.integers(0, 6), st.integers(0, 4))
def test_pochhammer_lattice_identity_gaussian(re, im, m, r):
    b = exact(complex(0)) + re + exact("0+1i") * im
    assert rising_factorial(b, m) * rising_factorial(b + m, r) == rising_factorial(b, r) * rising_factorial(b + r, m)


# -- suites -----------------------------------------------------------------------


def test_empty_panel():
    rep = run_suite(Panel([]))
    assert rep.passed and rep.n_cases == 0


def test_group_suite_on_default_panel():
    rep = run_suite(default_panel(), group="CT1")
    assert rep.passed and rep.n_cases > 0
    assert all(r.max_rel <= 1e-10 for r in rep.identities)


def test_exact_suite_group():
    rep = run_suite(exact_panel(reduced=True), group="RC2", exact_mode=True)
    assert rep.passed
    assert all(c.abs == 0 for r in rep.identities for c in r.cases)


def test_suite_selects_ids():
    rep = run_suite(default_panel(), ids=["QR1-17"])
    assert [r.identity.id for r in rep.identities] == ["QR1-17"]
    assert rep.identities[0].printed_max_rel > 1e-3


def test_suite_records_errors_without_aborting():
    # k = 0 with non-integer t: the k = 1 reduction is skipped rather than diverging
    bad = Case(Params1(0.5, 0.75, 1.5, 1.4, 3.5, t1=2.5, t2=1, k1=0, k2=0), Point(0.3, 0.3))
    rep = run_suite(Panel([bad]), group="RED1")
    ids = {r.identity.id: len(r.cases) for r in rep.identities}
    assert ids["RED1-1"] == 1 and ids["RED1-2"] == 0


def test_report_json_shape():
    rep = run_suite(Panel([Case(P1, PT)]), ids=["CT1-1"])
    d = json.loads(rep.to_json())
    entry = d["identities"][0]
    assert set(entry) >= {"identity_id", "group", "equation", "tol", "passed", "max_rel", "cases"}
    assert set(entry["cases"][0]) >= {"params", "point", "abs", "rel", "pass"}


# -- operator duality ---------------------------------------------------------------


def test_catalog_terms_weight_vs_shift():
    cases = {"f3d1": Case(P1, Point(0.3, -0.3)), "f3d2": Case(P2, Point(0.5, 0.2 + 0.1j))}
    checked = 0
    for ident, term, env in catalog_operator_terms():
        if ident.group.startswith(("RED", "IS")):
            continue
        res = term_cross_check(ident, term, env, cases[ident.family])
        if res is None:
            continue
        checked += 1
        assert res.rel <= 1e-11, (ident.id, env)
    assert checked > 500


# -- serialisation ------------------------------------------------------------------


def test_format_scalar():
    assert format_scalar(0.5) == "0.5"
    assert format_scalar(0.2 - 0.1j) == "0.20000000000000001-0.10000000000000001i"


def test_dumps_canonical_is_stable():
    assert dumps_canonical({"b": 1, "a": [0.1, None]}) == dumps_canonical({"b": 1, "a": [0.1, None]})


def test_panel_round_trip():
    panel = Panel([Case(P1, PT), Case(P2, Point(0.5, 0.2 + 0.1j))])
    back = panel_from_json(panel_to_json(panel))
    assert [c.family for c in back.cases] == ["f3d1", "f3d2"]
    assert complex(back.cases[1].point.y) == 0.2 + 0.1j
    assert complex(back.cases[0].params.b1) == pytest.approx(5 / 3, rel=1e-15)


def test_params_from_dict_forms():
    assert isinstance(params_from_dict(dict(a1=1, a2=1, b1=1, b2=1, c=2, t=3, k=1)), Params2)
    p = params_from_dict(dict(a1="1+2i", a2=1, b1=1, b2=1, c=2, t1=3, t2=1, k1=1, k2=2))
    assert isinstance(p, Params1) and complex(p.a1) == 1 + 2j


@pytest.mark.parametrize("text", [
    "not json",
    "{}",
    '[{"params": {}}]',
    '[{"params": {"a1": 1}, "point": {"x": 0.1}}]',
    '[{"params": {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "c": 2, "zz": 1}, "point": {"x": 0.1}}]',
    '[{"params": {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "c": 2, "k1": -1}, "point": {"x": 0.1}}]',
    '[{"params": {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "c": 2}, "point": {"y": 0.1}}]',
])
def test_malformed_panels(text):
    with pytest.raises(ValidityError):
        panel_from_json(text)


def test_empty_panel_json():
    assert len(panel_from_json("[]")) == 0


def test_pochhammer_fraction_sanity():
    assert rising_factorial(Fraction(1, 2), 3) == Fraction(15, 8)

"""Acceptance criteria 1-7, one pass/fail line each.

Each test records its line in ``conftest.ACCEPTANCE`` (printed in the
terminal summary) and prints it immediately with capture disabled.
Tolerances are pinned here and never derived from the package.
"""
import math
import time
from fractions import Fraction

import mpmath

import conftest
from discrete_appell.catalog import (
    catalog_operator_terms,
    default_panel,
    exact_panel,
    run_suite,
    term_cross_check,
)
from discrete_appell.errors import DivergenceDetected
from discrete_appell.integrals import REPS, check_reps, complex_t_cases
from discrete_appell.operators import theta_eigen_check
from discrete_appell.quadrature import gauss_laguerre, gauss_legendre
from discrete_appell.series import (
    Params1,
    Params2,
    Point,
    TruncationPolicy,
    eval_f3_disc1,
    eval_f3_disc2,
    limit_degeneration,
)
from oracles import f3_mp, kdf_brute

F = Fraction

TOL_SUITE = 1e-10
SUITE_SECONDS = 60.0
TOL_REDUCTION = 1e-12
TOL_INTEGRAL = 1e-6
LIMIT_EPS = (1e-1, 1e-2, 1e-3)
LIMIT_RATIO = 1e-2
TOL_DUALITY = 1e-11
DIVERGENCE_DIAGONALS = 40
TOL_MONOMIAL = 1e-12

SUITE_GROUPS = ("DE1", "DE2", "DF1", "DX1", "DX2", "FS1", "FS2", "RC1", "RC2", "CT1", "CT2", "DR1", "DR2",
                "QR1", "QR2")


def record(capsys, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE[number] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def _rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300)


# -- 1 ------------------------------------------------------------------------------


def test_criterion_1_identity_suite(capsys):
    panel = default_panel()
    start = time.perf_counter()
    reports = [r for g in SUITE_GROUPS for r in run_suite(panel, g).identities]
    elapsed = time.perf_counter() - start
    worst = max(reports, key=lambda r: r.max_rel)
    float_ok = all(r.passed and r.max_rel <= TOL_SUITE for r in reports) and elapsed < SUITE_SECONDS
    exact_reports = [r for g in SUITE_GROUPS for r in run_suite(exact_panel(), g, exact_mode=True).identities]
    nonzero = [(r.identity.id, c.abs) for r in exact_reports for c in r.cases if c.abs != 0 or not c.passed]
    n_exact = sum(len(r.cases) for r in exact_reports)
    ok = float_ok and not nonzero and n_exact > 0
    record(capsys, 1, ok,
           f"{len(reports)} identities, {sum(len(r.cases) for r in reports)} float cases, "
           f"max rel {worst.max_rel:.2e} ({worst.identity.id}) <= {TOL_SUITE:g}, {elapsed:.1f}s < {SUITE_SECONDS:g}s; "
           f"exact mode {n_exact} cases, {len(nonzero)} nonzero residuals")


# -- 2 ------------------------------------------------------------------------------

RED_SETS = (
    dict(a1=F(1, 2), a2=F(3, 4), b1=F(5, 3), b2=F(7, 5), c=F(7, 2)),
    dict(a1=F(2, 7), a2=F(-5, 4), b1=F(-1, 3), b2=F(9, 4), c=F(-5, 2)),
)
RED_POINTS = ((0.3, -0.3), (0.5, 0.2 + 0.1j), (-0.5, 0.5), (0.2 + 0.1j, -0.5))


def test_criterion_2_reductions(capsys):
    worst = 0.0
    n = 0
    for s in RED_SETS:
        fl = {k: float(v) for k, v in s.items()}
        for x, y in RED_POINTS:
            pt = Point(x, y)
            # k1 = k2 = 0: classical F3 (t values are then irrelevant)
            v = eval_f3_disc1(Params1(**fl, t1=2.5, t2=-1.3, k1=0, k2=0), pt).value
            worst = max(worst, _rel(v, f3_mp(*fl.values(), x, y)))
            v = eval_f3_disc2(Params2(**fl, t=7 / 3, k=0), pt).value
            worst = max(worst, _rel(v, f3_mp(*fl.values(), x, y)))
            a1, a2, b1, b2, c = fl.values()
            t1, t2 = 4, 3
            for k1, k2, B, C, X, Y in (
                (1, 0, [a1, b1, -t1], [a2, b2], -x, y),
                (0, 1, [a1, b1], [a2, b2, -t2], x, -y),
                (1, 1, [a1, b1, -t1], [a2, b2, -t2], -x, -y),
            ):
                v = eval_f3_disc1(Params1(**fl, t1=t1, t2=t2, k1=k1, k2=k2), pt).value
                worst = max(worst, _rel(v, kdf_brute([], B, C, [c], [], [], X, Y, M=90)))
            v = eval_f3_disc2(Params2(**fl, t=4, k=1), pt).value
            worst = max(worst, _rel(v, kdf_brute([-4], [a1, b1], [a2, b2], [c], [], [], -x, -y, M=90)))
            n += 6
    record(capsys, 2, worst <= TOL_REDUCTION,
           f"{n} reductions (k=0 to F3, four Kampe de Feriet forms) vs brute force, max rel {worst:.2e} "
           f"<= {TOL_REDUCTION:g}")


# -- 3 ------------------------------------------------------------------------------


def test_criterion_3_integral_representations(capsys):
    cases = [(c.params, c.point) for c in default_panel().cases] + complex_t_cases()
    results = check_reps(cases, tol=TOL_INTEGRAL)
    by_rep = {r.rep_id: {"pass": 0, "fail": 0, "invalid": 0, "unverifiable": 0} for r in REPS}
    for r in results:
        by_rep[r.rep_id][r.status] += 1
    worst = max((r.rel for r in results if r.status == "pass"), default=math.nan)
    fails = [r for r in results if r.status == "fail"]
    uncovered = [k for k, v in by_rep.items() if v["pass"] == 0]
    unverifiable = [r for r in results if r.status == "unverifiable"]
    for r in unverifiable:
        with capsys.disabled():
            print(f"  unverifiable: {r.rep_id} at {r.params} ({r.detail})")
    ok = not fails and not uncovered
    record(capsys, 3, ok,
           f"{sum(v['pass'] for v in by_rep.values())} pass, {len(fails)} fail, "
           f"{sum(v['invalid'] for v in by_rep.values())} outside validity, {len(unverifiable)} unverifiable; "
           f"max rel {worst:.2e} <= {TOL_INTEGRAL:g}; reps without a verified case: {uncovered or 'none'}")


# -- 4 ------------------------------------------------------------------------------

LIMIT_CASES = (
    ("xi11", Params1(1, 1, 1, 1, 2, 2, 2, 1, 1)),
    ("xi21", Params1(1, 1, 1, 1, 2, 2, 2, 1, 1)),
    ("xi12", Params2(1, 1, 1, 1, 2, 2, 1)),
    ("xi22", Params2(1, 1, 1, 1, 2, 2, 1)),
)


def test_criterion_4_limits(capsys):
    lines = []
    ok = True
    for target, p in LIMIT_CASES:
        rep = limit_degeneration(target, p, Point(0.25, 0.25), LIMIT_EPS)
        # ratio comes from exact squared errors when the case terminates
        good = rep.monotone and rep.ratio <= LIMIT_RATIO
        ok = ok and good
        lines.append(f"{target} ratio {rep.ratio:.6f}")
    record(capsys, 4, ok, f"errors decrease over eps {LIMIT_EPS}, final/initial <= {LIMIT_RATIO:g}: "
                          + ", ".join(lines))


# -- 5 ------------------------------------------------------------------------------


def test_criterion_5_operator_duality(capsys):
    # one point per discrete configuration of the terminating panel (every k >= 1)
    panel = default_panel()
    seen, cases = set(), []
    for c in panel.cases:
        ks = (c.params.k1, c.params.k2) if isinstance(c.params, Params1) else (c.params.k,)
        if 0 in ks:
            continue
        key = (type(c.params), tuple(sorted((k, str(v)) for k, v in c.params.as_dict().items())))
        if key not in seen:
            seen.add(key)
            cases.append(c)
    by_family = {f: [c for c in cases if c.family == f] for f in ("f3d1", "f3d2")}
    worst, n_terms, n_checks, errors = 0.0, 0, 0, []
    for ident, term, env in catalog_operator_terms():
        n_terms += 1
        for case in by_family[ident.family]:
            try:
                res = term_cross_check(ident, term, env, case)
            except Exception as exc:  # noqa: BLE001 - every failure mode counts against the criterion
                errors.append(f"{ident.id}: {type(exc).__name__}")
                continue
            if res is not None:
                n_checks += 1
                worst = max(worst, res.rel)
    eigen_ok, n_eigen = True, 0
    for t1, t2 in ((F(5, 2), 3), (F(-7, 3), F(4, 5)), (6, 2)):
        for k1 in (1, 2, 3):
            for k2 in (0, 1, 2):
                p = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1, t2, k1, k2)
                q = Params2(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1, k1)
                for m in range(6):
                    for n in range(6):
                        eigen_ok &= theta_eigen_check(p, m, n, "t1") and theta_eigen_check(p, m, n, "t2")
                        eigen_ok &= theta_eigen_check(q, m, n, "t")
                        n_eigen += 3
    ok = worst <= TOL_DUALITY and not errors and eigen_ok and n_checks > 0
    record(capsys, 5, ok,
           f"{n_terms} catalog operator terms, {n_checks} weight-vs-shift checks, max rel {worst:.2e} "
           f"<= {TOL_DUALITY:g}, {len(errors)} errors; eigen relation exact in {n_eigen} rational checks: {eigen_ok}")


# -- 6 ------------------------------------------------------------------------------


def test_criterion_6_divergence(capsys):
    fired, missed, max_diag = 0, [], 0
    for k in (2, 3):
        for t in (1.5, 0.5 + 0.25j, -2.3, 7.1):
            for x in (0.3, 0.01, -0.2j, 0.5 + 0.5j):
                for name, call in (
                    ("f3d1", lambda: eval_f3_disc1(Params1(1, 1, 1, 1, 2, t, 2, k, 1), Point(x, 0.5))),
                    ("f3d2", lambda: eval_f3_disc2(Params2(1, 1, 1, 1, 2, t, k), Point(x, 0.5))),
                ):
                    try:
                        call()
                        missed.append((name, k, t, x))
                    except DivergenceDetected as exc:
                        if exc.diagonals > DIVERGENCE_DIAGONALS:
                            missed.append((name, k, t, x, exc.diagonals))
                        else:
                            fired += 1
                            max_diag = max(max_diag, exc.diagonals)
    big = TruncationPolicy(max_m=2048, max_n=2048)
    unstable, n_term = [], 0
    for c in default_panel().cases:
        p = c.params
        ks = (p.k1, p.k2) if isinstance(p, Params1) else (p.k,)
        if 0 in ks:
            continue
        fn = eval_f3_disc1 if isinstance(p, Params1) else eval_f3_disc2
        a, b = fn(p, c.point), fn(p, c.point, big)
        n_term += 1
        if not (a.terminated and b.terminated and a.value == b.value):
            unstable.append(c)
    ok = not missed and not unstable
    record(capsys, 6, ok,
           f"divergence fired in {fired} cases within {max_diag} <= {DIVERGENCE_DIAGONALS} anti-diagonals, "
           f"{len(missed)} missed; {n_term} terminating cases bit-stable under 8x caps, {len(unstable)} changed")


# -- 7 ------------------------------------------------------------------------------


def test_criterion_7_quadrature(capsys):
    worst = 0.0
    for n in range(1, 65):
        lag, leg = gauss_laguerre(n), gauss_legendre(n)
        for d in range(2 * n):
            exact = math.factorial(d)
            worst = max(worst, abs(math.fsum(lag.weights * lag.nodes ** d) - exact) / exact)
            exact = 2 / (d + 1) if d % 2 == 0 else 0.0
            worst = max(worst, abs(math.fsum(leg.weights * leg.nodes ** d) - exact) / max(exact, 1.0))
    with mpmath.workdps(40):
        s2, s3 = mpmath.sqrt(2), mpmath.sqrt(3)
        want = {
            "laguerre1": ([1.0], [1.0]),
            "legendre1": ([0.0], [2.0]),
            "laguerre2": ([float(2 - s2), float(2 + s2)], [float((2 + s2) / 4), float((2 - s2) / 4)]),
            "legendre2": ([float(-1 / s3), float(1 / s3)], [1.0, 1.0]),
        }
    got = {
        "laguerre1": gauss_laguerre(1), "legendre1": gauss_legendre(1),
        "laguerre2": gauss_laguerre(2), "legendre2": gauss_legendre(2),
    }
    mismatched = [k for k, (x, w) in want.items() if got[k].nodes.tolist() != x or got[k].weights.tolist() != w]
    ok = worst <= TOL_MONOMIAL and not mismatched
    record(capsys, 7, ok,
           f"Laguerre/Legendre n=1..64 monomials to degree 2n-1, max rel {worst:.2e} <= {TOL_MONOMIAL:g}; "
           f"n=1,2 closed forms equal to correctly rounded values: {not mismatched}")

"""Registry of identities and a generic residual evaluator.

An :class:`Identity` is data: two lists of :class:`Term` records plus
validity constraints and parameter sweeps.  :func:`check_identity` turns one
identity and one ``(params, point)`` case into a :class:`Residual`;
:func:`run_suite` aggregates over a :class:`Panel`.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import AppellError, ValidityError
from .numerics import exact, is_exact, parse_scalar
from .operators import (
    OperatorExpr,
    Residual,
    _as_int,
    _eval,
    _residual,
    apply_operator_expr,
    namespace,
    operator_cross_check,
)
from .series import DEFAULT_POLICY, Params1, Params2, Point, TruncationPolicy, limit_degeneration

__all__ = [
    "TOL_EXACT",
    "TOL_INFINITE",
    "TOL_REDUCTION",
    "TOL_DUALITY",
    "Term",
    "Identity",
    "Case",
    "Panel",
    "CaseResult",
    "IdentityReport",
    "SuiteReport",
    "GROUPS",
    "identities",
    "get_identity",
    "list_identities",
    "check_identity",
    "check_printed",
    "run_suite",
    "default_panel",
    "exact_panel",
    "panel_from_json",
    "panel_to_json",
    "format_scalar",
    "dumps_canonical",
    "catalog_operator_terms",
]

TOL_EXACT = 1e-10
TOL_INFINITE = 1e-8
TOL_REDUCTION = 1e-12
TOL_DUALITY = 1e-11
LIMIT_EPS = (1e-1, 1e-2, 1e-3)

GROUPS = (
    "DE1", "DF1", "DX1", "FS1", "IS1", "RC1", "CT1", "DR1", "QR1", "RED1", "LIM1",
    "DE2", "DX2", "FS2", "IS2", "RC2", "CT2", "DR2", "QR2", "RED2", "LIM2",
)


@dataclass(frozen=True)
class Term:
    """``coef * op(F)``, optionally summed over ``index = (var, lo, hi)``."""

    coef: str = "1"
    op: OperatorExpr = field(default_factory=OperatorExpr)
    index: Optional[tuple] = None


@dataclass(frozen=True)
class Identity:
    """One identity ``sum(lhs) = sum(rhs)``.

    ``family`` is ``"f3d1"`` or ``"f3d2"`` and fixes the parameter record.
    ``sweep`` lists ``(name, values)`` pairs; every combination is checked.
    ``overrides`` fixes parameters (e.g. ``k1 = 0``) before evaluation.
    ``limit`` names a Humbert target; such identities are confluent limits
    checked through :func:`limit_degeneration` instead of term lists.
    ``printed`` optionally replaces ``(lhs, rhs)`` by the literal printed
    form of a corrected identity; its residual is reported, not enforced.
    """

    id: str
    group: str
    family: str
    lhs: tuple = ()
    rhs: tuple = ()
    validity: tuple = ()
    sweep: tuple = ()
    overrides: tuple = ()
    tol: float = TOL_EXACT
    exact_ok: bool = True
    limit: Optional[str] = None
    printed: Optional[tuple] = None
    note: str = ""
    formula: str = ""


@dataclass(frozen=True)
class Case:
    params: object
    point: Point

    @property
    def family(self):
        return "f3d1" if isinstance(self.params, Params1) else "f3d2"


@dataclass
class Panel:
    cases: list

    def __len__(self):
        return len(self.cases)

    def for_family(self, family):
        return [c for c in self.cases if c.family == family]


@dataclass
class CaseResult:
    params: dict
    point: dict
    env: dict
    abs: float
    rel: float
    passed: bool
    error: str = ""


@dataclass
class IdentityReport:
    identity: Identity
    cases: list
    printed_max_rel: Optional[float] = None

    @property
    def max_rel(self):
        return max((c.rel for c in self.cases), default=0.0)

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    def to_dict(self):
        d = {
            "identity_id": self.identity.id,
            "group": self.identity.group,
            "equation": self.identity.formula,
            "tol": self.identity.tol,
            "passed": self.passed,
            "max_rel": self.max_rel,
            "cases": [
                {"params": c.params, "point": c.point, **({"env": c.env} if c.env else {}),
                 "abs": c.abs, "rel": c.rel, "pass": c.passed, **({"error": c.error} if c.error else {})}
                for c in self.cases
            ],
        }
        if self.identity.note:
            d["note"] = self.identity.note
        if self.printed_max_rel is not None:
            d["printed_max_rel"] = self.printed_max_rel
        return d


@dataclass
class SuiteReport:
    identities: list
    exact_mode: bool = False

    @property
    def n_cases(self):
        return sum(len(r.cases) for r in self.identities)

    @property
    def passed(self):
        return all(r.passed for r in self.identities)

    @property
    def failures(self):
        return [r for r in self.identities if not r.passed]

    def to_dict(self):
        return {
            "exact_mode": self.exact_mode,
            "n_identities": len(self.identities),
            "n_cases": self.n_cases,
            "passed": self.passed,
            "identities": [r.to_dict() for r in self.identities],
        }

    def to_json(self):
        return dumps_canonical(self.to_dict())


# ---------------------------------------------------------------------------
# registry


def identities() -> tuple:
    from .identities import IDENTITIES

    return IDENTITIES


def get_identity(identity_id: str) -> Identity:
    for ident in identities():
        if ident.id == identity_id:
            return ident
    raise KeyError(f"unknown identity {identity_id!r}")


def list_identities(group: str = "all") -> list:
    """Identities of ``group`` (``"all"`` for every group) in registry order."""
    if group != "all" and group not in GROUPS:
        raise KeyError(f"unknown group {group!r}")
    return [i for i in identities() if group == "all" or i.group == group]


# ---------------------------------------------------------------------------
# evaluation


def _apply_overrides(ident: Identity, p):
    return p.replace(**dict(ident.overrides)) if ident.overrides else p


def _sweep_envs(ident: Identity):
    if not ident.sweep:
        return [{}]
    names = [n for n, _ in ident.sweep]
    return [dict(zip(names, combo)) for combo in itertools.product(*(v for _, v in ident.sweep))]


def _valid(ident: Identity, p, pt, env) -> bool:
    if not ident.validity:
        return True
    ns = namespace(p, pt, env)
    return all(bool(_eval(v, ns)) for v in ident.validity)


def _index_range(term: Term, ns):
    if term.index is None:
        return [None]
    var, lo, hi = term.index
    return [(var, i) for i in range(_as_int(_eval(lo, ns)), _as_int(_eval(hi, ns)) + 1)]


def _side(terms, family, p, pt, env, exact_mode, pol):
    total = exact(0) if exact_mode else 0j
    base_ns = namespace(p, pt, env, exact_mode)
    for term in terms:
        for idx in _index_range(term, base_ns):
            local = dict(env)
            if idx is not None:
                local[idx[0]] = idx[1]
            ns = namespace(p, pt, local, exact_mode)
            coef = _eval(term.coef, ns)
            if not coef:
                continue
            value = apply_operator_expr(term.op, p, pt, pol, env=local, exact_mode=exact_mode, variant=family).value
            total = total + coef * value
    return total


def _sides_residual(lhs, rhs, family, p, pt, env, exact_mode, pol) -> Residual:
    left = _side(lhs, family, p, pt, env, exact_mode, pol)
    right = _side(rhs, family, p, pt, env, exact_mode, pol)
    if exact_mode:
        diff = left - right
        if not diff:
            return Residual(0.0, 0.0, max(abs(left), abs(right)))
    return _residual(left, right)


def _coerce_case(ident: Identity, p, pt, exact_mode):
    if ident.family == "f3d1" and not isinstance(p, Params1):
        raise ValidityError(f"{ident.id} needs first-form parameters")
    if ident.family == "f3d2" and not isinstance(p, Params2):
        raise ValidityError(f"{ident.id} needs second-form parameters")
    return _apply_overrides(ident, p)


def check_identity(identity, case, pol: TruncationPolicy = DEFAULT_POLICY, *, env: Optional[dict] = None,
                   exact_mode: bool = False) -> Residual:
    """Residual of one identity at one ``(params, point)`` case.

    ``env`` supplies sweep variables (e.g. ``{"r": 2}``); missing ones take
    the first sweep value.  Confluent-limit identities return the final error
    as ``abs``, the error ratio as ``rel`` and the initial error as ``scale``.
    """
    ident = identity if isinstance(identity, Identity) else get_identity(identity)
    p, pt = (case.params, case.point) if isinstance(case, Case) else case
    p = _coerce_case(ident, p, pt, exact_mode)
    full_env = {n: v[0] for n, v in ident.sweep}
    full_env.update(env or {})
    if not _valid(ident, p, pt, full_env):
        raise ValidityError(f"{ident.id}: case violates {ident.validity}")
    if ident.limit is not None:
        rep = limit_degeneration(ident.limit, p, pt, LIMIT_EPS, pol)
        return Residual(rep.errors[-1], rep.ratio if rep.monotone else math.inf, rep.errors[0])
    if exact_mode and not ident.exact_ok:
        raise ValidityError(f"{ident.id} has no exact evaluation")
    return _sides_residual(ident.lhs, ident.rhs, ident.family, p, pt, full_env, exact_mode, pol)


def check_printed(identity, case, pol: TruncationPolicy = DEFAULT_POLICY, *, env: Optional[dict] = None) -> Residual:
    """Residual of the printed variant of a corrected identity."""
    ident = identity if isinstance(identity, Identity) else get_identity(identity)
    if ident.printed is None:
        raise ValueError(f"{ident.id} has no printed variant")
    p, pt = (case.params, case.point) if isinstance(case, Case) else case
    p = _coerce_case(ident, p, pt, False)
    full_env = {n: v[0] for n, v in ident.sweep}
    full_env.update(env or {})
    lhs, rhs = ident.printed
    return _sides_residual(lhs if lhs is not None else ident.lhs, rhs if rhs is not None else ident.rhs,
                           ident.family, p, pt, full_env, False, pol)


def _case_passed(ident: Identity, res: Residual, exact_mode: bool) -> bool:
    if ident.limit is not None:
        return math.isfinite(res.rel)
    if exact_mode:
        return res.abs == 0
    return res.rel <= ident.tol


def run_suite(panel: Panel, group: str = "all", pol: TruncationPolicy = DEFAULT_POLICY, *,
              exact_mode: bool = False, ids: Optional[Iterable[str]] = None) -> SuiteReport:
    """Check every identity of ``group`` on every compatible panel case.

    Cases violating an identity's validity constraints are skipped.  Errors
    raised while evaluating a case are recorded as failures; the run never
    aborts.  In exact mode identities without exact evaluation (those with
    transcendental coefficients, the confluent limits and non-terminating
    cases) are skipped.
    """
    chosen = list_identities(group)
    if ids is not None:
        wanted = set(ids)
        chosen = [i for i in chosen if i.id in wanted]
    reports = []
    for ident in chosen:
        if exact_mode and (not ident.exact_ok or ident.limit is not None):
            continue
        results = []
        printed = []
        for case in panel.for_family(ident.family):
            p = _apply_overrides(ident, case.params)
            for env in _sweep_envs(ident):
                if not _valid(ident, p, case.point, env):
                    continue
                try:
                    res = check_identity(ident, case, pol, env=env, exact_mode=exact_mode)
                except ValidityError as exc:
                    if exact_mode:
                        continue
                    results.append(_case_result(p, case.point, env, None, False, str(exc)))
                    continue
                except (AppellError, ArithmeticError, ValueError) as exc:
                    results.append(_case_result(p, case.point, env, None, False, f"{type(exc).__name__}: {exc}"))
                    continue
                results.append(_case_result(p, case.point, env, res, _case_passed(ident, res, exact_mode)))
                if ident.printed is not None and not exact_mode:
                    try:
                        printed.append(check_printed(ident, case, pol, env=env).rel)
                    except (AppellError, ArithmeticError, ValueError):
                        printed.append(math.inf)
        reports.append(IdentityReport(ident, results, max(printed) if printed else None))
    return SuiteReport(reports, exact_mode)


def _case_result(p, pt, env, res: Optional[Residual], passed: bool, error: str = "") -> CaseResult:
    return CaseResult(
        params={k: _jsonable(v) for k, v in p.as_dict().items()},
        point={"x": _jsonable(pt.x), "y": _jsonable(pt.y)},
        env={k: _jsonable(v) for k, v in env.items()},
        abs=res.abs if res is not None else math.inf,
        rel=res.rel if res is not None else math.inf,
        passed=passed,
        error=error,
    )


def catalog_operator_terms(group: str = "all"):
    """Yield ``(identity, term, env)`` for every operator expression in the catalog."""
    for ident in list_identities(group):
        if ident.limit is not None:
            continue
        for env in _sweep_envs(ident):
            for term in ident.lhs + ident.rhs:
                yield ident, term, env


def term_cross_check(ident: Identity, term: Term, env: dict, case: Case,
                     pol: TruncationPolicy = DEFAULT_POLICY) -> Optional[Residual]:
    """Weight path against shift path for one catalog term (largest over its index).

    Returns ``None`` when every coefficient vanishes on the case.
    """
    p = _apply_overrides(ident, case.params)
    pt = case.point
    ns = namespace(p, pt, env)
    worst = None
    for idx in _index_range(term, ns):
        local = dict(env)
        if idx is not None:
            local[idx[0]] = idx[1]
        if not _eval(term.coef, namespace(p, pt, local)):
            continue
        res = operator_cross_check(term.op, p, pt, pol, env=local, variant=ident.family)
        if worst is None or res.rel > worst.rel:
            worst = res
    return worst


__all__.append("term_cross_check")


# ---------------------------------------------------------------------------
# panels


def _gauss(re, im=0):
    return complex(float(re), float(im)) if im else re


A_SET = dict(a1=Fraction(1, 2), a2=Fraction(3, 4), b1=Fraction(5, 3), b2=Fraction(7, 5), c=Fraction(7, 2))
B_SET = dict(a1=Fraction(2, 7), a2=Fraction(-5, 4), b1=Fraction(-1, 3), b2=Fraction(9, 4), c=Fraction(-5, 2))
C_SET = dict(a1=exact("1/3+1/2i"), a2=Fraction(2), b1=Fraction(-7, 4), b2=exact("1/5-1/3i"), c=exact("11/3+1/4i"))
PARAM_SETS = (A_SET, B_SET, C_SET)
DISCRETE1 = ((2, 1, 3, 1), (4, 2, 5, 1), (6, 3, 2, 2), (5, 2, 6, 3), (3, 3, 4, 1))
DISCRETE2 = ((3, 1), (4, 2), (6, 3), (5, 1), (6, 2))
POINTS = (
    (Fraction(3, 10), Fraction(-3, 10)),
    (Fraction(1, 2), exact("1/5+1/10i")),
    (Fraction(-3, 10), Fraction(1, 2)),
    (exact("1/5+1/10i"), Fraction(3, 10)),
)
SMALL_POINTS = (POINTS[0], POINTS[3])


def _as_float_value(v):
    if is_exact(v):
        return complex(v) if v.im else float(v.re)
    if isinstance(v, Fraction):
        return float(v)
    return v


def _float_params(cls, d):
    return cls(**{k: (_as_float_value(v) if not k.startswith("k") else v) for k, v in d.items()})


def _build_panel(exact_values: bool, sets=PARAM_SETS, d1=DISCRETE1, d2=DISCRETE2, points=POINTS,
                 k0_points=SMALL_POINTS):
    conv = (lambda v: v) if exact_values else _as_float_value
    cases = []
    for base in sets:
        for t1, k1, t2, k2 in d1:
            p = dict(base, t1=t1, t2=t2, k1=k1, k2=k2)
            for x, y in points:
                cases.append(Case(_params(Params1, p, exact_values), Point(conv(x), conv(y))))
    for base in sets:
        for t, k in d2:
            p = dict(base, t=t, k=k)
            for x, y in points:
                cases.append(Case(_params(Params2, p, exact_values), Point(conv(x), conv(y))))
    if k0_points:
        for base in sets:
            p1 = dict(base, t1=Fraction(5, 2), t2=Fraction(-1, 3), k1=0, k2=0)
            p2 = dict(base, t=Fraction(7, 3), k=0)
            for x, y in k0_points:
                cases.append(Case(_params(Params1, p1, exact_values), Point(conv(x), conv(y))))
                cases.append(Case(_params(Params2, p2, exact_values), Point(conv(x), conv(y))))
    return Panel(cases)


def _params(cls, d, exact_values):
    if exact_values:
        return cls(**d)
    return _float_params(cls, d)


def default_panel() -> Panel:
    """Standard panel: terminating cases (integer ``t``, ``k`` in 1..3) plus a ``k = 0`` sub-panel.

    Three parameter sets (two rational, one Gaussian rational) times five
    discrete configurations times four points per form; the ``k = 0``
    sub-panel uses points with ``|x|, |y| <= 0.5``.
    """
    return _build_panel(False)


def exact_panel(reduced: bool = False) -> Panel:
    """Terminating cases of :func:`default_panel` with exact rational data.

    ``reduced`` keeps one point per configuration, which bounds the runtime
    of exact-mode sweeps.
    """
    if reduced:
        return _build_panel(True, points=POINTS[1:2], k0_points=())
    return _build_panel(True, k0_points=())


# ---------------------------------------------------------------------------
# serialisation


def format_scalar(v) -> str:
    """``a+bi`` text with 17 significant digits (``a`` alone for real values)."""
    z = complex(v)
    if z.imag == 0:
        return _fmt(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i"


def _fmt(x: float) -> str:
    return "%.17g" % x


def _jsonable(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    z = complex(v)
    if z.imag == 0:
        return z.real
    return format_scalar(z)


def _canon(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k), ensure_ascii=False))
            out.append(": ")
            _canon(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _canon(v, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if math.isfinite(obj):
            out.append(_fmt(obj))
        else:
            out.append(json.dumps("inf" if obj > 0 else ("-inf" if obj < 0 else "nan")))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    else:
        out.append(json.dumps(_jsonable(obj)))


def dumps_canonical(obj) -> str:
    """JSON with insertion-ordered keys and ``%.17g`` floats; stable under parse/re-render."""
    out = []
    _canon(obj, out)
    return "".join(out)


_P1_FIELDS = ("a1", "a2", "b1", "b2", "c", "t1", "t2", "k1", "k2")
_P2_FIELDS = ("a1", "a2", "b1", "b2", "c", "t", "k")


def _scalar(v):
    if isinstance(v, bool):
        raise ValidityError("booleans are not scalars")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        z = parse_scalar(v)
        return z.real if z.imag == 0 else z
    raise ValidityError(f"cannot read scalar {v!r}")


def _int_field(v, name):
    v = _scalar(v)
    if isinstance(v, complex) or float(v) != int(v) or int(v) < 0:
        raise ValidityError(f"{name} must be a nonnegative integer")
    return int(v)


def params_from_dict(d: dict):
    """Build :class:`Params1` or :class:`Params2` from a flag-style dictionary."""
    if not isinstance(d, dict):
        raise ValidityError("params must be an object")
    keys = set(d)
    if keys <= set(_P2_FIELDS) and ("t" in keys or "k" in keys):
        fields, cls = _P2_FIELDS, Params2
    else:
        fields, cls = _P1_FIELDS, Params1
    unknown = keys - set(fields)
    if unknown:
        raise ValidityError(f"unknown parameter(s) {sorted(unknown)}")
    missing = {"a1", "a2", "b1", "b2", "c"} - keys
    if missing:
        raise ValidityError(f"missing parameter(s) {sorted(missing)}")
    kw = {}
    for name in fields:
        if name not in d:
            continue
        kw[name] = _int_field(d[name], name) if name.startswith("k") else _scalar(d[name])
    return cls(**kw)


__all__.append("params_from_dict")


def panel_from_json(text: str) -> Panel:
    """Parse a panel document: a JSON array of ``{"params": {...}, "point": {"x": .., "y": ..}}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidityError(f"panel is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ValidityError("panel must be a JSON array")
    cases = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or set(entry) != {"params", "point"}:
            raise ValidityError(f"panel entry {i} must have exactly the keys 'params' and 'point'")
        pt = entry["point"]
        if not isinstance(pt, dict) or "x" not in pt or set(pt) - {"x", "y"}:
            raise ValidityError(f"panel entry {i}: point needs 'x' and optional 'y'")
        cases.append(Case(params_from_dict(entry["params"]), Point(_scalar(pt["x"]), _scalar(pt.get("y", 0)))))
    return Panel(cases)


def panel_to_json(panel: Panel) -> str:
    return dumps_canonical([
        {"params": {k: _jsonable(v) for k, v in c.params.as_dict().items()},
         "point": {"x": _jsonable(c.point.x), "y": _jsonable(c.point.y)}}
        for c in panel.cases
    ])

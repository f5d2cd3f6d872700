"""Integral representations of both discrete forms, checked by quadrature.

Every representation has the shape ``prefactor * integral(weight * inner)``
where ``inner`` is a discrete single series (simplex form of the first kind)
or a Kampe de Feriet series evaluated by the series engine at each node.

Half-line forms ``int_0^inf e^-u u^(e-1) inner(u) du / Gamma(e)`` use a
generalized Gauss-Laguerre rule with ``alpha = e - 1`` (complex ``e`` gives
complex nodes, at which the analytic inner function is evaluated).  The
simplex ``{u, v >= 0, u + v <= 1}`` is mapped by ``u = s(1-w), v = s w`` and
integrated with a tensor Gauss-Jacobi rule carrying the endpoint exponents.
With terminating parameters the inner functions are polynomials in the
integration variables, so both rules are exact up to rounding.
"""
from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import AppellError, DivergenceDetected, ValidityError
from .numerics import complex_gamma
from .operators import Residual, _residual
from .quadrature import gauss_jacobi, gauss_laguerre, gauss_legendre
from .series import DEFAULT_POLICY, KdFSpec, Params1, Params2, Point, TruncationPolicy, eval_1f0_disc, evaluate

__all__ = [
    "IntegralRepSpec",
    "REPS",
    "get_rep",
    "eval_integral_rep",
    "integral_vs_series",
    "RepCheck",
    "check_reps",
    "rep_violation",
    "LAGUERRE_NODES",
    "SIMPLEX_NODES",
    "TOL_INTEGRAL",
]

LAGUERRE_NODES = 64
SIMPLEX_NODES = 48
TOL_INTEGRAL = 1e-6


@dataclass(frozen=True)
class IntegralRepSpec:
    """One integral representation.

    ``domain`` is ``"simplex"`` or ``"half-line"``.  For half-line forms
    ``exponent`` names the parameter in ``u^(e-1)`` (``"-t1"`` means
    ``e = -t1``) and ``axis`` says whether ``u`` scales ``x`` or ``y``.
    """

    rep_id: str
    variant: str
    domain: str
    exponent: Optional[str] = None
    axis: Optional[str] = None
    description: str = ""

    @property
    def validity(self) -> tuple:
        if self.domain == "simplex":
            return ("Re(b1) > 0", "Re(b2) > 0", "Re(c-b1-b2) > 0")
        return (f"Re({self.exponent}) > 0",)


def _rep(rep_id, variant, domain, exponent=None, axis=None, description=""):
    return IntegralRepSpec(rep_id, variant, domain, exponent, axis, description)


REPS = (
    _rep("F1-simplex", "f3d1", "simplex", description="Dirichlet weight times two discrete 1F0 series"),
    _rep("F1-a1", "f3d1", "half-line", "a1", "x"),
    _rep("F1-a2", "f3d1", "half-line", "a2", "y"),
    _rep("F1-b1", "f3d1", "half-line", "b1", "x"),
    _rep("F1-b2", "f3d1", "half-line", "b2", "y"),
    _rep("F1-t1", "f3d1", "half-line", "-t1", "x", "needs Re(-t1) > 0"),
    _rep("F1-t2", "f3d1", "half-line", "-t2", "y", "needs Re(-t2) > 0"),
    _rep("F2-simplex", "f3d2", "simplex", description="Dirichlet weight times a Kampe de Feriet series"),
    _rep("F2-a1", "f3d2", "half-line", "a1", "x"),
    _rep("F2-a2", "f3d2", "half-line", "a2", "y"),
    _rep("F2-b1", "f3d2", "half-line", "b1", "x"),
    _rep("F2-b2", "f3d2", "half-line", "b2", "y"),
)

_BY_ID = {r.rep_id: r for r in REPS}


def get_rep(rep_id: str) -> IntegralRepSpec:
    try:
        return _BY_ID[rep_id]
    except KeyError:
        raise KeyError(f"unknown integral representation {rep_id!r}") from None


# ---------------------------------------------------------------------------
# inner functions


def _split(t, k):
    """``(-t)/k, ..., (-t+k-1)/k``: the joint list replacing ``(-t)_(m k)``."""
    return tuple((-t + i) / k for i in range(k))


def _scale(k):
    return (-k) ** k


def _complex_params(p):
    return {f: (v if f.startswith("k") else complex(v)) for f, v in p.as_dict().items()}


def _exponent_value(spec, q):
    name = spec.exponent
    return -q[name[1:]] if name.startswith("-") else q[name]


def _inner_first(spec, q, x, y):
    """Return ``inner(u)`` for a half-line form of the first kind."""
    a1, a2, b1, b2, c = (q[f] for f in ("a1", "a2", "b1", "b2", "c"))
    t1, t2, k1, k2 = q["t1"], q["t2"], q["k1"], q["k2"]
    s1, s2 = _split(t1, k1), _split(t2, k2)
    if spec.exponent == "a1":
        lists, args = ((b1,) + s1, (a2, b2) + s2), lambda u: (_scale(k1) * u * x, _scale(k2) * y)
    elif spec.exponent == "a2":
        lists, args = ((a1, b1) + s1, (b2,) + s2), lambda u: (_scale(k1) * x, _scale(k2) * u * y)
    elif spec.exponent == "b1":
        lists, args = ((a1,) + s1, (a2, b2) + s2), lambda u: (_scale(k1) * u * x, _scale(k2) * y)
    elif spec.exponent == "b2":
        lists, args = ((a1, b1) + s1, (a2,) + s2), lambda u: (_scale(k1) * x, _scale(k2) * u * y)
    elif spec.exponent == "-t1":
        lists, args = ((a1, b1), (a2, b2) + s2), lambda u: ((-u) ** k1 * x, _scale(k2) * y)
    else:
        lists, args = ((a1, b1) + s1, (a2, b2)), lambda u: (_scale(k1) * x, (-u) ** k2 * y)
    kdf = KdFSpec(A=(), B=lists[0], C=lists[1], D=(c,))
    return kdf, args


def _inner_second(spec, q, x, y):
    a1, a2, b1, b2, c = (q[f] for f in ("a1", "a2", "b1", "b2", "c"))
    joint = _split(q["t"], q["k"])
    g = _scale(q["k"])
    if spec.domain == "simplex":
        return KdFSpec(A=joint, B=(a1,), C=(a2,)), lambda u, v: (g * u * x, g * v * y)
    if spec.exponent == "a1":
        lists, on_x = ((b1,), (a2, b2)), True
    elif spec.exponent == "a2":
        lists, on_x = ((a1, b1), (b2,)), False
    elif spec.exponent == "b1":
        lists, on_x = ((a1,), (a2, b2)), True
    else:
        lists, on_x = ((a1, b1), (a2,)), False
    kdf = KdFSpec(A=joint, B=lists[0], C=lists[1], D=(c,))
    if on_x:
        return kdf, lambda u: (g * u * x, g * y)
    return kdf, lambda u: (g * x, g * u * y)


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=64)
def _laguerre(n, alpha):
    return gauss_laguerre(n, _plain(alpha))


@lru_cache(maxsize=64)
def _unit_jacobi(n, alpha, beta):
    """Rule for ``int_0^1 (1-s)^alpha s^beta f(s) ds``."""
    alpha, beta = _plain(alpha), _plain(beta)
    r = gauss_jacobi(n, alpha, beta) if (alpha or beta) else gauss_legendre(n)
    return (r.nodes + 1) / 2, r.weights * 2.0 ** (-(alpha + beta + 1))


def _plain(v):
    v = complex(v)
    return v.real if v.imag == 0 else v


def rep_violation(spec, p) -> str:
    """Empty string if ``p`` satisfies the exponent constraints of ``spec``, else the reason."""
    want = Params1 if spec.variant == "f3d1" else Params2
    if not isinstance(p, want):
        return f"{spec.rep_id} needs {want.__name__}"
    q = _complex_params(p)
    if spec.domain == "simplex":
        if not (q["b1"].real > 0 and q["b2"].real > 0 and (q["c"] - q["b1"] - q["b2"]).real > 0):
            return f"{spec.rep_id} needs Re(b1), Re(b2), Re(c-b1-b2) > 0"
        return ""
    e = _exponent_value(spec, q)
    if not e.real > 0:
        return f"{spec.rep_id} needs Re({spec.exponent}) > 0, got {e}"
    return ""


def _half_line(spec, q, pt, n, pol):
    e = _exponent_value(spec, q)
    rule = _laguerre(n, e - 1)
    if spec.variant == "f3d1":
        kdf, args = _inner_first(spec, q, complex(pt.x), complex(pt.y))
    else:
        kdf, args = _inner_second(spec, q, complex(pt.x), complex(pt.y))
    total = 0j
    for u, w in zip(rule.nodes, rule.weights):
        X, Y = args(u)
        inner = complex(evaluate("kdf", kdf, Point(X, Y), pol).value)
        total += w * inner
    return total / complex_gamma(e)


def _simplex(spec, q, pt, n, pol, kind):
    b1, b2, c = q["b1"], q["b2"], q["c"]
    gap = c - b1 - b2
    # u = s(1-w), v = s w, du dv = s ds dw
    es = (gap - 1, b1 + b2 - 1)      # (1-s), s
    ew = (b1 - 1, b2 - 1)            # (1-w), w
    if kind == "jacobi":
        ra = es + ew
    elif kind == "legendre":
        ra = (0.0, 0.0, 0.0, 0.0)
    else:
        raise ValueError(f"unknown simplex rule {kind!r}")
    s_nodes, s_weights = _unit_jacobi(n, ra[0], ra[1])
    w_nodes, w_weights = _unit_jacobi(n, ra[2], ra[3])
    s_res = (1 - s_nodes) ** (es[0] - ra[0]) * s_nodes ** (es[1] - ra[1]) * s_weights
    w_res = (1 - w_nodes) ** (ew[0] - ra[2]) * w_nodes ** (ew[1] - ra[3]) * w_weights
    x, y = complex(pt.x), complex(pt.y)
    if spec.variant == "f3d1":
        a1, a2, t1, t2, k1, k2 = (q[f] for f in ("a1", "a2", "t1", "t2", "k1", "k2"))

        def inner(u, v):
            f = eval_1f0_disc(a1, t1, k1, u * x, pol).value
            g = eval_1f0_disc(a2, t2, k2, v * y, pol).value
            return complex(f) * complex(g)
    else:
        kdf, args = _inner_second(spec, q, x, y)

        def inner(u, v):
            X, Y = args(u, v)
            return complex(evaluate("kdf", kdf, Point(X, Y), pol).value)

    total = 0j
    for s, ws in zip(s_nodes, s_res):
        row = 0j
        for w, ww in zip(w_nodes, w_res):
            row += ww * inner(s * (1 - w), s * w)
        total += ws * row
    pref = complex_gamma(c) / (complex_gamma(b1) * complex_gamma(b2) * complex_gamma(gap))
    return pref * total


def eval_integral_rep(spec, p, pt: Point, rule_size: Optional[int] = None,
                      pol: TruncationPolicy = DEFAULT_POLICY, *, simplex_rule: str = "jacobi") -> complex:
    """Quadrature value of representation ``spec`` at ``(p, pt)``.

    ``rule_size`` defaults to 64 Laguerre nodes or 48 nodes per simplex axis.
    Raises :class:`ValidityError` when the exponent constraints fail.
    """
    spec = spec if isinstance(spec, IntegralRepSpec) else get_rep(spec)
    reason = rep_violation(spec, p)
    if reason:
        raise ValidityError(reason)
    q = _complex_params(p)
    if spec.domain == "simplex":
        return _simplex(spec, q, pt, rule_size or SIMPLEX_NODES, pol, simplex_rule)
    return _half_line(spec, q, pt, rule_size or LAGUERRE_NODES, pol)


def integral_vs_series(spec, p, pt: Point, rule_size: Optional[int] = None,
                       pol: TruncationPolicy = DEFAULT_POLICY, **kw) -> Residual:
    """Residual between the quadrature value and direct series evaluation."""
    spec = spec if isinstance(spec, IntegralRepSpec) else get_rep(spec)
    series = complex(evaluate(spec.variant, p, pt, pol).value)
    return _residual(eval_integral_rep(spec, p, pt, rule_size, pol, **kw), series)


@dataclass
class RepCheck:
    """Outcome of one representation on one case.

    ``status`` is ``"pass"``, ``"fail"``, ``"invalid"`` (exponent
    constraints violated) or ``"unverifiable"`` (the series reference
    diverges, so there is nothing to compare against).
    """

    rep_id: str
    params: dict
    point: tuple
    status: str
    rel: float = math.nan
    detail: str = ""


def check_reps(cases, reps=REPS, tol: float = TOL_INTEGRAL, pol: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Run every representation of matching form over ``(params, point)`` cases."""
    out = []
    for p, pt in cases:
        for spec in reps:
            if (spec.variant == "f3d1") != isinstance(p, Params1):
                continue
            info = dict(rep_id=spec.rep_id, params=p.as_dict(), point=(pt.x, pt.y))
            reason = rep_violation(spec, p)
            if reason:
                out.append(RepCheck(status="invalid", detail=reason, **info))
                continue
            try:
                series = complex(evaluate(spec.variant, p, pt, pol).value)
            except DivergenceDetected as exc:
                out.append(RepCheck(status="unverifiable", detail=str(exc), **info))
                continue
            try:
                value = eval_integral_rep(spec, p, pt, None, pol)
            except (AppellError, ArithmeticError) as exc:
                out.append(RepCheck(status="fail", detail=f"{type(exc).__name__}: {exc}", **info))
                continue
            res = _residual(value, series)
            out.append(RepCheck(status="pass" if res.rel <= tol else "fail", rel=res.rel, **info))
    return out


def complex_t_cases() -> list:
    """Cases for the forms weighted by ``u^(-t-1)``.

    These need ``Re(-t) > 0``, so ``t`` cannot be a nonnegative integer and
    the ``t`` factor never ends the series.  A reference value exists only
    when an upper parameter on the same side is a nonpositive integer, or
    when the step ``k`` is zero.  The last two cases have neither and are
    expected to come back unverifiable.
    """
    F = Fraction
    half = F(1, 2)
    return [
        (Params1(-2, F(3, 4), F(3, 2), F(7, 5), F(7, 2), t1=complex(-1.5, 0.5), t2=3, k1=2, k2=1),
         Point(0.3, -0.3)),
        (Params1(complex(0.5, 1 / 3), F(3, 4), -1, F(7, 5), F(7, 2), t1=complex(-0.7, -0.2), t2=4, k1=1, k2=2),
         Point(0.5, complex(0.2, 0.1))),
        (Params1(half, F(3, 4), F(3, 2), F(7, 5), F(7, 2), t1=complex(-0.5, 1.0), t2=2, k1=0, k2=1),
         Point(-0.3, 0.5)),
        (Params1(F(2, 7), -1, F(5, 3), F(9, 4), F(7, 2), t1=3, t2=complex(-1.2, 0.3), k1=2, k2=2),
         Point(0.3, 0.3)),
        (Params1(half, F(3, 4), F(3, 2), F(7, 5), F(7, 2), t1=-1.5, t2=2, k1=1, k2=1), Point(0.3, -0.3)),
        (Params1(half, F(3, 4), F(3, 2), F(7, 5), F(7, 2), t1=2, t2=complex(-2.5, 0.5), k1=1, k2=2),
         Point(0.3, 0.3)),
    ]


__all__.append("complex_t_cases")

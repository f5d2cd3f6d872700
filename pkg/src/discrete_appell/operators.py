"""Operators acting on the discrete Appell series.

Two independent realisations are provided.

*Weight path.*  The operators ``theta = x d/dx``, ``phi = y d/dy`` and
``Theta_t = t rho_t Delta_t`` are diagonal on the lattice: on the term
``A[m, n] x^m y^n`` they multiply by ``m``, ``n`` and ``m k1`` (``n k2``,
``(m + n) k`` for the joint variable).  An :class:`OperatorExpr` is a product
of affine factors in these symbols; it is applied by re-weighting the
coefficients of a (possibly parameter-shifted) series.

*Shift path.*  ``Theta_t`` is evaluated from its definition by re-evaluating
the series at ``t, t - 1, ...`` and ``theta``/``phi`` by recovering the
Taylor coefficients of a terminating series from samples on a torus
(discrete Fourier transform).  This path never looks at lattice weights and
serves as an independent check of the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Mapping, Optional

import numpy as np

from .errors import ShiftPoleError, ValidityError
from .numerics import (
    binomial,
    exact,
    is_exact,
    nonnegative_integer,
    nonpositive_integer,
    pochhammer_scaled,
    rising_factorial,
)
from .series import (
    DEFAULT_POLICY,
    Evaluation,
    KdFSpec,
    Params1,
    Params2,
    Point,
    TruncationPolicy,
    evaluate,
    lattice_extent,
    series_for,
)

__all__ = [
    "OPS",
    "Lin",
    "ParamShift",
    "Repeat",
    "OperatorExpr",
    "Residual",
    "namespace",
    "weight_factors",
    "apply_operator_expr",
    "numeric_shift_apply",
    "operator_cross_check",
    "theta_eigen_check",
    "expand_monomials",
]

#: Operator symbols available in factor expressions.
OPS = ("theta", "phi", "Th1", "Th2", "Th")


class Lin:
    """Affine combination ``const + sum_op coef[op] * op`` of commuting operators."""

    __slots__ = ("const", "coef")

    def __init__(self, const=0, coef: Optional[Mapping[str, object]] = None):
        self.const = const
        self.coef = {k: v for k, v in (coef or {}).items() if not _is_zero(v)}

    @classmethod
    def op(cls, name):
        return cls(0, {name: 1})

    @staticmethod
    def _lift(other):
        return other if isinstance(other, Lin) else Lin(other)

    def __add__(self, other):
        o = self._lift(other)
        coef = dict(self.coef)
        for k, v in o.coef.items():
            coef[k] = coef[k] + v if k in coef else v
        return Lin(self.const + o.const, coef)

    __radd__ = __add__

    def __neg__(self):
        return Lin(-self.const, {k: -v for k, v in self.coef.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Lin):
            if not other.coef:
                other = other.const
            elif not self.coef:
                return other * self.const
            else:
                raise TypeError("product of two operator factors must be written as separate factors")
        return Lin(self.const * other, {k: v * other for k, v in self.coef.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Lin):
            if other.coef:
                raise TypeError("cannot divide by an operator")
            other = other.const
        return Lin(_div(self.const, other), {k: _div(v, other) for k, v in self.coef.items()})

    def is_constant(self):
        return not self.coef

    def weight(self, m, n, ks):
        """Value of the factor on the lattice term ``(m, n)``; ``ks`` maps op -> lattice multiplier."""
        w = self.const
        for k, v in self.coef.items():
            w = w + v * ks[k](m, n)
        return w

    def __repr__(self):
        parts = [repr(self.const)] + [f"{v!r}*{k}" for k, v in self.coef.items()]
        return "Lin(" + " + ".join(parts) + ")"


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / b
    return a / b


def _is_zero(v):
    try:
        return not v
    except TypeError:
        return False


# ---------------------------------------------------------------------------
# expression records


@dataclass(frozen=True)
class ParamShift:
    """Parameter offsets, argument map and target family of a shifted series.

    ``params`` maps parameter names to expressions in the base parameters
    (e.g. ``{"t1": "t1 - k1"}``); ``x``/``y`` give the evaluation point
    (e.g. ``"x/(1-z)"``).  ``variant`` selects another family; for
    ``"kdf"`` the six parameter lists are given as expression tuples.
    """

    params: tuple = ()
    x: str = "x"
    y: str = "y"
    variant: Optional[str] = None
    kdf: Optional[tuple] = None

    @classmethod
    def of(cls, params: Optional[Mapping[str, str]] = None, **kw):
        return cls(tuple(sorted((params or {}).items())), **kw)

    def is_identity(self):
        return not self.params and self.x == "x" and self.y == "y" and self.variant is None


@dataclass(frozen=True)
class Repeat:
    """Product ``prod_{var=lo}^{hi} template`` of factors."""

    template: str
    var: str
    lo: str
    hi: str


@dataclass(frozen=True)
class OperatorExpr:
    """Product of affine operator factors followed by a parameter shift.

    The factors are expressions in the base parameters and the symbols
    :data:`OPS`; they act on the series evaluated at the shifted parameters.
    A shift such as ``t1 -> t1 - k1`` realises ``rho_{t1}^{k1}``.
    """

    factors: tuple = ()
    shift: ParamShift = field(default_factory=ParamShift)
    repeat: Optional[Repeat] = None

    def is_identity(self):
        return not self.factors and self.repeat is None and self.shift.is_identity()


@dataclass(frozen=True)
class Residual:
    abs: float
    rel: float
    scale: float


def _residual(a, b) -> Residual:
    diff = abs(complex(a) - complex(b)) if not (is_exact(a) and is_exact(b)) else abs(a - b)
    scale = max(abs(complex(a)), abs(complex(b)))
    rel = diff / scale if scale > 0 else (0.0 if diff == 0 else math.inf)
    return Residual(diff, rel, scale)


# ---------------------------------------------------------------------------
# evaluation namespace


def _nonpole(v):
    return nonpositive_integer(v) is None


def _nonzero(v):
    return bool(v)


def _nonnegint(v):
    return nonnegative_integer(v) is not None


_HELPERS = {
    "poch": rising_factorial,
    "sigma": pochhammer_scaled,
    "binom": binomial,
    "fact": math.factorial,
    "nonpole": _nonpole,
    "nonzero": _nonzero,
    "nonnegint": _nonnegint,
    "abs": abs,
    "min": min,
    "max": max,
}


def namespace(p, pt: Point, env: Optional[Mapping] = None, exact_mode: bool = False) -> dict:
    """Names visible to catalog expressions for the case ``(p, pt)``."""
    conv = exact if exact_mode else complex
    ns = dict(_HELPERS)
    for name, value in p.as_dict().items():
        ns[name] = value if name.startswith("k") else conv(value)
    ns["x"] = conv(pt.x)
    ns["y"] = conv(pt.y)
    for name in OPS:
        ns[name] = Lin.op(name)
    if env:
        for name, value in env.items():
            ns[name] = value if isinstance(value, int) else conv(value)
    return ns


def _eval(expr, ns):
    return eval(expr, {"__builtins__": {}}, ns)  # noqa: S307 - catalog data only


def _wrong_form(name):
    def fail(m, n):
        raise ValidityError(f"{name} is not defined for this form")
    return fail


def _lattice_multipliers(p):
    if isinstance(p, Params1):
        k1, k2 = p.k1, p.k2
        return {
            "theta": lambda m, n: m,
            "phi": lambda m, n: n,
            "Th1": lambda m, n: m * k1,
            "Th2": lambda m, n: n * k2,
            "Th": _wrong_form("Th"),
        }
    k = p.k
    return {
        "theta": lambda m, n: m,
        "phi": lambda m, n: n,
        "Th": lambda m, n: (m + n) * k,
        "Th1": _wrong_form("Th1"),
        "Th2": _wrong_form("Th2"),
    }


def _as_int(v):
    if isinstance(v, int):
        return v
    z = complex(v)
    n = round(z.real)
    if abs(z - n) > 1e-9:
        raise ValidityError(f"expected an integer, got {v}")
    return int(n)


def weight_factors(e: OperatorExpr, ns) -> list:
    """Evaluate the factor expressions of ``e`` to :class:`Lin` objects."""
    out = [Lin._lift(_eval(f, ns)) for f in e.factors]
    if e.repeat is not None:
        lo = _as_int(_eval(e.repeat.lo, ns))
        hi = _as_int(_eval(e.repeat.hi, ns))
        for i in range(lo, hi + 1):
            local = dict(ns)
            local[e.repeat.var] = i
            out.append(Lin._lift(_eval(e.repeat.template, local)))
    return out


def _shifted(e: OperatorExpr, p, ns, default_variant):
    """Shifted parameter record, point and variant of ``e``."""
    sh = e.shift
    variant = sh.variant or default_variant
    point = Point(_eval(sh.x, ns), _eval(sh.y, ns))
    if variant == "kdf":
        lists = []
        for group in sh.kdf:
            lists.append(tuple(_eval(v, ns) for v in group))
        return KdFSpec(*lists), point, variant
    changes = {}
    for name, expr in sh.params:
        v = _eval(expr, ns)
        changes[name] = v
    q = p.replace(**{k: v for k, v in changes.items()}) if changes else p
    if variant in ("f3d1", "xi11", "xi21") and isinstance(q, Params2):
        q = Params1(q.a1, q.a2, q.b1, q.b2, q.c, q.t, q.t, q.k, q.k)
    if not _nonpole(q.c):
        raise ShiftPoleError(f"shift moves c to the pole {q.c}")
    return q, point, variant


def _default_variant(p):
    return "f3d1" if isinstance(p, Params1) else "f3d2"


def apply_operator_expr(
    e: OperatorExpr,
    p,
    pt: Point,
    pol: TruncationPolicy = DEFAULT_POLICY,
    *,
    env: Optional[Mapping] = None,
    exact_mode: bool = False,
    variant: Optional[str] = None,
    diagonals: Optional[int] = None,
) -> Evaluation:
    """Apply ``e`` through lattice weights.

    Returns ``sum_{m,n} W(m, n) A'[m, n] x'^m y'^n`` where ``A'`` is the
    coefficient at the shifted parameters and ``W`` the product of the
    factor weights (which use the unshifted parameters).
    """
    ns = namespace(p, pt, env, exact_mode)
    variant = variant or _default_variant(p)
    factors = weight_factors(e, ns)
    q, qpt, qvariant = _shifted(e, p, ns, variant)
    const = reduce(lambda a, b: a * b, [f.const for f in factors if f.is_constant()], 1)
    ops = [f for f in factors if not f.is_constant()]
    if not const:
        zero = ns["x"] * 0
        return Evaluation(zero, 0, True, True, 0.0)
    weight = None
    if ops:
        ks = _lattice_multipliers(p)

        def _weight(m, n):
            w = const
            for f in ops:
                w = w * f.weight(m, n, ks)
            return w

        weight = _weight

    ev = evaluate(qvariant, q, qpt, pol, exact_mode=exact_mode, weight=weight, diagonals=diagonals)
    if weight is None and not (isinstance(const, int) and const == 1):
        ev = Evaluation(ev.value * const, ev.terms_used, ev.terminated, ev.converged,
                        ev.est_error * abs(complex(const)), ev.diagonals)
    return ev


# ---------------------------------------------------------------------------
# shift path


_T_NAME = {"Th1": "t1", "Th2": "t2", "Th": "t"}


def numeric_shift_apply(op: str, which: str, variant: str, p, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY,
                        power: int = 1):
    """Apply ``Delta_t``, ``rho_t`` or ``Theta_t`` (``power`` times) by re-evaluating at shifted ``t``.

    ``op`` is ``"Delta"``, ``"rho"`` or ``"Theta"``; ``which`` names the
    discrete parameter (``"t1"``, ``"t2"`` or ``"t"``).  Non-terminating
    evaluations at different ``t`` share the lattice extent of the first one.
    """
    if op not in ("Delta", "rho", "Theta"):
        raise ValueError(f"unknown operator {op!r}")
    if power < 0:
        raise ValueError("power must be nonnegative")
    base_t = complex(getattr(p, which))
    memo = {}
    extent = {}

    def F(dt):
        if dt not in memo:
            q = p.replace(**{which: base_t + dt})
            ev = evaluate(variant, q, pt, pol, diagonals=extent.get("d"))
            if "d" not in extent and not ev.terminated:
                extent["d"] = ev.diagonals
            memo[dt] = ev.value
        return memo[dt]

    F(0)

    def apply(j, dt):
        if j == 0:
            return F(dt)
        if op == "Delta":
            return apply(j - 1, dt + 1) - apply(j - 1, dt)
        if op == "rho":
            return apply(j - 1, dt - 1)
        tt = base_t + dt
        if tt == 0:
            return 0j
        return tt * (apply(j - 1, dt) - apply(j - 1, dt - 1))

    return apply(power, 0)


def expand_monomials(factors) -> dict:
    """Expand a product of :class:`Lin` factors into ``{exponents: coefficient}``.

    Exponent tuples follow the order of :data:`OPS`.
    """
    poly = {(0,) * len(OPS): 1}
    for f in factors:
        terms = [((0,) * len(OPS), f.const)] + [
            (tuple(1 if o == name else 0 for o in OPS), v) for name, v in f.coef.items()
        ]
        nxt = {}
        for (e1, c1), (e2, c2) in product(poly.items(), terms):
            if _is_zero(c2):
                continue
            key = tuple(a + b for a, b in zip(e1, e2))
            nxt[key] = nxt[key] + c1 * c2 if key in nxt else c1 * c2
        poly = nxt
    return poly


class _TorusCoefficients:
    """Taylor coefficients of a terminating series recovered by a 2-D DFT."""

    def __init__(self, variant, pol):
        self.variant = variant
        self.pol = pol
        self.cache = {}

    def coefficients(self, q, X, Y):
        key = (repr(q), X, Y)
        if key in self.cache:
            return self.cache[key]
        ext = lattice_extent(series_for(self.variant, q), X, Y)
        if ext is None:
            raise ValidityError("the shift path needs a terminating series")
        nm, nn = ext[0] + 1, ext[1] + 1
        wm = np.exp(2j * np.pi * np.arange(nm) / nm)
        wn = np.exp(2j * np.pi * np.arange(nn) / nn)
        G = np.empty((nm, nn), dtype=complex)
        for a in range(nm):
            for b in range(nn):
                G[a, b] = evaluate(self.variant, q, Point(X * wm[a], Y * wn[b]), self.pol).value
        g = np.fft.fft2(G) / (nm * nn)
        self.cache[key] = g
        return g

    def theta_phi(self, q, X, Y, pe, qe):
        g = self.coefficients(q, X, Y)
        m = np.arange(g.shape[0])[:, None].astype(float)
        n = np.arange(g.shape[1])[None, :].astype(float)
        return complex(np.sum(g * m ** pe * n ** qe))


def _shift_path_value(e: OperatorExpr, p, pt: Point, pol, env, variant) -> tuple:
    ns = namespace(p, pt, env)
    factors = weight_factors(e, ns)
    q, qpt, qvariant = _shifted(e, p, ns, variant)
    if qvariant == "kdf":
        if any(not f.is_constant() for f in factors):
            raise ValidityError("operators on Kampe de Feriet targets are not supported")
    poly = expand_monomials(factors)
    torus = _TorusCoefficients(qvariant, pol)
    X, Y = complex(qpt.x), complex(qpt.y)
    if qvariant == "kdf":
        t_fields = []
    else:
        t_fields = ["t1", "t2"] if isinstance(q, Params1) else ["t"]
    memo = {}

    def inner(tvals, pe, qe):
        key = (tvals, pe, qe)
        if key not in memo:
            qq = q.replace(**dict(zip(t_fields, tvals))) if tvals else q
            if pe == 0 and qe == 0:
                memo[key] = complex(evaluate(qvariant, qq, Point(X, Y), pol).value)
            else:
                memo[key] = torus.theta_phi(qq, X, Y, pe, qe)
        return memo[key]

    def theta_chain(exps, tvals, pe, qe):
        # exps: remaining Theta powers per discrete parameter (aligned with t_fields)
        for i, e_i in enumerate(exps):
            if e_i:
                t = tvals[i]
                if t == 0:
                    return 0j
                lower = list(exps)
                lower[i] -= 1
                down = list(tvals)
                down[i] = t - 1
                return t * (theta_chain(tuple(lower), tvals, pe, qe) - theta_chain(tuple(lower), tuple(down), pe, qe))
        return inner(tvals, pe, qe)

    base_t = tuple(complex(getattr(q, f)) for f in t_fields)
    total = 0j
    magnitude = 0.0
    for exps, coeff in poly.items():
        pe, qe, u1, u2, w = exps
        if not t_fields:
            th = ()
        elif isinstance(q, Params1):
            if w:
                raise ValidityError("Th needs the second form")
            th = (u1, u2)
        else:
            if u1 or u2:
                raise ValidityError("Th1/Th2 need the first form")
            th = (w,)
        part = complex(coeff) * theta_chain(th, base_t, pe, qe)
        total += part
        magnitude += abs(part)
    return total, magnitude


def operator_cross_check(e: OperatorExpr, p, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *,
                         env: Optional[Mapping] = None, variant: Optional[str] = None) -> Residual:
    """Compare the weight path with the shift path for ``e`` at ``(p, pt)``.

    The shift path needs a terminating series at every parameter value it
    visits.  It expands the weight polynomial into monomials, so ``rel`` is
    measured against the summed magnitude of those contributions: that is
    the scale of its rounding when they cancel.
    """
    variant = variant or _default_variant(p)
    w = complex(apply_operator_expr(e, p, pt, pol, env=env, variant=variant).value)
    s, magnitude = _shift_path_value(e, p, pt, pol, env, variant)
    diff = abs(w - s)
    scale = max(abs(w), abs(s), magnitude)
    rel = diff / scale if scale > 0 else (0.0 if diff == 0 else math.inf)
    return Residual(diff, rel, scale)


def theta_eigen_check(p, m: int, n: int, which: str = "t1") -> bool:
    """Check ``Theta_t A[m, n] = (lattice weight) * A[m, n]`` exactly.

    ``A`` is the full lattice coefficient in exact arithmetic, and
    ``Theta_t`` is evaluated from its definition ``t (A(t) - A(t - 1))``.
    """
    from .series import term_f3_disc1, term_f3_disc2

    fields = p.as_dict()
    ex = {k: (v if k.startswith("k") else exact(v)) for k, v in fields.items()}
    q = type(p)(**ex)
    term = term_f3_disc1 if isinstance(q, Params1) else term_f3_disc2
    t = getattr(q, which)
    here = term(q, m, n)
    there = term(q.replace(**{which: t - 1}), m, n)
    lhs = t * (here - there)
    if which == "t1":
        w = m * q.k1
    elif which == "t2":
        w = n * q.k2
    else:
        w = (m + n) * q.k
    return lhs == here * w

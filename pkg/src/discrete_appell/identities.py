"""Identity records for both discrete forms.

Each identity is ``sum(lhs) == sum(rhs)`` where every term is a scalar
coefficient times an operator expression acting on a (shifted) series.
Coefficients, factors and shifts are small Python expressions evaluated in
:func:`discrete_appell.operators.namespace`.

The contiguous-relation tables below list ``(left_factors, left_shift,
right_factors, right_shift)`` for relations of the form
``prod(left) F(left_shift) - prod(right) F(right_shift) = 0``.
"""
from __future__ import annotations

import re

from .catalog import Identity, Term, TOL_INFINITE, TOL_REDUCTION
from .operators import OperatorExpr, ParamShift, Repeat

__all__ = ["IDENTITIES"]

# ---------------------------------------------------------------------------
# contiguous-relation tables

DR1 = (
    (('a1', 'a1-1'), 'a1+1', ('a1+theta', 'a1+theta-1'), 'a1-1'),
    (('a1', 'b1-1'), 'a1+1', ('a1+theta', 'b1+theta-1'), 'b1-1'),
    (('a1', 'b2-1'), 'a1+1', ('a1+theta', 'b2+phi-1'), 'b2-1'),
    (('a1', 'c'), 'a1+1', ('a1+theta', 'c+theta+phi'), 'c+1'),
    (('a1', 'b1+theta'), 'a1+1', ('b1', 'a1+theta'), 'b1+1'),
    (('a1', 'b2+phi'), 'a1+1', ('b2', 'a1+theta'), 'b2+1'),
    (('a1', 'c+theta+phi-1'), 'a1+1', ('c-1', 'a1+theta'), 'c-1'),
    (('a1', 'a2+phi'), 'a1+1', ('a2', 'a1+theta'), 'a2+1'),
    (('a1', 'a2-1'), 'a1+1', ('a1+theta', 'a2+phi-1'), 'a2-1'),
    (('a1+theta-1', 'a2+phi'), 'a1-1', ('a2', 'a1-1'), 'a2+1'),
    (('a2-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'a2+phi-1'), 'a2-1'),
    (('a2', 'a2-1'), 'a2+1', ('a2+phi', 'a2+phi-1'), 'a2-1'),
    (('a2', 'b1-1'), 'a2+1', ('a2+phi', 'b1+theta-1'), 'b1-1'),
    (('a2', 'b2-1'), 'a2+1', ('a2+phi', 'b2+phi-1'), 'b2-1'),
    (('a2', 'c'), 'a2+1', ('a2+phi', 'c+theta+phi'), 'c+1'),
    (('a2', 'b1+theta'), 'a2+1', ('b1', 'a2+phi'), 'b1+1'),
    (('a2', 'b2+phi'), 'a2+1', ('b2', 'a2+phi'), 'b2+1'),
    (('a2', 'c+theta+phi-1'), 'a2+1', ('c-1', 'a2+phi'), 'c-1'),
    (('a1+theta-1', 'b1+theta'), 'a1-1', ('b1', 'a1-1'), 'b1+1'),
    (('a1+theta-1', 'b2+phi'), 'a1-1', ('b2', 'a1-1'), 'b2+1'),
    (('a1+theta-1', 'c+theta+phi-1'), 'a1-1', ('c-1', 'a1-1'), 'c-1'),
    (('b1-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'b1+theta-1'), 'b1-1'),
    (('b2-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'b2+phi-1'), 'b2-1'),
    (('c', 'a1+theta-1'), 'a1-1', ('a1-1', 'c+theta+phi'), 'c+1'),
    (('a2+phi-1', 'b1+theta'), 'a2-1', ('b1', 'a2-1'), 'b1+1'),
    (('a2+phi-1', 'b2+phi'), 'a2-1', ('b2', 'a2-1'), 'b2+1'),
    (('a2+phi-1', 'c+theta+phi-1'), 'a2-1', ('c-1', 'a2-1'), 'c-1'),
    (('b1-1', 'a2+phi-1'), 'a2-1', ('a2-1', 'b1+theta-1'), 'b1-1'),
    (('b2-1', 'a2+phi-1'), 'a2-1', ('a2-1', 'b2+phi-1'), 'b2-1'),
    (('c', 'a2+phi-1'), 'a2-1', ('a2-1', 'c+theta+phi'), 'c+1'),
    (('b1', 'b1-1'), 'b1+1', ('b1+theta', 'b1+theta-1'), 'b1-1'),
    (('b1', 'b2+phi'), 'b1+1', ('b2', 'b1+theta'), 'b2+1'),
    (('b1', 'b2-1'), 'b1+1', ('b1+theta', 'b2+phi-1'), 'b2-1'),
    (('b1', 'c+theta+phi-1'), 'b1+1', ('c-1', 'b1+theta'), 'c-1'),
    (('b1', 'c'), 'b1+1', ('c+theta+phi', 'b1+theta'), 'c+1'),
    (('b2', 'b1-1'), 'b2+1', ('b2+phi', 'b1+theta-1'), 'b1-1'),
    (('b2', 'b2-1'), 'b2+1', ('b2+phi', 'b2+phi-1'), 'b2-1'),
    (('b2', 'c+theta+phi-1'), 'b2+1', ('c-1', 'b2+phi'), 'c-1'),
    (('b2', 'c'), 'b2+1', ('c+theta+phi', 'b2+phi'), 'c+1'),
    (('b2-1', 'b1+theta-1'), 'b1-1', ('b1-1', 'b2+phi-1'), 'b2-1'),
    (('b1+theta-1', 'c+theta+phi-1'), 'b1-1', ('c-1', 'b1-1'), 'c-1'),
    (('c', 'b1+theta-1'), 'b1-1', ('b1-1', 'c+theta+phi'), 'c+1'),
    (('b2+phi-1', 'c+theta+phi-1'), 'b2-1', ('c-1', 'b2-1'), 'c-1'),
    (('c', 'b2+phi-1'), 'b2-1', ('b2-1', 'c+theta+phi'), 'c+1'),
    (('c', 'c-1'), 'c-1', ('c+theta+phi-1', 'c+theta+phi'), 'c+1'),
)


QR1 = (
    (('a1', 'a1-1'), 'a1+1', ('a1+Th1/k1', 'a1+Th1/k1-1'), 'a1-1'),
    (('a1', 'b1-1'), 'a1+1', ('a1+Th1/k1', 'b1+Th1/k1-1'), 'b1-1'),
    (('a1', 'b2-1'), 'a1+1', ('a1+Th1/k1', 'b2+Th2/k2-1'), 'b2-1'),
    (('a1', 'c'), 'a1+1', ('a1+Th1/k1', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('a1', 'b1+Th1/k1'), 'a1+1', ('b1', 'a1+Th1/k1'), 'b1+1'),
    (('a1', 'b2+Th2/k2'), 'a1+1', ('b2', 'a1+Th1/k1'), 'b2+1'),
    (('a1', 'c+Th1/k1+Th2/k2-1'), 'a1+1', ('c-1', 'a1+Th1/k1'), 'c-1'),
    (('a1+Th1/k1-1', 'b1+Th1/k1'), 'a1-1', ('b1', 'a1-1'), 'b1+1'),
    (('a1+Th1/k1-1', 'b2+Th2/k2'), 'a1-1', ('b2', 'a1-1'), 'b2+1'),
    (('a1+Th1/k1-1', 'c+Th1/k1+Th2/k2-1'), 'a1-1', ('c-1', 'a1-1'), 'c-1'),
    (('b1-1', 'a1+Th1/k1-1'), 'a1-1', ('a1-1', 'b1+Th1/k1-1'), 'b1-1'),
    (('b2-1', 'a1+Th1/k1-1'), 'a1-1', ('a1-1', 'b2+Th2/k2-1'), 'b2-1'),
    (('c', 'a1+Th1/k1-1'), 'a1-1', ('a1-1', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('a1', 'a2+Th2/k2'), 'a1+1', ('a2', 'a1+Th1/k1'), 'a2+1'),
    (('a1', 'a2-1'), 'a1+1', ('a1+Th1/k1', 'a2+Th2/k2-1'), 'a2-1'),
    (('a1+Th1/k1-1', 'a2+Th2/k2'), 'a1-1', ('a2', 'a1-1'), 'a2+1'),
    (('a2-1', 'a1+Th1/k1-1'), 'a1-1', ('a1-1', 'a2+Th2/k2-1'), 'a2-1'),
    (('a2', 'a2-1'), 'a2+1', ('a2+Th2/k2', 'a2+Th2/k2-1'), 'a2-1'),
    (('a2', 'b1-1'), 'a2+1', ('a2+Th2/k2', 'b1+Th1/k1-1'), 'b1-1'),
    (('a2', 'b2-1'), 'a2+1', ('a2+Th2/k2', 'b2+Th2/k2-1'), 'b2-1'),
    (('a2', 'c'), 'a2+1', ('a2+Th2/k2', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('a2', 'b1+Th1/k1'), 'a2+1', ('b1', 'a2+Th2/k2'), 'b1+1'),
    (('a2', 'b2+Th2/k2'), 'a2+1', ('b2', 'a2+Th2/k2'), 'b2+1'),
    (('a2', 'c+Th1/k1+Th2/k2-1'), 'a2+1', ('c-1', 'a2+Th2/k2'), 'c-1'),
    (('a2+Th2/k2-1', 'b1+Th1/k1'), 'a2-1', ('b1', 'a2-1'), 'b1+1'),
    (('a2+Th2/k2-1', 'b2+Th2/k2'), 'a2-1', ('b2', 'a2-1'), 'b2+1'),
    (('a2+Th2/k2-1', 'c+Th1/k1+Th2/k2-1'), 'a2-1', ('c-1', 'a2-1'), 'c-1'),
    (('b1-1', 'a2+Th2/k2-1'), 'a2-1', ('a2-1', 'b1+Th1/k1-1'), 'b1-1'),
    (('b2-1', 'a2+Th2/k2-1'), 'a2-1', ('a2-1', 'b2+Th2/k2-1'), 'b2-1'),
    (('c', 'a2+Th2/k2-1'), 'a2-1', ('a2-1', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('b1', 'b1-1'), 'b1+1', ('b1+Th1/k1', 'b1+Th1/k1-1'), 'b1-1'),
    (('b1', 'b2+Th2/k2'), 'b1+1', ('b2', 'b1+Th1/k1'), 'b2+1'),
    (('b1', 'b2-1'), 'b1+1', ('b1+Th1/k1', 'b2+Th2/k2-1'), 'b2-1'),
    (('b1', 'c+Th1/k1+Th2/k2-1'), 'b1+1', ('c-1', 'b1+Th1/k1'), 'c-1'),
    (('b1', 'c'), 'b1+1', ('c+Th1/k1+Th2/k2', 'b1+Th1/k1'), 'c+1'),
    (('b2', 'b1-1'), 'b2+1', ('b2+Th2/k2', 'b1+Th1/k1-1'), 'b1-1'),
    (('b2', 'b2-1'), 'b2+1', ('b2+Th2/k2', 'b2+Th2/k2-1'), 'b2-1'),
    (('b2', 'c+Th1/k1+Th2/k2-1'), 'b2+1', ('c-1', 'b2+Th2/k2'), 'c-1'),
    (('b2', 'c'), 'b2+1', ('c+Th1/k1+Th2/k2', 'b2+Th2/k2'), 'c+1'),
    (('b2-1', 'b1+Th1/k1-1'), 'b1-1', ('b1-1', 'b2+Th2/k2-1'), 'b2-1'),
    (('b1+Th1/k1-1', 'c+Th1/k1+Th2/k2-1'), 'b1-1', ('c-1', 'b1-1'), 'c-1'),
    (('c', 'b1+Th1/k1-1'), 'b1-1', ('b1-1', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('b2+Th2/k2-1', 'c+Th1/k1+Th2/k2-1'), 'b2-1', ('c-1', 'b2-1'), 'c-1'),
    (('c', 'b2+Th2/k2-1'), 'b2-1', ('b2-1', 'c+Th1/k1+Th2/k2'), 'c+1'),
    (('c', 'c-1'), 'c-1', ('c+Th1/k1+Th2/k2-1', 'c+Th1/k1+Th2/k2'), 'c+1'),
)


DR2 = (
    (('a1', 'a1-1'), 'a1+1', ('a1+theta', 'a1+theta-1'), 'a1-1'),
    (('a1', 'b1-1'), 'a1+1', ('a1+theta', 'b1+theta-1'), 'b1-1'),
    (('a1', 'b2-1'), 'a1+1', ('a1+theta', 'b2+phi-1'), 'b2-1'),
    (('a1', 'c'), 'a1+1', ('a1+theta', 'c+theta+phi'), 'c+1'),
    (('a1', 'b1+theta'), 'a1+1', ('b1', 'a1+theta'), 'b1+1'),
    (('a1', 'b2+phi'), 'a1+1', ('b2', 'a1+theta'), 'b2+1'),
    (('a1', 'c+theta+phi-1'), 'a1+1', ('c-1', 'a1+theta'), 'c-1'),
    (('a1', 'a2+phi'), 'a1+1', ('a2', 'a1+theta'), 'a2+1'),
    (('a1', 'a2-1'), 'a1+1', ('a1+theta', 'a2+phi-1'), 'a2-1'),
    (('a1+theta-1', 'a2+phi'), 'a1-1', ('a2', 'a1-1'), 'a2+1'),
    (('a2-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'a2+phi-1'), 'a2-1'),
    (('a2', 'a2-1'), 'a2+1', ('a2+phi', 'a2+phi-1'), 'a2-1'),
    (('a2', 'b1-1'), 'a2+1', ('a2+phi', 'b1+theta-1'), 'b1-1'),
    (('a2', 'b2-1'), 'a2+1', ('a2+phi', 'b2+phi-1'), 'b2-1'),
    (('a2', 'c'), 'a2+1', ('a2+phi', 'c+theta+phi'), 'c+1'),
    (('a2', 'b1+theta'), 'a2+1', ('b1', 'a2+phi'), 'b1+1'),
    (('a2', 'b2+phi'), 'a2+1', ('b2', 'a2+phi'), 'b2+1'),
    (('a2', 'c+theta+phi-1'), 'a2+1', ('c-1', 'a2+phi'), 'c-1'),
    (('a1+theta-1', 'b1+theta'), 'a1-1', ('b1', 'a1-1'), 'b1+1'),
    (('a1+theta-1', 'b2+phi'), 'a1-1', ('b2', 'a1-1'), 'b2+1'),
    (('a1+theta-1', 'c+theta+phi-1'), 'a1-1', ('c-1', 'a1-1'), 'c-1'),
    (('b1-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'b1+theta-1'), 'b1-1'),
    (('b2-1', 'a1+theta-1'), 'a1-1', ('a1-1', 'b2+phi-1'), 'b2-1'),
    (('c', 'a1+theta-1'), 'a1-1', ('a1-1', 'c+theta+phi'), 'c+1'),
    (('a2+phi-1', 'b1+theta'), 'a2-1', ('b1', 'a2-1'), 'b1+1'),
    (('a2+phi-1', 'b2+phi'), 'a2-1', ('b2', 'a2-1'), 'b2+1'),
    (('a2+phi-1', 'c+theta+phi-1'), 'a2-1', ('c-1', 'a2-1'), 'c-1'),
    (('b1-1', 'a2+phi-1'), 'a2-1', ('a2-1', 'b1+theta-1'), 'b1-1'),
    (('b2-1', 'a2+phi-1'), 'a2-1', ('a2-1', 'b2+phi-1'), 'b2-1'),
    (('c', 'a2+phi-1'), 'a2-1', ('a2-1', 'c+theta+phi'), 'c+1'),
    (('b1', 'b1-1'), 'b1+1', ('b1+theta', 'b1+theta-1'), 'b1-1'),
    (('b1', 'b2+phi'), 'b1+1', ('b2', 'b1+theta'), 'b2+1'),
    (('b1', 'b2-1'), 'b1+1', ('b1+theta', 'b2+phi-1'), 'b2-1'),
    (('b1', 'c+theta+phi-1'), 'b1+1', ('c-1', 'b1+theta'), 'c-1'),
    (('b1', 'c'), 'b1+1', ('c+theta+phi', 'b1+theta'), 'c+1'),
    (('b2', 'b1-1'), 'b2+1', ('b2+phi', 'b1+theta-1'), 'b1-1'),
    (('b2', 'b2-1'), 'b2+1', ('b2+phi', 'b2+phi-1'), 'b2-1'),
    (('b2', 'c+theta+phi-1'), 'b2+1', ('c-1', 'b2+phi'), 'c-1'),
    (('b2', 'c'), 'b2+1', ('c+theta+phi', 'b2+phi'), 'c+1'),
    (('b2-1', 'b1+theta-1'), 'b1-1', ('b1-1', 'b2+phi-1'), 'b2-1'),
    (('b1+theta-1', 'c+theta+phi-1'), 'b1-1', ('c-1', 'b1-1'), 'c-1'),
    (('c', 'b1+theta-1'), 'b1-1', ('b1-1', 'c+theta+phi'), 'c+1'),
    (('b2+phi-1', 'c+theta+phi-1'), 'b2-1', ('c-1', 'b2-1'), 'c-1'),
    (('c', 'b2+phi-1'), 'b2-1', ('b2-1', 'c+theta+phi'), 'c+1'),
    (('c', 'c-1'), 'c-1', ('c+theta+phi-1', 'c+theta+phi'), 'c+1'),
)


QR2 = (
    (('a1', 'c'), 'a1+1', ('a1+theta', 'c+Th/k'), 'c+1'),
    (('a1', 'c+Th/k-1'), 'a1+1', ('c-1', 'a1+theta'), 'c-1'),
    (('a1+theta-1', 'c+Th/k-1'), 'a1-1', ('c-1', 'a1-1'), 'c-1'),
    (('c', 'a1+theta-1'), 'a1-1', ('a1-1', 'c+Th/k'), 'c+1'),
    (('a2', 'c'), 'a2+1', ('a2+phi', 'c+Th/k'), 'c+1'),
    (('a2', 'c+Th/k-1'), 'a2+1', ('c-1', 'a2+phi'), 'c-1'),
    (('a2+phi-1', 'c+Th/k-1'), 'a2-1', ('c-1', 'a2-1'), 'c-1'),
    (('c', 'a2+phi-1'), 'a2-1', ('a2-1', 'c+Th/k'), 'c+1'),
    (('b1', 'c+Th/k-1'), 'b1+1', ('c-1', 'b1+theta'), 'c-1'),
    (('b1', 'c'), 'b1+1', ('c+Th/k', 'b1+theta'), 'c+1'),
    (('b2', 'c+Th/k-1'), 'b2+1', ('c-1', 'b2+phi'), 'c-1'),
    (('b2', 'c'), 'b2+1', ('c+Th/k', 'b2+phi'), 'c+1'),
    (('b1+theta-1', 'c+Th/k-1'), 'b1-1', ('c-1', 'b1-1'), 'c-1'),
    (('c', 'b1+theta-1'), 'b1-1', ('b1-1', 'c+Th/k'), 'c+1'),
    (('b2+phi-1', 'c+Th/k-1'), 'b2-1', ('c-1', 'b2-1'), 'c-1'),
    (('c', 'b2+phi-1'), 'b2-1', ('b2-1', 'c+Th/k'), 'c+1'),
    (('c', 'c-1'), 'c-1', ('c+Th/k-1', 'c+Th/k'), 'c+1'),
)


# ---------------------------------------------------------------------------
# builders


def _shift_of(text: str) -> dict:
    """``"a1+1"`` -> ``{"a1": "a1+1"}``."""
    name = re.match(r"[a-z]+\d?", text).group(0)
    return {name: text}


def _F(shift=None, factors=(), coef="1", x="x", y="y", variant=None, kdf=None, repeat=None, index=None):
    op = OperatorExpr(tuple(factors), ParamShift.of(shift, x=x, y=y, variant=variant, kdf=kdf), repeat)
    return Term(coef, op, index)


def _render_term(t: Term) -> str:
    parts = []
    if t.coef != "1":
        parts.append(t.coef)
    parts += [f"({f})" for f in t.op.factors]
    if t.op.repeat is not None:
        rp = t.op.repeat
        parts.append(f"prod[{rp.var}={rp.lo}..{rp.hi}]({rp.template})")
    sh = t.op.shift
    args = [f"{k}->{v}" for k, v in sh.params]
    if sh.x != "x":
        args.append(f"x->{sh.x}")
    if sh.y != "y":
        args.append(f"y->{sh.y}")
    name = sh.variant or "F"
    if sh.kdf is not None:
        args = ["; ".join(",".join(g) for g in sh.kdf)] + args[len(sh.params):]
    parts.append(f"{name}({', '.join(args)})" if args else name)
    body = " * ".join(parts)
    if t.index is not None:
        var, lo, hi = t.index
        body = f"sum[{var}={lo}..{hi}] {body}"
    return body


def _render(lhs, rhs) -> str:
    return " + ".join(_render_term(t) for t in lhs) + " = " + " + ".join(_render_term(t) for t in rhs)


_REGISTRY = []


def _add(id, group, family, lhs, rhs, **kw):
    ident = Identity(id=id, group=group, family=family, lhs=tuple(lhs), rhs=tuple(rhs),
                     formula=kw.pop("formula", None) or _render(lhs, rhs), **kw)
    _REGISTRY.append(ident)


ORDERS = ("r", (1, 2, 3))
STEPS = ("s", (1, 2, 3))
Z_VALUES = ("z", (0.4, -0.5, 0.3 + 0.3j))
IS_TERMS = "59"


# ---------------------------------------------------------------------------
# families: per-direction names used to generate both forms


def _dirs(form):
    """Names for the x and y directions of ``form`` (1: separate t's, 2: joint t)."""
    if form == 1:
        return (
            dict(v="x", op="theta", a="a1", b="b1", t="t1", k="k1", T="Th1"),
            dict(v="y", op="phi", a="a2", b="b2", t="t2", k="k2", T="Th2"),
        )
    return (
        dict(v="x", op="theta", a="a1", b="b1", t="t", k="k", T="Th"),
        dict(v="y", op="phi", a="a2", b="b2", t="t", k="k", T="Th"),
    )


def _difference_equations(form, fam):
    group = f"DE{form}"
    for i, d in enumerate(_dirs(form), 1):
        if form == 1:
            lhs = [_F(factors=(d["T"], "Th1/k1+Th2/k2+c-1"))]
            rhs = [_F({d["t"]: f"{d['t']}-{d['k']}"}, (f"{d['T']}/{d['k']}+{d['a']}", f"{d['T']}/{d['k']}+{d['b']}"),
                      coef=f"{d['k']}*sigma({d['t']},{d['k']},1)*{d['v']}")]
            validity = ("k1>=1", "k2>=1")
        else:
            lhs = [_F(factors=(d["op"], "Th/k+c-1"))]
            rhs = [_F({"t": "t-k"}, (f"{d['a']}+{d['op']}", f"{d['b']}+{d['op']}"),
                      coef=f"sigma(t,k,1)*{d['v']}")]
            validity = ("k>=1",)
        _add(f"{group}-{i}", group, fam, lhs, rhs, validity=validity)


def _falling_power(form, fam, group, start):
    """``theta^r`` and ``phi^r`` formulas; the operator is the falling power of theta."""
    for i, d in enumerate(_dirs(form)):
        t, k, a, b, v = d["t"], d["k"], d["a"], d["b"], d["v"]
        lhs = [_F(repeat=Repeat(f"{d['op']}-i", "i", "0", "r-1"))]
        rhs = [_F({a: f"{a}+r", b: f"{b}+r", "c": "c+r", t: f"{t}-r*{k}"},
                  coef=f"poch({a},r)*poch({b},r)*sigma({t},{k},r)*{v}**r/poch(c,r)")]
        printed_lhs = [_F(repeat=Repeat(d["op"], "i", "0", "r-1"))]
        _add(f"{group}-{start + i}", group, fam, lhs, rhs, sweep=(ORDERS,),
             printed=(tuple(printed_lhs), None),
             note=f"The plain power {d['op']}^r is correct only for r = 1; "
                  f"the falling power {d['op']}({d['op']}-1)...({d['op']}-r+1) is used.")


def _delta_formulas(fam):
    for i, d in enumerate(_dirs(1), 1):
        t, k, a, b, v = d["t"], d["k"], d["a"], d["b"], d["v"]
        lhs = [_F({t: f"{t}+j"}, coef="binom(r,j)*(-1)**(r-j)", index=("j", "0", "r"))]
        rhs = [_F({a: f"{a}+r", b: f"{b}+r", "c": "c+r"}, coef=f"poch({a},r)*poch({b},r)*{v}**r/poch(c,r)")]
        _add(f"DF1-{i}", "DF1", fam, lhs, rhs, validity=(f"{k}==1",), sweep=(ORDERS,),
             formula=f"Delta_{t}^r F = (sum[j=0..r] binom(r,j)(-1)^(r-j) F({t}->{t}+j)) = "
                     f"poch({a},r) poch({b},r) {v}^r/poch(c,r) F({a}->{a}+r, {b}->{b}+r, c->c+r)")


def _prefactor_derivatives(form, fam, group, start):
    """``d^r [v^(p+r-1) F] = v^(p-1) (p)_r F(p+r)`` in lattice form, and the two ``c`` formulas."""
    n = start
    (dx, dy) = _dirs(form)
    for d, name in ((dx, "b"), (dy, "b"), (dx, "a"), (dy, "a")):
        par = d[name]
        lhs = [_F(repeat=Repeat(f"{d['op']}+{par}+i", "i", "0", "r-1"))]
        rhs = [_F({par: f"{par}+r"}, coef=f"poch({par},r)")]
        _add(f"{group}-{n}", group, fam, lhs, rhs, sweep=(ORDERS,),
             formula=f"d{d['v']}^r[{d['v']}^({par}+r-1) F] = {d['v']}^({par}-1) poch({par},r) F({par}->{par}+r)")
        n += 1
    for v, xmap, ymap in (("x", "x", "x*y"), ("y", "x*y", "y")):
        lhs = [_F(repeat=Repeat("theta+phi+c-i", "i", "1", "r"), x=xmap, y=ymap)]
        rhs = [_F({"c": "c-r"}, coef="(-1)**r*poch(1-c,r)", x=xmap, y=ymap)]
        note = ""
        if form == 1 and v == "x":
            note = "Parameter list written with three upper slots; all four upper parameters are carried unchanged."
        _add(f"{group}-{n}", group, fam, lhs, rhs, sweep=(ORDERS,), validity=("nonpole(c-r)",), note=note,
             formula=f"d{v}^r[{v}^(c-1) F({xmap}, {ymap})] = (-1)^r poch(1-c,r) {v}^(c-r-1) F(c->c-r; {xmap}, {ymap})")
        n += 1


def _finite_sums(form, fam):
    group = f"FS{form}"
    for i, d in enumerate(_dirs(form), 1):
        t, k, a, b, v = d["t"], d["k"], d["a"], d["b"], d["v"]
        lhs = [_F({b: f"{b}+r"})]
        rhs = [_F({a: f"{a}+s", b: f"{b}+s", "c": "c+s", t: f"{t}-s*{k}"},
                  coef=f"binom(r,s)*poch({a},s)*sigma({t},{k},s)*{v}**s/poch(c,s)", index=("s", "0", "r"))]
        _add(f"{group}-{i}", group, fam, lhs, rhs, sweep=(ORDERS,))


def _infinite_sum(form, fam):
    group = f"IS{form}"
    lhs = [_F({"a1": "a1+r"}, coef="poch(a1,r)*z**r/fact(r)", index=("r", "0", IS_TERMS))]
    rhs = [_F(coef="(1-z)**(-a1)", x="x/(1-z)")]
    note = "r-sum truncated after 60 terms; |z| <= 0.5."
    if form == 1:
        note += " The single step written k stands for the pair k1, k2."
    _add(f"{group}-1", group, fam, lhs, rhs, sweep=(Z_VALUES,), tol=TOL_INFINITE, exact_ok=False, note=note)


def _recursions(form, fam):
    group = f"RC{form}"
    dx, dy = _dirs(form)
    n = 1
    for d, up, other in ((dx, "a", "b"), (dy, "a", "b")):
        t, k, v = d["t"], d["k"], d["v"]
        par, oth = d[up], d[other]
        shift_common = {oth: f"{oth}+1", "c": "c+1", t: f"{t}-{k}"}
        _add(f"{group}-{n}", group, fam, [_F({par: f"{par}+s"})],
             [_F(), _F(dict(shift_common, **{par: f"{par}+r"}), coef=f"sigma({t},{k},1)*{oth}*{v}/c",
                       index=("r", "1", "s"))], sweep=(STEPS,))
        _add(f"{group}-{n + 1}", group, fam, [_F({par: f"{par}-s"})],
             [_F(), _F(dict(shift_common, **{par: f"{par}-r"}), coef=f"-sigma({t},{k},1)*{oth}*{v}/c",
                       index=("r", "0", "s-1"))], sweep=(STEPS,))
        n += 2
    t, k = dx["t"], dx["k"]
    common = {"a1": "a1+1", "c": "c+1", t: f"{t}-{k}"}
    _add(f"{group}-5", group, fam, [_F({"b1": "b1+s"})],
         [_F(), _F(dict(common, b1="b1+r"), coef=f"sigma({t},{k},1)*a1*x/c", index=("r", "1", "s"))],
         sweep=(STEPS,), note="Prefactor written with a where a1 is meant.")
    _add(f"{group}-6", group, fam, [_F({"b1": "b1-s"})],
         [_F(), _F(dict(common, b1="b1-r"), coef=f"-sigma({t},{k},1)*a1*x/c", index=("r", "0", "s-1"))],
         sweep=(STEPS,), note="Shifted function written without the a2 slot; a2 is carried unchanged.")
    ty, ky = dy["t"], dy["k"]
    _add(f"{group}-7", group, fam, [_F({"c": "c-s"})],
         [_F(),
          _F({"a1": "a1+1", "b1": "b1+1", "c": "c+2-r", t: f"{t}-{k}"},
             coef=f"sigma({t},{k},1)*a1*b1*x/((c-r)*(c-r+1))", index=("r", "1", "s")),
          _F({"a2": "a2+1", "b2": "b2+1", "c": "c+2-r", ty: f"{ty}-{ky}"},
             coef=f"sigma({ty},{ky},1)*a2*b2*y/((c-r)*(c-r+1))", index=("r", "1", "s"))],
         sweep=(STEPS,), validity=("nonpole(c-s)",))


def _contiguous(form, fam):
    group = f"CT{form}"
    n = 1
    for par, op in (("a1", "theta"), ("a2", "phi"), ("b1", "theta"), ("b2", "phi")):
        _add(f"{group}-{n}", group, fam, [_F({par: f"{par}+1"}, coef=par)], [_F(factors=(f"{par}+{op}",))])
        _add(f"{group}-{n + 1}", group, fam, [_F({par: f"{par}-1"}, (f"{par}+{op}-1",))], [_F(coef=f"{par}-1")])
        n += 2
    down = ([_F({"c": "c-1"}, coef="c-1")], [_F(factors=("c+theta+phi-1",))])
    up = ([_F({"c": "c+1"}, ("c+theta+phi",))], [_F(coef="c")])
    extra = {}
    if form == 2:
        def first_form(terms):
            return tuple(_F({k: v for k, v in t.op.shift.params} or None, t.op.factors, t.coef, variant="f3d1")
                         for t in terms)
        extra = [dict(printed=(first_form(down[0]), first_form(down[1])),
                      note="Written for the first discrete form; checked for the second."),
                 dict(printed=(first_form(up[0]), first_form(up[1])),
                      note="Written for the first discrete form; checked for the second.")]
    else:
        extra = [{}, {}]
    _add(f"{group}-9", group, fam, *down, validity=("nonpole(c-1)",), **extra[0])
    _add(f"{group}-10", group, fam, *up, **extra[1])


def _table(group, fam, rows, validity=(), notes=None, printed=None):
    for i, (lf, ls, rf, rs) in enumerate(rows, 1):
        lhs = [_F(_shift_of(ls), lf)]
        rhs = [_F(_shift_of(rs), rf)]
        val = tuple(validity) + (("nonpole(c-1)",) if "c-1" in (ls, rs) else ())
        kw = {}
        if notes and i in notes:
            kw["note"] = notes[i]
        if printed and i in printed:
            plf, pls, prf, prs = printed[i]
            kw["printed"] = ((_F(_shift_of(pls), plf),), (_F(_shift_of(prs), prf),))
        _add(f"{group}-{i}", group, fam, lhs, rhs, validity=val, **kw)


def _reductions(form, fam):
    group = f"RED{form}"
    small = ("abs(x)<=0.5", "abs(y)<=0.5")

    def terminating(*names):
        return tuple(f"nonnegint({t})" for t in names)

    if form == 1:
        _add("RED1-1", group, fam, [_F()], [_F(variant="f3")], overrides=(("k1", 0), ("k2", 0)),
             validity=small, tol=TOL_REDUCTION, exact_ok=False)
        specs = (
            ((1, 0), ((), ("a1", "b1", "-t1"), ("a2", "b2"), ("c",), (), ()), "-x", "y", ("t1",)),
            ((0, 1), ((), ("a1", "b1"), ("a2", "b2", "-t2"), ("c",), (), ()), "x", "-y", ("t2",)),
            ((1, 1), ((), ("a1", "b1", "-t1"), ("a2", "b2", "-t2"), ("c",), (), ()), "-x", "-y", ("t1", "t2")),
        )
        for i, ((k1, k2), lists, xm, ym, ts) in enumerate(specs, 2):
            _add(f"RED1-{i}", group, fam, [_F()], [_F(variant="kdf", kdf=lists, x=xm, y=ym)],
                 overrides=(("k1", k1), ("k2", k2)), validity=small + terminating(*ts), tol=TOL_REDUCTION,
                 exact_ok=(k1, k2) == (1, 1))
    else:
        _add("RED2-1", group, fam, [_F()], [_F(variant="f3")], overrides=(("k", 0),),
             validity=small, tol=TOL_REDUCTION, exact_ok=False)
        lists = (("-t",), ("a1", "b1"), ("a2", "b2"), ("c",), (), ())
        _add("RED2-2", group, fam, [_F()], [_F(variant="kdf", kdf=lists, x="-x", y="-y")],
             overrides=(("k", 1),), validity=small + terminating("t"), tol=TOL_REDUCTION,
             printed=(None, (_F(variant="kdf", kdf=lists),)),
             note="Arguments written as (x, y); the joint factor (-1)^(m+n) requires (-x, -y).")


def _limits(form, fam):
    group = f"LIM{form}"
    targets = ("xi11", "xi21") if form == 1 else ("xi12", "xi22")
    validity = ("k1>=1", "k2>=1") if form == 1 else ("k>=1",)
    for i, target in enumerate(targets, 1):
        scale = "eps" if i == 1 else "eps^2"
        uppers = "b2 = 1/eps" if i == 1 else "a2 = b2 = 1/eps"
        _add(f"{group}-{i}", group, fam, (), (), limit=target, validity=validity, exact_ok=False,
             formula=f"lim eps->0 F({uppers}; y -> {scale}*y) = {target}")


# ---------------------------------------------------------------------------
# assembly

_QR1_NOTES = {
    17: "Leading factor written a2; the contiguous relations force a2-1.",
    42: "Operator written (c + (Th1 + Th2)/k); encoded with Th1/k1 + Th2/k2.",
}
_QR1_PRINTED = {17: (("a2", "a1+Th1/k1-1"), "a1-1", ("a1-1", "a2+Th2/k2-1"), "a2-1")}


def _build():
    fam = "f3d1"
    _difference_equations(1, fam)
    _delta_formulas(fam)
    _falling_power(1, fam, "DF1", 3)
    _prefactor_derivatives(1, fam, "DX1", 1)
    _finite_sums(1, fam)
    _infinite_sum(1, fam)
    _recursions(1, fam)
    _contiguous(1, fam)
    _table("DR1", fam, DR1)
    _table("QR1", fam, QR1, validity=("k1>=1", "k2>=1"), notes=_QR1_NOTES, printed=_QR1_PRINTED)
    _reductions(1, fam)
    _limits(1, fam)
    fam = "f3d2"
    _difference_equations(2, fam)
    _falling_power(2, fam, "DX2", 1)
    _prefactor_derivatives(2, fam, "DX2", 3)
    _finite_sums(2, fam)
    _infinite_sum(2, fam)
    _recursions(2, fam)
    _contiguous(2, fam)
    _table("DR2", fam, DR2)
    _table("QR2", fam, QR2, validity=("k>=1",))
    _reductions(2, fam)
    _limits(2, fam)
    return tuple(_REGISTRY)


IDENTITIES = _build()

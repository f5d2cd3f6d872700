"""Double-series evaluation over the (m, n) lattice.

Every family handled here has lattice coefficients of the product form

    A[m, n] = X[m] * Y[n] * J[m + n]

where ``X`` collects the factors that depend on ``m`` alone (including
``1/m!``), ``Y`` those that depend on ``n`` alone and ``J`` the coupled
factors such as ``1/(c)_(m+n)``.  A :class:`LatticeSeries` stores the three
factor lists; :func:`sum_series` performs the summation along anti-diagonals
``m + n = s`` with termination detection, tail estimation and a divergence
diagnostic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence, Union

from .errors import DivergenceDetected, PoleError, ValidityError
from .numerics import (
    exact,
    is_exact,
    nonnegative_integer,
    nonpositive_integer,
    pochhammer_scaled,
    rising_factorial,
)

__all__ = [
    "Params1",
    "Params2",
    "Point",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "Evaluation",
    "KdFSpec",
    "LatticeSeries",
    "LimitReport",
    "VARIANTS",
    "term_f3_disc1",
    "term_f3_disc2",
    "sum_series",
    "lattice_extent",
    "series_for",
    "evaluate",
    "eval_f3_disc1",
    "eval_f3_disc2",
    "eval_f3_classical",
    "eval_kdf",
    "eval_xi",
    "eval_xi1_classical",
    "eval_xi2_classical",
    "eval_1f0_disc",
    "limit_degeneration",
]


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Params1:
    """Parameters of the first discrete form (separate discrete variables)."""

    a1: complex
    a2: complex
    b1: complex
    b2: complex
    c: complex
    t1: complex = 0
    t2: complex = 0
    k1: int = 0
    k2: int = 0

    def replace(self, **changes) -> "Params1":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.__dataclass_fields__}


@dataclass(frozen=True)
class Params2:
    """Parameters of the second discrete form (one joint discrete variable)."""

    a1: complex
    a2: complex
    b1: complex
    b2: complex
    c: complex
    t: complex = 0
    k: int = 0

    def replace(self, **changes) -> "Params2":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.__dataclass_fields__}


Params = Union[Params1, Params2]


@dataclass(frozen=True)
class Point:
    x: complex
    y: complex = 0


@dataclass(frozen=True)
class TruncationPolicy:
    """Caps and tolerances for non-terminating sums.

    ``divergence_window`` is the number of consecutive anti-diagonals whose
    largest term keeps growing, with non-decreasing growth ratio, before
    :class:`DivergenceDetected` is raised.
    """

    max_m: int = 256
    max_n: int = 256
    tol: float = 1e-14
    divergence_window: int = 5

    def __post_init__(self):
        if self.max_m < 1 or self.max_n < 1:
            raise ValueError("max_m and max_n must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.divergence_window < 3:
            raise ValueError("divergence_window must be >= 3")


DEFAULT_POLICY = TruncationPolicy()


@dataclass
class Evaluation:
    value: complex
    terms_used: int
    terminated: bool
    converged: bool
    est_error: float
    diagonals: int = 0

    def __post_init__(self):
        if self.terminated:
            self.converged = True
            self.est_error = 0.0


@dataclass(frozen=True)
class KdFSpec:
    """Parameter lists of a Kampe de Feriet double series.

    ``A``/``D`` are the joint upper/lower lists (indexed by ``m + n``),
    ``B``/``E`` the ``x`` lists and ``C``/``F`` the ``y`` lists.
    """

    A: tuple = ()
    B: tuple = ()
    C: tuple = ()
    D: tuple = ()
    E: tuple = ()
    F: tuple = ()

    def __post_init__(self):
        for name in "ABCDEF":
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for lower in (self.D, self.E, self.F):
            for d in lower:
                if nonpositive_integer(d) is not None:
                    raise ValidityError(f"lower parameter {d} is a nonpositive integer")


# ---------------------------------------------------------------------------
# generic lattice machinery


@dataclass(frozen=True)
class _Side:
    upper: tuple = ()
    lower: tuple = ()
    scaled: tuple = ()  # (t, k) pairs contributing (-1)^(jk) (-t)_(jk)
    factorial: bool = True


@dataclass(frozen=True)
class LatticeSeries:
    """Factorised description of a double series ``sum A[m,n] x^m y^n``."""

    xs: _Side = field(default_factory=_Side)
    ys: _Side = field(default_factory=_Side)
    joint: _Side = field(default_factory=lambda: _Side(factorial=False))


def _snap(v, exact_mode):
    """Replace near-integer floats by exact integers so that zeros stay exact."""
    if exact_mode:
        return v
    n = nonnegative_integer(v)
    if n is not None:
        return complex(n)
    n = nonpositive_integer(v)
    if n is not None:
        return complex(-n)
    return v


def _side_cap(side: _Side):
    """Largest index with a possibly nonzero factor, or ``None`` if unbounded."""
    caps = []
    for u in side.upper:
        n = nonpositive_integer(u)
        if n is not None:
            caps.append(n)
    for t, k in side.scaled:
        if k >= 1:
            n = nonnegative_integer(t)
            if n is not None:
                caps.append(n // k)
    return min(caps) if caps else None


def _side_pole(side: _Side):
    """Smallest index at which a lower Pochhammer symbol vanishes, or ``None``."""
    poles = []
    for d in side.lower:
        n = nonpositive_integer(d)
        if n is not None:
            poles.append(n + 1)
    return min(poles) if poles else None


_SCALE_BITS = 300
_BIG = 2.0 ** _SCALE_BITS
_SMALL = 2.0 ** -_SCALE_BITS


def _ldexp(z, e):
    """``z * 2**e`` for a complex ``z`` without forming ``2**e``."""
    return complex(math.ldexp(z.real, e), math.ldexp(z.imag, e))


class _Factors:
    """Lazily extended table ``F[j] * z^j`` for one side of the lattice.

    Built as a running product of term ratios.  In float mode each entry is
    stored as ``vals[j] * 2**exps[j]`` with ``vals[j]`` kept inside
    ``2**(+-300)``, so a side factor may exceed the double range while the
    full lattice term (after the other sides) stays finite.
    """

    def __init__(self, side: _Side, z, one):
        self.side = side
        self.z = z
        self.vals = [one]
        self.exps = [0]
        self.scaled = not is_exact(one)

    def get(self, j):
        vals = self.vals
        while len(vals) <= j:
            i = len(vals)  # ratio F[i] / F[i-1]
            num = self.z
            for u in self.side.upper:
                num = num * (u + (i - 1))
            for t, k in self.side.scaled:
                for r in range((i - 1) * k, i * k):
                    num = num * (t - r)
            den = None
            for d in self.side.lower:
                f = d + (i - 1)
                den = f if den is None else den * f
            if self.side.factorial:
                den = i if den is None else den * i
            step = num / den if den is not None else num
            v = vals[-1] * step
            e = self.exps[-1]
            if self.scaled and v:
                a = abs(v)
                while a > _BIG and math.isfinite(a):
                    v, e, a = v * _SMALL, e + _SCALE_BITS, a * _SMALL
                while a < _SMALL:
                    v, e, a = v * _BIG, e - _SCALE_BITS, a * _BIG
            vals.append(v)
            self.exps.append(e)
        return vals[j]


def _ratio_degree(side: _Side) -> int:
    """Degree in ``j`` of the term ratio ``F[j+1] / F[j]`` for large ``j``."""
    up = len(side.upper) + sum(k for _, k in side.scaled)
    return up - len(side.lower) - (1 if side.factorial else 0)


def _axis_ratio(side: _Side, joint: _Side, z, j: int) -> float:
    """``|A[j+1] / A[j]|`` along one lattice axis (other index zero)."""
    r = abs(complex(z))
    for u in side.upper + joint.upper:
        r *= abs(complex(u) + j)
    for sd in (side, joint):
        for t, k in sd.scaled:
            for q in range(j * k, (j + 1) * k):
                r *= abs(complex(t) - q)
    for d in side.lower + joint.lower:
        r /= max(abs(complex(d) + j), 1e-300)
    if side.factorial:
        r /= j + 1
    return r


def _growth_burn_in(series: LatticeSeries, x, y, limit: int) -> int:
    """Diagonals to skip before growth can signal divergence.

    Along an axis whose term ratio has negative degree (an entire
    direction) the terms first rise to a hump and then fall for good; the
    burn-in is the end of the longest such hump.
    """
    dj = _ratio_degree(series.joint)
    burn = 0
    for side, z in ((series.xs, x), (series.ys, y)):
        if not z or _ratio_degree(side) + dj >= 0:
            continue
        last = -1
        for j in range(limit):
            if _axis_ratio(side, series.joint, z, j) >= 1:
                last = j
        burn = max(burn, last + 1)
    return burn


def _prepare(series: LatticeSeries, exact_mode: bool) -> LatticeSeries:
    conv = exact if exact_mode else complex

    def side(s: _Side):
        return _Side(
            upper=tuple(_snap(conv(u), exact_mode) for u in s.upper),
            lower=tuple(conv(d) for d in s.lower),
            scaled=tuple((_snap(conv(t), exact_mode), int(k)) for t, k in s.scaled),
            factorial=s.factorial,
        )

    return LatticeSeries(side(series.xs), side(series.ys), side(series.joint))


def _bound(*caps):
    vals = [c for c in caps if c is not None]
    return min(vals) if vals else None


def lattice_extent(series: LatticeSeries, x, y):
    """Index bounds ``(m_max, n_max)`` of a terminating series, else ``None``.

    For series with a joint cap the bounds are per direction; the joint
    constraint ``m + n <= cap`` is implied by the vanishing coefficients.
    """
    series = _prepare(series, False)
    m_cap = 0 if not complex(x) else _side_cap(series.xs)
    n_cap = 0 if not complex(y) else _side_cap(series.ys)
    s_cap = _side_cap(series.joint)
    m_hi = _bound(m_cap, s_cap)
    n_hi = _bound(n_cap, s_cap)
    if m_hi is None or n_hi is None:
        return None
    return m_hi, n_hi


def sum_series(
    series: LatticeSeries,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
    weight: Optional[Callable[[int, int], object]] = None,
    diagonals: Optional[int] = None,
    exact_mode: bool = False,
) -> Evaluation:
    """Sum ``weight(m, n) * A[m, n] * x^m * y^n`` over the lattice.

    Summation proceeds over anti-diagonals ``s = m + n`` in increasing order.
    When termination caps bound the lattice the sum is finite and exact up to
    rounding (``terminated=True``).  Otherwise diagonals are added until the
    last two are below ``policy.tol`` relative to the running sum, the
    policy caps are exhausted, or the divergence diagnostic fires.

    ``diagonals`` forces exactly that many anti-diagonals (used to compare
    shifted evaluations on matched lattice extents).
    """
    conv = exact if exact_mode else complex
    series = _prepare(series, exact_mode)
    x = conv(x)
    y = conv(y)
    zero = conv(0)
    one = conv(1)

    m_cap = 0 if not x else _side_cap(series.xs)
    n_cap = 0 if not y else _side_cap(series.ys)
    s_cap = _side_cap(series.joint)

    m_hi = _bound(m_cap, s_cap)
    n_hi = _bound(n_cap, s_cap)
    terminated = (m_hi is not None and n_hi is not None) or s_cap is not None
    if terminated:
        mh = m_hi if m_hi is not None else s_cap
        nh = n_hi if n_hi is not None else s_cap
        s_hi = mh + nh if s_cap is None else min(s_cap, mh + nh)
        if mh > policy.max_m or nh > policy.max_n:
            terminated = False
    if not terminated:
        mh = min(m_hi, policy.max_m) if m_hi is not None else policy.max_m
        nh = min(n_hi, policy.max_n) if n_hi is not None else policy.max_n
        s_hi = mh + nh
        if exact_mode:
            raise ValidityError("exact mode needs a terminating series")
    if diagonals is not None:
        s_hi = min(s_hi, diagonals - 1)

    for side, hi in ((series.xs, mh), (series.ys, nh), (series.joint, s_hi)):
        pole = _side_pole(side)
        if pole is not None and pole <= hi:
            raise PoleError(f"denominator Pochhammer vanishes at index {pole}")

    X = _Factors(series.xs, x, one)
    Y = _Factors(series.ys, y, one)
    J = _Factors(series.joint, one, one)

    total = zero
    terms = 0
    prev_mag = None
    prev_max = None
    prev_growth = None
    streak = 0
    growth_hist = []
    converged = terminated
    est_error = 0.0
    small_run = 0
    s_used = 0
    Xe, Ye, Je = X.exps, Y.exps, J.exps
    # early growth along an entire direction is a hump, not divergence
    burn_in = _growth_burn_in(series, x, y, max(mh, nh) + 1)
    for s in range(s_hi + 1):
        js = J.get(s)
        diag = zero
        raw_nonzero = False
        mag = 0.0
        biggest = 0.0
        lo = max(0, s - nh)
        for m in range(lo, min(s, mh) + 1):
            n = s - m
            term = X.get(m) * Y.get(n) * js
            shift = Xe[m] + Ye[n] + Je[s]
            if shift:
                term = _ldexp(term, shift)
            if not terminated and term:
                raw_nonzero = True
            if weight is not None and term:
                term = term * weight(m, n)
            diag = diag + term
            terms += 1
            if not terminated:
                a = abs(term)
                mag += a
                if a > biggest:
                    biggest = a
        total = total + diag
        s_used = s + 1
        if terminated:
            continue
        if not (math.isfinite(mag)):
            raise DivergenceDetected(
                f"non-finite terms at anti-diagonal {s}", diagonals=s + 1, partial=total, growth=growth_hist
            )
        # divergence diagnostic: largest term growing with non-decreasing ratio
        if s > burn_in and prev_max is not None and prev_max > 0 and biggest > prev_max:
            growth = biggest / prev_max
            if prev_growth is not None and growth >= prev_growth * (1 - 1e-12):
                streak += 1
            else:
                streak = 1
            prev_growth = growth
            growth_hist = (growth_hist + [growth])[-policy.divergence_window:]
            if streak >= policy.divergence_window:
                raise DivergenceDetected(
                    f"lattice terms grow for {streak} consecutive anti-diagonals (up to s={s})",
                    diagonals=s + 1,
                    partial=total,
                    growth=growth_hist,
                )
        else:
            streak = 0
            prev_growth = None
        prev_max = biggest if biggest > 0 else prev_max
        if prev_mag is not None:
            rho = mag / prev_mag if prev_mag > 0 else 0.0
            rho = min(max(rho, 0.0), 0.9)
            est_error = mag / (1.0 - rho)
        else:
            est_error = mag
        if diagonals is None and s >= 1:
            scale = abs(total)
            # a diagonal zeroed only by the weight says nothing about the tail
            if (mag <= policy.tol * scale and scale > 0) or not raw_nonzero:
                small_run += 1
            else:
                small_run = 0
            if small_run >= 2:
                converged = True
                break
        prev_mag = mag
    if not terminated and not converged:
        converged = est_error <= policy.tol * max(abs(total), 1e-300) * 10
    return Evaluation(
        value=total,
        terms_used=terms,
        terminated=terminated,
        converged=converged,
        est_error=0.0 if terminated else float(est_error),
        diagonals=s_used,
    )


# ---------------------------------------------------------------------------
# families

VARIANTS = ("f3", "f3d1", "f3d2", "kdf", "xi11", "xi21", "xi12", "xi22", "1f0d")


def series_for(variant: str, p) -> LatticeSeries:
    """Lattice description of ``variant`` at parameters ``p``.

    ``p`` is a :class:`Params1` for ``f3``, ``f3d1``, ``xi11``, ``xi21``, a
    :class:`Params2` for ``f3d2``, ``xi12``, ``xi22`` and a :class:`KdFSpec`
    for ``kdf``.  The classical ``f3`` ignores the discrete parameters.
    """
    if variant == "f3d1":
        return LatticeSeries(
            _Side((p.a1, p.b1), (), ((p.t1, p.k1),)),
            _Side((p.a2, p.b2), (), ((p.t2, p.k2),)),
            _Side((), (p.c,), (), factorial=False),
        )
    if variant == "f3d2":
        return LatticeSeries(
            _Side((p.a1, p.b1)),
            _Side((p.a2, p.b2)),
            _Side((), (p.c,), ((p.t, p.k),), factorial=False),
        )
    if variant == "f3":
        return LatticeSeries(_Side((p.a1, p.b1)), _Side((p.a2, p.b2)), _Side((), (p.c,), (), factorial=False))
    if variant == "xi11":
        return LatticeSeries(
            _Side((p.a1, p.b1), (), ((p.t1, p.k1),)),
            _Side((p.a2,), (), ((p.t2, p.k2),)),
            _Side((), (p.c,), (), factorial=False),
        )
    if variant == "xi21":
        return LatticeSeries(
            _Side((p.a1, p.b1), (), ((p.t1, p.k1),)),
            _Side((), (), ((p.t2, p.k2),)),
            _Side((), (p.c,), (), factorial=False),
        )
    if variant == "xi12":
        return LatticeSeries(_Side((p.a1, p.b1)), _Side((p.a2,)), _Side((), (p.c,), ((p.t, p.k),), factorial=False))
    if variant == "xi22":
        return LatticeSeries(_Side((p.a1, p.b1)), _Side(()), _Side((), (p.c,), ((p.t, p.k),), factorial=False))
    if variant == "kdf":
        return LatticeSeries(_Side(p.B, p.E), _Side(p.C, p.F), _Side(p.A, p.D, (), factorial=False))
    raise ValueError(f"unknown variant {variant!r}")


def _check_c(p):
    if nonpositive_integer(p.c) is not None:
        raise PoleError(f"c = {p.c} is a nonpositive integer")


def evaluate(variant: str, p, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode: bool = False,
             weight=None, diagonals=None) -> Evaluation:
    """Evaluate any supported family at ``pt``; thin wrapper over :func:`sum_series`."""
    if variant != "kdf":
        _check_c(p)
    series = series_for(variant, p)
    if variant == "f3" and not exact_mode:
        ev = sum_series(series, pt.x, pt.y, pol, weight, diagonals)
        if not ev.terminated:
            big = [abs(complex(v)) >= 1 for v, cap in ((pt.x, _side_cap(series.xs)), (pt.y, _side_cap(series.ys)))
                   if cap is None]
            if any(big):
                raise DivergenceDetected("classical F3 series evaluated outside the unit bidisc")
        return ev
    return sum_series(series, pt.x, pt.y, pol, weight, diagonals, exact_mode)


def term_f3_disc1(p: Params1, m: int, n: int):
    """Lattice coefficient of the first discrete form (without ``x^m y^n``)."""
    if m < 0 or n < 0:
        raise ValueError("lattice indices must be nonnegative")
    den = rising_factorial(p.c, m + n)
    if not den:
        raise PoleError(f"(c)_{m + n} vanishes for c = {p.c}")
    num = (
        rising_factorial(p.a1, m) * rising_factorial(p.a2, n) * rising_factorial(p.b1, m) * rising_factorial(p.b2, n)
        * pochhammer_scaled(p.t1, p.k1, m) * pochhammer_scaled(p.t2, p.k2, n)
    )
    return num / (den * math.factorial(m) * math.factorial(n))


def term_f3_disc2(p: Params2, m: int, n: int):
    """Lattice coefficient of the second discrete form (without ``x^m y^n``)."""
    if m < 0 or n < 0:
        raise ValueError("lattice indices must be nonnegative")
    den = rising_factorial(p.c, m + n)
    if not den:
        raise PoleError(f"(c)_{m + n} vanishes for c = {p.c}")
    num = (
        rising_factorial(p.a1, m) * rising_factorial(p.a2, n) * rising_factorial(p.b1, m) * rising_factorial(p.b2, n)
        * pochhammer_scaled(p.t, p.k, m + n)
    )
    return num / (den * math.factorial(m) * math.factorial(n))


def eval_f3_disc1(p: Params1, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode=False) -> Evaluation:
    return evaluate("f3d1", p, pt, pol, exact_mode=exact_mode)


def eval_f3_disc2(p: Params2, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode=False) -> Evaluation:
    return evaluate("f3d2", p, pt, pol, exact_mode=exact_mode)


def eval_f3_classical(a1, a2, b1, b2, c, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *,
                      exact_mode=False) -> Evaluation:
    """Classical Appell F3, truncated with a tail estimate."""
    return evaluate("f3", Params1(a1, a2, b1, b2, c), pt, pol, exact_mode=exact_mode)


def eval_kdf(spec: KdFSpec, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode=False) -> Evaluation:
    return evaluate("kdf", spec, pt, pol, exact_mode=exact_mode)


_XI_NAMES = {"xi11": "xi11", "xi21": "xi21", "xi12": "xi12", "xi22": "xi22"}


def eval_xi(variant: str, p, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode=False) -> Evaluation:
    """Discrete Humbert functions.

    ``variant`` is ``"xi11"``/``"xi21"`` (first discrete form, needs
    :class:`Params1`) or ``"xi12"``/``"xi22"`` (second form, :class:`Params2`).
    Parameters the variant does not use are ignored.
    """
    if variant not in _XI_NAMES:
        raise ValueError(f"unknown Humbert variant {variant!r}")
    want = Params1 if variant.endswith("1") else Params2
    if not isinstance(p, want):
        raise TypeError(f"{variant} needs {want.__name__}")
    return evaluate(variant, p, pt, pol, exact_mode=exact_mode)


def eval_xi1_classical(a1, a2, b1, c, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY) -> Evaluation:
    return evaluate("xi11", Params1(a1, a2, b1, 0, c), pt, pol)


def eval_xi2_classical(a1, b1, c, pt: Point, pol: TruncationPolicy = DEFAULT_POLICY) -> Evaluation:
    return evaluate("xi21", Params1(a1, 0, b1, 0, c), pt, pol)


def eval_1f0_disc(a, t, k: int, z, pol: TruncationPolicy = DEFAULT_POLICY, *, exact_mode=False) -> Evaluation:
    """Single series ``sum (a)_m (-1)^(mk) (-t)_(mk) z^m / m!``."""
    series = LatticeSeries(_Side((a,), (), ((t, k),)), _Side(), _Side(factorial=False))
    return sum_series(series, z, 0, pol, exact_mode=exact_mode)


# ---------------------------------------------------------------------------
# confluent limits


@dataclass
class LimitReport:
    target: str
    eps: list
    values: list
    reference: complex
    errors: list
    monotone: bool
    ratio: float

    @property
    def passed(self) -> bool:
        return self.monotone and self.ratio <= 1e-2


def _limit_params(target: str, base, eps):
    inv = 1 / eps
    if target in ("xi11", "xi12"):
        return base.replace(b2=inv), eps
    if target in ("xi21", "xi22"):
        return base.replace(a2=inv, b2=inv), eps * eps
    raise ValueError(f"unknown limit target {target!r}")


def _limit_run(target, parent, base, pt, eps_list, pol, exact_mode):
    conv = exact if exact_mode else complex
    ref = eval_xi(target, base, pt, pol, exact_mode=exact_mode).value
    values = []
    for e in eps_list:
        q, scale = _limit_params(target, base, conv(e))
        values.append(evaluate(parent, q, Point(pt.x, conv(pt.y) * scale), pol, exact_mode=exact_mode).value)
    return ref, values


def limit_degeneration(target: str, base, pt: Point, eps_list: Sequence[float],
                       pol: TruncationPolicy = DEFAULT_POLICY) -> LimitReport:
    """Approach a discrete Humbert function through the confluent limit.

    For ``xi11``/``xi12`` the parent is evaluated with ``b2 = 1/eps`` and
    ``y -> eps*y``; for ``xi21``/``xi22`` with ``a2 = b2 = 1/eps`` and
    ``y -> eps^2*y``.  The report lists ``|parent(eps) - Humbert|`` per eps.

    Terminating cases with rational data are evaluated in exact arithmetic,
    so the reported errors carry no cancellation noise; other cases fall
    back to floating point.
    """
    eps_list = [float(e) for e in eps_list]
    if not eps_list or any(e <= 0 for e in eps_list) or any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_list must be strictly decreasing and positive")
    if target not in _XI_NAMES:
        raise ValueError(f"unknown limit target {target!r}")
    parent = "f3d1" if target in ("xi11", "xi21") else "f3d2"
    try:
        ref, values = _limit_run(target, parent, base, pt, eps_list, pol, True)
        diffs = [v - ref for v in values]
        sq = [d.abs2() for d in diffs]
        errors = [math.sqrt(float(s)) for s in sq]
        monotone = all(b < a for a, b in zip(sq, sq[1:])) or not any(sq)
        ratio = math.sqrt(float(sq[-1] / sq[0])) if sq[0] else 0.0
        ref = complex(ref)
        values = [complex(v) for v in values]
    except (ValidityError, TypeError, ValueError):
        ref, values = _limit_run(target, parent, base, pt, eps_list, pol, False)
        errors = [abs(v - ref) for v in values]
        monotone = all(b < a for a, b in zip(errors, errors[1:])) or not any(errors)
        ratio = errors[-1] / errors[0] if errors[0] > 0 else 0.0
    return LimitReport(target, eps_list, values, ref, errors, monotone, ratio)

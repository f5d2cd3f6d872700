"""Scalar arithmetic shared by the series, operator and quadrature layers.

Two number systems flow through the package:

* double-precision ``complex`` (the default), and
* :class:`ExactScalar`, a Gaussian rational with unbounded numerator and
  denominator, used to check identities with zero rounding error.

Every routine here is written against the operators ``+ - * /`` and integer
powers only, so it accepts either representation and returns the same one.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

from .errors import PoleError

__all__ = [
    "ExactScalar",
    "parse_scalar",
    "exact",
    "is_exact",
    "to_complex",
    "nonpositive_integer",
    "nonnegative_integer",
    "rising_factorial",
    "pochhammer_scaled",
    "pochhammer_scaled_factorized",
    "complex_gamma",
    "binomial",
    "INTEGER_TOL",
]

#: Distance to the nearest integer below which a float parameter is treated as that integer.
INTEGER_TOL = 1e-9


class ExactScalar:
    """Gaussian rational ``re + i*im`` with :class:`fractions.Fraction` parts.

    Instances are immutable and always stored in reduced form (``Fraction``
    normalises itself).  Mixed arithmetic with ``int`` and ``Fraction`` is
    exact; mixing with ``float``/``complex`` raises ``TypeError`` so that a
    stray float can never silently break exact mode.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _lift(cls, other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return cls(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.im and not o.im:
            return ExactScalar(self.re * o.re, 0)
        return ExactScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("exact division by zero")
            return ExactScalar(self.re / o.re, self.im / o.re)
        den = o.re * o.re + o.im * o.im
        return ExactScalar((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExactScalar(1) / (self ** (-n))
        result = ExactScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return ExactScalar(self.re, -self.im)

    def abs2(self):
        """Squared modulus as an exact ``Fraction``."""
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"ExactScalar({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _exact_real(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"cannot represent {v!r} exactly")
        # repr gives the shortest decimal that round-trips: 0.3 -> 3/10
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot convert {type(v).__name__} to an exact rational")


def exact(value) -> ExactScalar:
    """Convert ``value`` to an :class:`ExactScalar`.

    Floats are read through their shortest decimal representation, so
    ``exact(0.3)`` is ``3/10`` rather than the binary expansion.  Strings may
    be rationals (``"7/2"``) or complex literals accepted by
    :func:`parse_scalar`.
    """
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, complex):
        return ExactScalar(_exact_real(value.real), _exact_real(value.imag))
    if isinstance(value, str):
        re, im = _split_complex_literal(value)
        return ExactScalar(_exact_real(re), _exact_real(im))
    return ExactScalar(_exact_real(value), 0)


def _split_complex_literal(text: str):
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty scalar literal")
    if not s.endswith("i"):
        return s, "0"
    body = s[:-1]
    # find the sign separating real and imaginary parts (skip exponent signs)
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            re, im = body[:pos], body[pos:]
            break
    else:
        re, im = "0", body
    if im in ("", "+"):
        im = "1"
    elif im == "-":
        im = "-1"
    return re, im


def parse_scalar(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a"``, ``"bi"`` or ``"p/q"`` into a complex number."""
    re, im = _split_complex_literal(text)
    return complex(float(Fraction(re)) if "/" in re else float(re), float(Fraction(im)) if "/" in im else float(im))


def is_exact(value) -> bool:
    return isinstance(value, ExactScalar)


def to_complex(value) -> complex:
    return complex(value)


def nonnegative_integer(value, tol: float = INTEGER_TOL):
    """Return ``n`` if ``value`` is (within ``tol``) the integer ``n >= 0``, else ``None``."""
    if isinstance(value, ExactScalar):
        if value.im or value.re.denominator != 1 or value.re < 0:
            return None
        return int(value.re)
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        f = Fraction(value)
        return int(f) if f.denominator == 1 and f >= 0 else None
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return None
    n = round(z.real)
    if abs(z.imag) <= tol and abs(z.real - n) <= tol and n >= 0:
        return int(n)
    return None


def nonpositive_integer(value, tol: float = INTEGER_TOL):
    """Return ``n >= 0`` if ``value`` equals ``-n`` (within ``tol``), else ``None``."""
    return nonnegative_integer(-value, tol)


def rising_factorial(a, n: int):
    """Pochhammer symbol ``(a)_n = a (a+1) ... (a+n-1)``.

    Computed by repeated multiplication so that a factor hitting zero gives an
    exact zero.  Overflow propagates as ``inf`` in float mode.
    """
    if n < 0:
        raise ValueError("rising_factorial needs n >= 0")
    result = a * 0 + 1
    for i in range(n):
        result = result * (a + i)
    return result


def pochhammer_scaled(t, k: int, m: int):
    """``(-1)^(m k) (-t)_(m k)``, i.e. the falling factorial ``t (t-1) ... (t-mk+1)``.

    This is the factor that makes the discrete series terminate: it is exactly
    zero whenever ``t`` is a nonnegative integer smaller than ``m k``.
    """
    if k < 0 or m < 0:
        raise ValueError("pochhammer_scaled needs k >= 0 and m >= 0")
    result = t * 0 + 1
    for i in range(m * k):
        result = result * (t - i)
    return result


def pochhammer_scaled_factorized(t, k: int, m: int):
    """Same quantity as :func:`pochhammer_scaled` through the split

    ``(-t)_(m k) = k^(m k) prod_{i<k} ((-t+i)/k)_m``.

    Kept as an independent route for cross-checking the direct product.
    """
    if k < 0 or m < 0:
        raise ValueError("pochhammer_scaled_factorized needs k >= 0 and m >= 0")
    if k == 0 or m == 0:
        return t * 0 + 1
    result = t * 0 + 1
    for i in range(k):
        result = result * rising_factorial((-t + i) / k, m)
    sign = -1 if (m * k) % 2 else 1
    return result * (sign * k ** (m * k))


# Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def complex_gamma(z) -> complex:
    """Gamma function for complex arguments.

    Lanczos series for ``Re z >= 1/2`` and the reflection formula otherwise.
    Raises :class:`PoleError` at ``0, -1, -2, ...``.
    """
    z = complex(z)
    if nonpositive_integer(z, tol=0.0) is not None:
        raise PoleError(f"gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1 - z))
    z -= 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(_LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t) * acc


def binomial(r: int, s: int) -> int:
    """Exact binomial coefficient, zero when ``s > r``."""
    if r < 0 or s < 0:
        raise ValueError("binomial needs r, s >= 0")
    return math.comb(r, s)

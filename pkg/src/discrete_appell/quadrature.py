"""Gauss quadrature rules built from the Jacobi matrix of the weight.

Nodes come from a symmetric tridiagonal eigen-solve (Golub-Welsch) and are
then polished by Newton steps on the orthonormal three-term recurrence.
Weights are the Christoffel numbers ``mu0 / sum_j p_j(x)^2`` evaluated with
running rescaling, which keeps full relative accuracy for the tiny weights at
large Laguerre nodes where eigenvector components underflow.

Complex exponents are accepted.  The Jacobi matrix is then complex
symmetric, nodes and weights are complex, and the rule is still exact on
polynomials of degree ``2n - 1`` against the complex weight (the
orthogonality is bilinear, not Hermitian).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import complex_gamma

__all__ = ["QuadratureRule", "gauss_laguerre", "gauss_legendre", "gauss_jacobi", "MAX_NODES"]

MAX_NODES = 256


@dataclass(frozen=True)
class QuadratureRule:
    """``sum(weights * f(nodes))`` approximates the weighted integral of ``f``.

    ``kind`` is ``"laguerre"`` (``u^alpha e^-u`` on ``[0, inf)``),
    ``"legendre"`` (unit weight on ``[-1, 1]``) or ``"jacobi"``
    (``(1-x)^alpha (1+x)^beta`` on ``[-1, 1]``).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    alpha: complex = 0.0
    beta: complex = 0.0

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))

    def mapped(self, lo: float, hi: float) -> "QuadratureRule":
        """Affine image of a ``[-1, 1]`` rule on ``[lo, hi]`` (weights scaled by the Jacobian)."""
        if self.kind == "laguerre":
            raise ValueError("only finite-interval rules can be mapped")
        half = 0.5 * (hi - lo)
        return QuadratureRule(lo + half * (self.nodes + 1), self.weights * half, self.kind, self.alpha, self.beta)


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or not 1 <= n <= MAX_NODES:
        raise ValueError(f"rule size must be an integer in [1, {MAX_NODES}]")
    return int(n)


def _eval_orthonormal(x, diag, off):
    """Orthonormal ``p_n``, ``p_n'`` (common scale) and ``log sum_{j<n} p_j^2`` at ``x``.

    ``p_0 = 1``; ``off[j]`` couples ``p_j`` and ``p_{j+1}``.
    """
    n = len(diag)
    x = np.asarray(x)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    d_prev = np.zeros_like(x)
    d = np.zeros_like(x)
    ssum = np.ones_like(x)
    log_scale = np.zeros(x.shape)
    for j in range(n):
        back = off[j - 1] if j > 0 else 0.0
        p_next = ((x - diag[j]) * p - back * p_prev) / off[j]
        d_next = ((x - diag[j]) * d + p - back * d_prev) / off[j]
        p_prev, p, d_prev, d = p, p_next, d, d_next
        if j < n - 1:
            ssum = ssum + p * p
        big = np.maximum(np.abs(p), np.abs(p_prev))
        mask = big > 1e100
        if np.any(mask):
            f = np.where(mask, 1.0 / big, 1.0)
            p, p_prev, d, d_prev = p * f, p_prev * f, d * f, d_prev * f
            ssum = ssum * f * f
            log_scale = log_scale - 2 * np.log(f)
    return p, d, np.log(ssum) + log_scale


def _gauss(diag, off_sq, mu0):
    n = len(diag)
    cplx = np.iscomplexobj(diag) or np.iscomplexobj(off_sq)
    dtype = complex if cplx else float
    diag = np.asarray(diag, dtype=dtype)
    off = np.sqrt(np.asarray(off_sq, dtype=dtype))
    if n == 1:
        nodes = diag.copy()
    else:
        jac = np.diag(diag) + np.diag(off[: n - 1], 1) + np.diag(off[: n - 1], -1)
        nodes = np.linalg.eigvals(jac) if cplx else np.linalg.eigvalsh(jac)
    # off[n-1] only scales p_n, whose zeros are the nodes
    for _ in range(6 if cplx else 3):
        p, dp, _ = _eval_orthonormal(nodes, diag, off)
        step = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
        nodes = nodes - step
    _, _, log_s = _eval_orthonormal(nodes, diag, off)
    weights = mu0 * np.exp(-log_s)
    order = np.argsort(nodes.real)
    return nodes[order], weights[order]


def _exponent(v, name):
    v = complex(v)
    if not v.real > -1:
        raise ValueError(f"{name} exponent must have real part above -1")
    return v.real if v.imag == 0 else v


def _gamma(z):
    return math.gamma(z) if isinstance(z, float) else complex_gamma(z)


def gauss_laguerre(n: int, alpha=0.0) -> QuadratureRule:
    """Rule for ``int_0^inf u^alpha e^-u f(u) du`` (``Re alpha > -1``)."""
    n = _check_n(n)
    alpha = _exponent(alpha, "Laguerre")
    j = np.arange(n + 1, dtype=float)
    diag = 2 * j[:n] + alpha + 1
    off_sq = j[1:] * (j[1:] + alpha)
    if isinstance(alpha, float) and alpha + 1 > 170:
        raise ValueError("Laguerre exponent too large")
    nodes, weights = _gauss(diag, off_sq, _gamma(alpha + 1))
    return QuadratureRule(nodes, weights, "laguerre", alpha)


def gauss_jacobi(n: int, alpha=0.0, beta=0.0) -> QuadratureRule:
    """Rule for ``int_-1^1 (1-x)^alpha (1+x)^beta f(x) dx`` (``Re alpha, Re beta > -1``)."""
    n = _check_n(n)
    a, b = _exponent(alpha, "Jacobi"), _exponent(beta, "Jacobi")
    cplx = isinstance(a, complex) or isinstance(b, complex)
    diag = np.empty(n, dtype=complex if cplx else float)
    off_sq = np.empty(n, dtype=diag.dtype)
    for j in range(n):
        s = 2 * j + a + b
        diag[j] = (b - a) / (s + 2) if j == 0 or abs(s) < 1e-300 else (b * b - a * a) / (s * (s + 2))
        k = j + 1
        s1 = 2 * k + a + b
        if k == 1:
            off_sq[j] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        else:
            off_sq[j] = 4 * k * (k + a) * (k + b) * (k + a + b) / (s1 * s1 * (s1 + 1) * (s1 - 1))
    mu0 = 2 ** (a + b + 1) * _gamma(a + 1) * _gamma(b + 1) / _gamma(a + b + 2)
    nodes, weights = _gauss(diag, off_sq, mu0)
    kind = "legendre" if a == 0 and b == 0 else "jacobi"
    return QuadratureRule(nodes, weights, kind, a, b)


def gauss_legendre(n: int) -> QuadratureRule:
    """Rule for ``int_-1^1 f(x) dx``."""
    return gauss_jacobi(n, 0.0, 0.0)

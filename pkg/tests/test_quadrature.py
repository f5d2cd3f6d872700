import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import roots_genlaguerre, roots_jacobi

from discrete_appell.numerics import complex_gamma
from discrete_appell.quadrature import MAX_NODES, gauss_jacobi, gauss_laguerre, gauss_legendre

SIZES = [1, 2, 3, 5, 8, 16, 33, 64]


def test_closed_forms_n1():
    r = gauss_laguerre(1)
    assert r.nodes.tolist() == [1.0] and r.weights.tolist() == [1.0]
    r = gauss_legendre(1)
    assert r.nodes.tolist() == [0.0] and r.weights.tolist() == [2.0]


def test_closed_forms_n2():
    r = gauss_laguerre(2)
    s = math.sqrt(2)
    assert r.nodes == pytest.approx([2 - s, 2 + s], rel=1e-15, abs=0)
    assert r.weights == pytest.approx([(2 + s) / 4, (2 - s) / 4], rel=1e-15, abs=0)
    r = gauss_legendre(2)
    assert r.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15, abs=0)
    assert r.weights == pytest.approx([1, 1], rel=1e-15, abs=0)


@pytest.mark.parametrize("n", SIZES)
def test_laguerre_monomials(n):
    r = gauss_laguerre(n)
    for d in range(2 * n):
        exact = math.gamma(d + 1)
        assert abs(math.fsum(r.weights * r.nodes ** d) - exact) <= 1e-12 * exact, d


@pytest.mark.parametrize("n", SIZES)
def test_legendre_monomials(n):
    r = gauss_legendre(n)
    for d in range(2 * n):
        exact = 2 / (d + 1) if d % 2 == 0 else 0.0
        assert abs(math.fsum(r.weights * r.nodes ** d) - exact) <= 1e-12 * max(exact, 1.0), d


@pytest.mark.parametrize("n", [1, 4, 64, 128, MAX_NODES])
def test_rule_invariants(n):
    for r, total in ((gauss_laguerre(n), 1.0), (gauss_legendre(n), 2.0)):
        # Laguerre weights near e^-x fall below the double range only at nodes past ~700
        assert np.all((r.weights > 0) | ((r.weights == 0) & (r.nodes > 700)))
        assert np.all(np.diff(r.nodes) > 0)
        assert math.fsum(r.weights) == pytest.approx(total, rel=1e-13)
        assert len(r) == n


@given(st.floats(-0.9, 4.0), st.integers(1, 40))
def test_generalized_laguerre_moments(alpha, n):
    r = gauss_laguerre(n, alpha)
    for d in (0, 1, n, 2 * n - 1):
        exact = math.gamma(alpha + 1 + d)
        assert abs(math.fsum(r.weights * r.nodes ** d) - exact) <= 1e-12 * exact


@given(st.floats(-0.9, 3.0), st.floats(-0.9, 3.0), st.integers(1, 40))
def test_jacobi_moments(a, b, n):
    r = gauss_jacobi(n, a, b)
    # int_-1^1 (1-x)^a (1+x)^(b+d) dx = 2^(a+b+d+1) B(a+1, b+d+1)
    for d in (0, 1, 2 * n - 1):
        exact = 2 ** (a + b + d + 1) * math.exp(math.lgamma(a + 1) + math.lgamma(b + d + 1) - math.lgamma(a + b + d + 2))
        got = math.fsum(r.weights * (1 + r.nodes) ** d)
        assert abs(got - exact) <= 1e-12 * exact


@pytest.mark.parametrize("n", [5, 20, 64])
def test_against_reference_rules(n):
    r = gauss_laguerre(n, 0.7)
    x, w = roots_genlaguerre(n, 0.7)
    np.testing.assert_allclose(r.nodes, x, rtol=1e-12)
    np.testing.assert_allclose(r.weights, w, rtol=1e-9)
    r = gauss_jacobi(n, 0.5, -0.3)
    x, w = roots_jacobi(n, 0.5, -0.3)
    np.testing.assert_allclose(r.nodes, x, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(r.weights, w, rtol=1e-9)


@pytest.mark.parametrize("alpha", [-2 / 3 + 0.5j, -0.8 - 1j / 3, 0.5 + 2j])
@pytest.mark.parametrize("n", [8, 64])
def test_complex_laguerre_moments(alpha, n):
    r = gauss_laguerre(n, alpha)
    for d in (0, 1, 3, 6, 12, 2 * n - 1):
        exact = complex_gamma(alpha + 1 + d)
        assert abs(np.sum(r.weights * r.nodes ** d) - exact) <= 1e-12 * abs(exact)


def test_complex_jacobi_moment():
    a, b = 0.2 + 0.3j, -0.4 - 0.1j
    r = gauss_jacobi(24, a, b)
    exact = 2 ** (a + b + 1) * complex_gamma(a + 1) * complex_gamma(b + 1) / complex_gamma(a + b + 2)
    assert abs(np.sum(r.weights) - exact) <= 1e-13 * abs(exact)


def test_mapped_rule():
    r = gauss_legendre(6).mapped(0.0, 3.0)
    assert r.integrate(lambda x: x ** 5) == pytest.approx(3 ** 6 / 6, rel=1e-14)
    with pytest.raises(ValueError):
        gauss_laguerre(3).mapped(0, 1)


@pytest.mark.parametrize("bad", [0, MAX_NODES + 1, 2.0, True])
def test_rule_size_checked(bad):
    with pytest.raises(ValueError):
        gauss_laguerre(bad)


def test_exponent_checked():
    with pytest.raises(ValueError):
        gauss_laguerre(4, -1.0)
    with pytest.raises(ValueError):
        gauss_jacobi(4, 0.0, -1.5)

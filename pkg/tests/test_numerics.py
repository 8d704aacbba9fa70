import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscbif._numerics import (G7_W, K15_W, K15_X, adaptive_gk15, gauss_jacobi_origin, gauss_legendre,
                              golden_section, sine_inverse_primitive)
from conftest import exact_sine_primitive


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_rule_exact_to_degree_22(deg):
    exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
    assert abs(K15_W @ K15_X ** deg - exact) < 1e-14


@pytest.mark.parametrize("deg", range(0, 14))
def test_embedded_gauss_rule_exact_to_degree_13(deg):
    exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
    assert abs(G7_W @ K15_X ** deg - exact) < 1e-14


def test_gauss_legendre_vectorized():
    a = np.array([0.0, 1.0, -2.0])
    b = np.array([1.0, 3.0, 0.5])
    got = gauss_legendre(np.exp, a, b)
    assert np.allclose(got, np.exp(b) - np.exp(a), rtol=1e-14)


@pytest.mark.parametrize("r", [0.0, 0.5, 1.3, 2.0])
def test_gauss_jacobi_absorbs_power(r):
    got = gauss_jacobi_origin(np.cos, r, np.array([0.7]))[0]
    from scipy.integrate import quad
    ref, _ = quad(lambda t: t ** r * math.cos(t), 0, 0.7, epsabs=0, epsrel=1e-13)
    assert got == pytest.approx(ref, rel=1e-13)


def test_adaptive_gk15_smooth_and_peaked():
    val, err, _, ok = adaptive_gk15(lambda x: 1.0 / (1e-4 + x * x), [-1.0, 1.0], rtol=1e-12)
    assert ok
    assert val == pytest.approx(2 * math.atan(100.0) * 100.0, rel=1e-11)
    assert err < 1e-9


@pytest.mark.parametrize("r", [-1.5, -1.0, 0.0, 0.5, 1.0, 3.0])
@pytest.mark.parametrize("x", [1e-4, 3e-3, 0.05, 0.7, 12.0, 1e4])
def test_sine_primitive_matches_expint(r, x):
    got = sine_inverse_primitive(r, np.array([x]))[0]
    ref = exact_sine_primitive(r, x)
    assert abs(got - ref) <= 1e-12 * max(abs(ref), x ** (r + 2) if x < 1 else 1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.2, 3.0))
def test_golden_section_on_parabola(c, width):
    x, fx, nev = golden_section(lambda t: (t - c) ** 2, c - width, c + 0.7 * width, rtol=1e-10)
    assert abs(x - c) <= 1e-9 * max(1.0, abs(c)) + 1e-9
    assert nev < 200


def test_golden_section_absolute_floor_at_zero():
    x, _, nev = golden_section(lambda t: t, 0.0, 1e-3, rtol=1e-10, atol=1e-12)
    assert x < 1e-11 and nev < 60

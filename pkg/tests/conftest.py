import mpmath
import numpy as np
import pytest


def exact_sine_primitive(r, x, dps=40):
    """int_0^x t**r sin(1/t) dt = Im(X**(1-a) E_a(-iX)) with X = 1/x, a = r + 2."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(r) + 2
        big_x = 1 / mpmath.mpf(x)
        return float(mpmath.im(big_x ** (1 - a) * mpmath.expint(a, -1j * big_x)))


@pytest.fixture
def sine_primitive_ref():
    return exact_sine_primitive


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

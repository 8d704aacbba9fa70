import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from oscbif import (DegenerateBranch, Nonlinearity, SingularAtPeak, branch, lambda_n_sequence, lambda_of_nu,
                    nonexistence_threshold, profile, solutions_at_lambda)
from oscbif.nonlinearity import peak_at, window, zero_at
from oscbif.timemap import Method, shooting_lambda

Q0 = Nonlinearity.sine_u(0.0)


@pytest.fixture(scope="module")
def q0_branch():
    return branch(Q0, 1.0, 1)


# ---- lambda(nu) -------------------------------------------------------------

@pytest.mark.parametrize("nu", [0.01, 1.0, 37.0])
def test_linear_gives_first_eigenvalue(nu):
    assert lambda_of_nu(Nonlinearity.linear(), 1.0, nu) == pytest.approx(math.pi ** 2, abs=1e-8)


def test_constant_parabola_value():
    assert lambda_of_nu(Nonlinearity.constant(), 1.0, 1.0) == pytest.approx(8.0, rel=1e-12)


@pytest.mark.parametrize("nl,n", [(Q0, 1), (Nonlinearity.sine_u(2.0), 2), (Nonlinearity.inverse_sine_u(1.0), 1),
                                  (Nonlinearity.inverse_sine_u(0.3), 2)],
                         ids=["q0", "q2", "r1", "r0.3"])
@pytest.mark.parametrize("frac", [0.3, 0.5, 0.8])
def test_time_map_matches_shooting(nl, n, frac):
    lo, hi = window(nl, n)
    nu = lo + frac * (hi - lo)
    shot, bound = shooting_lambda(nl, 1.0, nu)
    assert bound < 1e-7
    assert lambda_of_nu(nl, 1.0, nu) == pytest.approx(shot, rel=1e-6)


def _piecewise_fhat_shifted(nl, nu, delta=1e-5):
    """Gauss sums between consecutive zeros of sin(1/x), x = s - alpha; scipy quad next to the peak."""
    from scipy.integrate import IntegrationWarning, quad
    alpha = nl.shift_alpha
    x_nu = nu - alpha
    big_a = float(nl.F(np.array(nu)))
    k = np.arange(1, int(1 / (math.pi * delta)) + 1)
    z = 1 / (k * math.pi)
    edges = np.unique(np.concatenate([[delta, x_nu], z[(z > delta) & (z < x_nu)]]))
    xs, ws = np.polynomial.legendre.leggauss(30)
    a, b = edges[:-2], edges[1:-1]
    x = 0.5 * (a + b)[:, None] + 0.5 * (b - a)[:, None] * xs
    body = float(np.sum(0.5 * (b - a) * ((big_a - nl.F(alpha + x)) ** -0.5 @ ws)))
    with warnings.catch_warnings():
        # roundoff warning from the inverse-square-root endpoint; the value is accurate to ~1e-12
        warnings.simplefilter("ignore", IntegrationWarning)
        last, _ = quad(lambda t: (big_a - float(nl.F(np.array(alpha + t)))) ** -0.5, edges[-2], x_nu,
                       epsabs=0, epsrel=1e-12, limit=200)
    # f vanishes below alpha; on [0, delta] F(alpha + x) <= 2 delta is negligible against A
    return (alpha + delta) / math.sqrt(big_a) + body + last


@pytest.mark.parametrize("frac", [0.3, 0.5, 0.8])
def test_time_map_shifted_against_piecewise_reference(frac):
    # integrators step over the oscillation at the accumulation point, so the reference is a quadrature
    nl = Nonlinearity.shifted_inverse_sine(1.0, 0.0)
    lo, hi = window(nl, 1)
    nu = lo + frac * (hi - lo)
    ref = 2 * _piecewise_fhat_shifted(nl, nu) ** 2
    assert lambda_of_nu(nl, 1.0, nu) == pytest.approx(ref, rel=1e-8)


def test_shooting_reproduces_eigenvalue():
    shot, _ = shooting_lambda(Nonlinearity.linear(), 1.0, 2.0)
    assert shot == pytest.approx(math.pi ** 2, rel=1e-7)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 20.0), st.floats(0.05, 0.95))
def test_scaling_law(c, frac):
    lo, hi = window(Q0, 1)
    nu = lo + frac * (hi - lo)
    base = lambda_of_nu(Q0, 1.0, nu)
    assert lambda_of_nu(Q0, c, nu) == pytest.approx(base / c ** 2, rel=1e-13)


def test_singular_at_zero_of_f():
    with pytest.raises(SingularAtPeak):
        lambda_of_nu(Q0, 1.0, zero_at(Q0, 2))


@pytest.mark.parametrize("nl,n", [(Q0, 1), (Q0, 4), (Nonlinearity.inverse_sine_u(1.0), 2)], ids=["q0n1", "q0n4", "r1n2"])
def test_endpoint_divergence(nl, n):
    lo, hi = window(nl, n)
    width = hi - lo
    for end, sign in ((lo, 1), (hi, -1)):
        lams = [lambda_of_nu(nl, 1.0, end + sign * d * width) for d in (1e-2, 1e-3, 1e-4)]
        assert lams[0] < lams[1] < lams[2]


# ---- branches -----------------------------------------------------------------

def test_branch_interior_minimum(q0_branch):
    br = q0_branch
    lo, hi = br.window
    assert lo < br.nu_at_min < hi
    assert all(lo < p.nu < hi for p in br.points)
    assert br.lambda_min == pytest.approx(min(p.lam for p in br.points if p.ok))
    assert br.lambda_min == pytest.approx(46.3948, rel=1e-5)


def test_branch_minimum_is_refined(q0_branch):
    br = q0_branch
    for d in (1e-4, -1e-4):
        assert lambda_of_nu(Q0, 1.0, br.nu_at_min * (1 + d)) >= br.lambda_min


def test_branch_scales_with_length(q0_branch):
    br2 = branch(Q0, 2.0, 1)
    assert br2.lambda_min == pytest.approx(q0_branch.lambda_min / 4, rel=1e-9)


def test_inverse_branch_stays_in_window():
    nl = Nonlinearity.inverse_sine_u(1.0)
    br = branch(nl, 1.0, 3, grid=32)
    assert br.window == (zero_at(nl, 4), zero_at(nl, 3))
    assert all(br.window[0] < p.nu < br.window[1] for p in br.points)


def test_linear_branch_is_degenerate():
    br = branch(Nonlinearity.linear(), 1.0, 1, grid=16, window_override=(0.5, 2.0))
    assert br.degenerate
    with pytest.raises(DegenerateBranch):
        solutions_at_lambda(br, 20.0)


# ---- multiplicity ------------------------------------------------------------

@pytest.mark.parametrize("factor", [1.1, 2.0, 10.0])
def test_two_solutions_above_minimum(q0_branch, factor):
    lam = factor * q0_branch.lambda_min
    sols = solutions_at_lambda(q0_branch, lam)
    assert len(sols) >= 2
    for nu in sols:
        assert lambda_of_nu(Q0, 1.0, nu) == pytest.approx(lam, rel=1e-8)


def test_tangent_point_at_minimum(q0_branch):
    assert solutions_at_lambda(q0_branch, q0_branch.lambda_min) == [q0_branch.nu_at_min]


def test_nothing_below_minimum(q0_branch):
    assert solutions_at_lambda(q0_branch, 0.5 * q0_branch.lambda_min) == []


@settings(max_examples=15, deadline=None)
@given(st.floats(1.0, 50.0), st.floats(1.0, 3.0))
def test_monotone_solvability(a, b):
    br = branch(Q0, 1.0, 1, grid=32)
    lam1 = br.lambda_min * (1 + 1e-3) * a
    lam2 = lam1 * b
    if solutions_at_lambda(br, lam1):
        assert solutions_at_lambda(br, lam2)


# ---- sequences ---------------------------------------------------------------

def test_sequence_q_r0_grows_linearly():
    seq = lambda_n_sequence(Q0, 1.0, 12)
    lams = seq.values()
    assert np.all(np.diff(lams) > 0)
    ratios = lams / seq.ns()
    assert ratios[-1] / ratios[-4] == pytest.approx(1.0, abs=0.05)
    assert all(e.method is Method.TIME_MAP_1D for e in seq.entries.values())


def test_sequence_r_r2_increasing():
    seq = lambda_n_sequence(Nonlinearity.inverse_sine_u(2.0), 1.0, 10)
    assert np.all(np.diff(seq.values()) > 0)


def test_sequence_loose_defaults_agree_with_tight_branch():
    seq = lambda_n_sequence(Q0, 1.0, 3, n_min=3)
    tight = branch(Q0, 1.0, 3)
    assert seq.entries[3].lam == pytest.approx(tight.lambda_min, rel=1e-8)


# ---- profiles ----------------------------------------------------------------

def test_profile_parabola():
    p = profile(Nonlinearity.constant(), 1.0, 1.0, samples=101)
    assert p.lam == pytest.approx(8.0, rel=1e-12)
    assert np.max(np.abs(p.u - 4 * p.x * (1 - p.x))) < 1e-8


@pytest.mark.parametrize("c", [0.3, 5.0])
def test_profile_sine_eigenfunction(c):
    p = profile(Nonlinearity.linear(), 1.0, c, samples=101)
    assert np.max(np.abs(p.u - c * np.sin(math.pi * p.x))) < 1e-6


def test_profile_shape_sine_u():
    nu = peak_at(Q0, 1)
    p = profile(Q0, 1.0, nu, samples=201)
    assert p.u[100] == pytest.approx(nu, rel=1e-12) and p.x[100] == pytest.approx(0.5)
    assert p.u[0] == 0 and p.u[-1] == 0
    assert np.all(np.diff(p.u[:101]) > 0) and np.all(np.diff(p.u[100:]) < 0)


def test_profile_matches_ode_solution():
    nu = peak_at(Q0, 1)
    p = profile(Q0, 1.0, nu, samples=201)
    sol = solve_ivp(lambda _x, y: [y[1], -p.lam * float(Q0.f(np.array(max(y[0], 0.0))))], (0.5, 1.0),
                    [nu, 0.0], method="DOP853", rtol=1e-12, atol=1e-12, dense_output=True)
    right = p.x >= 0.5
    assert np.max(np.abs(sol.sol(p.x[right])[0] - p.u[right])) < 1e-7 * nu


def _residual(nl, nu, samples):
    p = profile(nl, 1.0, nu, samples=samples)
    h = p.x[1] - p.x[0]
    upp = (p.u[2:] - 2 * p.u[1:-1] + p.u[:-2]) / h ** 2
    return float(np.max(np.abs(-upp - p.lam * nl.f(p.u[1:-1]))))


@pytest.mark.parametrize("nl,nu", [(Q0, peak_at(Q0, 1)), (Nonlinearity.sine_u(1.0), 5 * math.pi / 2)], ids=["q0", "q1"])
def test_profile_residual_second_order(nl, nu):
    res = [_residual(nl, nu, s) for s in (101, 201, 401)]
    assert res[0] > res[1] > res[2]
    orders = np.log2(np.array(res[:-1]) / np.array(res[1:]))
    assert np.all(orders > 1.8)


# ---- nonexistence threshold --------------------------------------------------

def test_threshold_power_two():
    assert nonexistence_threshold(Nonlinearity.power(2.0), 1.0, 0.1) == pytest.approx(10 * math.pi ** 2, rel=1e-10)


def test_threshold_inverse_sine_r2():
    assert nonexistence_threshold(Nonlinearity.inverse_sine_u(2.0), 1.0, 0.01) >= math.pi ** 2 / (2 * 0.01)


def test_threshold_linear_is_eigenvalue():
    assert nonexistence_threshold(Nonlinearity.linear(), 1.0, 0.37) == pytest.approx(math.pi ** 2, rel=1e-12)


def test_threshold_rejects_superlinear_at_zero():
    with pytest.raises(ValueError):
        nonexistence_threshold(Nonlinearity.power(0.5), 1.0, 0.1)

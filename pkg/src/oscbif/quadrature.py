"""Singular and oscillatory quadratures behind the time map and its estimates.

``fhat(nu) = int_0^nu ds / sqrt(F(nu) - F(s))`` has an inverse square-root
singularity at s = nu.  With s = nu - w**2 it becomes

    int_0^sqrt(nu) 2 w / sqrt(D(nu, w**2)) dw,    D(nu, gap) = int_{nu-gap}^{nu} f,

whose integrand tends to 2 / sqrt(f(nu)) as w -> 0.  D is evaluated from the
gap directly so that no cancellation occurs near the peak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import adaptive_gk15, gauss_legendre, golden_section, sine_inverse_primitive
from .exceptions import NonpositiveGap, SingularAtPeak
from .nonlinearity import Family, Nonlinearity, peak_at

EPS_CUT = 0.1


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool = True


@dataclass(frozen=True)
class HnAnalysis:
    n: int
    window_cut: float
    inf_value: float
    argmin: float
    boundary_limit: float
    evaluations: int = 0


# --------------------------------------------------------------------------
# fhat
# --------------------------------------------------------------------------

def _gap_breaks(nl: Nonlinearity, nu: float) -> np.ndarray:
    """Initial partition of [0, nu] in the gap variable nu - s."""
    h = nl.local_scale(nu)
    if nl.family is Family.SINE_U:
        # the oscillation period is uniform in s
        gaps = np.arange(0.0, nu, max(math.pi / 2, nu / 4000))
    elif nl.family is Family.USER_TABLE:
        gaps = nu * np.linspace(0.0, 1.0, 65)
    elif h > 0 and h < nu:
        lin = h * np.arange(0, 65)
        lin = lin[lin < nu]
        geo = lin[-1] * 1.25 ** np.arange(1, 400)
        gaps = np.concatenate([lin, geo[geo < nu]])
    else:
        gaps = nu * np.linspace(0.0, 1.0, 9)[:-1]
    if nl.family is Family.SHIFTED_INVERSE_SINE and nu > nl.shift_alpha:
        gaps = np.append(gaps, nu - nl.shift_alpha)
    gaps = np.unique(np.append(gaps[gaps < nu], nu))
    return gaps


def _w_integral(nl: Nonlinearity, nu: float, gap_max: float, tol: float, rtol: float):
    """Regularized integral over gaps in [0, gap_max] in the variable w = sqrt(gap)."""

    def integrand(w):
        gap = w * w
        d = nl.gap_integral(nu, gap.ravel()).reshape(gap.shape)
        if np.any(d <= 0):
            raise NonpositiveGap(f"F({nu!r}) - F(s) <= 0 for some s < nu")
        return 2.0 * w / np.sqrt(d)

    gaps = _gap_breaks(nl, nu)
    gaps = np.append(gaps[gaps < gap_max], gap_max)
    return adaptive_gk15(integrand, np.sqrt(gaps), atol=tol, rtol=rtol)


def _origin_cut(r: float, gamma: float, big_a: float, x_nu: float, rtol: float) -> float:
    """Cut X below which F is replaced by its smooth part plus a first-order term.

    With P(x) = gamma x**(r+1)/(r+1) and F = P + gamma I_r, the neglected
    second-order remainder on [0, X] is bounded by K A**(-5/2) X**(2r+5)
    (using |int_0^y I_r| <= 2 y**(r+4) for small y), which is held below a
    tenth of the relative target against the lower bound x_nu / sqrt(A).
    """
    k = gamma * gamma * (3.0 / (r + 1) + 0.375 * (math.pi + 2) ** 2 / (2 * r + 5))
    return (0.1 * rtol * x_nu * big_a * big_a / k) ** (1.0 / (2 * r + 5))


def _origin_remainder(r: float, gamma: float, big_a: float, cut: float) -> float:
    k = gamma * gamma * (3.0 / (r + 1) + 0.375 * (math.pi + 2) ** 2 / (2 * r + 5))
    return k * big_a ** -2.5 * cut ** (2 * r + 5)


def _fhat_inverse(nl: Nonlinearity, nu: float, tol: float, rtol: float) -> QuadratureResult:
    """fhat for the inverse-sine families, splitting off the wiggles near x = 0.

    x = s - alpha is the distance to the accumulation point.  The pieces are
    gap in [0, x_nu/2] in the w variable, x in [X, x_nu/2] in u = 1/x with
    period-aligned panels, and x in [0, X] from the smooth part of F with an
    exact first-order correction.  On [0, alpha] f vanishes and the
    integrand is the constant A**(-1/2).
    """
    alpha = nl.shift_alpha
    r, gamma = nl.r, nl.gamma
    x_nu = nu - alpha
    big_a = float(nl.F(np.array(nu)))
    x_c = 0.5 * x_nu
    cut = min(_origin_cut(r, gamma, big_a, x_nu, rtol), 0.25 * x_c)
    v1, e1, n1, ok1 = _w_integral(nl, nu, x_c, 0.5 * tol, 0.5 * rtol)

    def in_u(u):
        d = big_a - nl.F(alpha + 1.0 / u)
        if np.any(d <= 0):
            raise NonpositiveGap(f"F({nu!r}) - F(s) <= 0 for some s < nu")
        return d ** -0.5 / (u * u)

    u_lo, u_hi = 1.0 / x_c, 1.0 / cut
    ub = np.unique(np.concatenate([[u_lo, u_hi], 2 * math.pi * np.arange(math.ceil(u_lo / (2 * math.pi)),
                                                                        math.floor(u_hi / (2 * math.pi)) + 1)]))
    v2, e2, n2, ok2 = adaptive_gk15(in_u, ub, atol=0.25 * tol, rtol=0.25 * rtol)
    smooth = gauss_legendre(lambda x: (big_a - gamma * x ** (r + 1) / (r + 1)) ** -0.5, 0.0, cut)
    j = cut * sine_inverse_primitive(r, np.array([cut]))[0] - sine_inverse_primitive(r + 1, np.array([cut]))[0]
    v3 = float(smooth) + 0.5 * big_a ** -1.5 * gamma * j
    e3 = _origin_remainder(r, gamma, big_a, cut)
    v4 = alpha * big_a ** -0.5
    return QuadratureResult(float(v1 + v2 + v3 + v4), float(e1 + e2 + e3), int(n1 + n2 + 40), bool(ok1 and ok2))


def fhat(nl: Nonlinearity, nu: float, tol: float = 0.0, rtol: float = 1e-11) -> QuadratureResult:
    """Singular quadrature int_0^nu ds / sqrt(F(nu) - F(s)).

    ``tol`` is an absolute and ``rtol`` a relative target; the larger wins.
    Raises SingularAtPeak when f(nu) = 0 and NonpositiveGap when the
    difference F(nu) - F(s) vanishes at a sampled s < nu.
    """
    nu = float(nu)
    if not nu > 0:
        raise ValueError("nu must be positive")
    if float(nl.f(np.array(nu))) == 0.0:
        raise SingularAtPeak(f"f({nu!r}) = 0; the time-map integral diverges")
    if nl.family in (Family.INVERSE_SINE_U, Family.SHIFTED_INVERSE_SINE):
        return _fhat_inverse(nl, nu, tol, rtol)
    val, err, nev, ok = _w_integral(nl, nu, nu, tol, rtol)
    return QuadratureResult(float(val), float(err), int(nev), bool(ok))


# --------------------------------------------------------------------------
# Normalized averages h_n
# --------------------------------------------------------------------------

def _comparison(base: Nonlinearity, family_kind) -> Nonlinearity:
    """The gamma-normalized comparison function t**r * osc(t) for the family."""
    kind = family_kind.value if isinstance(family_kind, Family) else str(family_kind).lower()
    if kind in ("q", "sine_u"):
        return Nonlinearity.sine_u(base.r)
    if kind in ("r", "inverse_sine_u"):
        return Nonlinearity.inverse_sine_u(base.r)
    raise ValueError(f"family_kind must be 'q' or 'r', got {family_kind!r}")


def window_cut(r: float, family_kind, eps: float = EPS_CUT) -> float:
    """The constant c_r splitting the h_n analysis into bulk and boundary window."""
    kind = family_kind.value if isinstance(family_kind, Family) else str(family_kind).lower()
    if kind in ("q", "sine_u"):
        return r + 1 + eps
    return 2 * (math.pi + 2) * (r + 1 + eps)


def hn(base: Nonlinearity, family_kind, n: int, s):
    """h_n(s) = int_s^{nu_n} f2 / (2 nu_n**r (nu_n - s)), vectorized over s."""
    f2 = _comparison(base, family_kind)
    nu = peak_at(f2, n)
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr >= nu) or np.any(s_arr < 0):
        raise ValueError("hn needs 0 <= s < nu_n")
    gap = nu - s_arr
    out = f2.gap_integral(nu, gap.ravel()).reshape(gap.shape) / (2 * nu ** f2.r * gap)
    return float(out) if out.ndim == 0 else out


def hn_infimum(base: Nonlinearity, family_kind, n: int, grid: int = 2000,
               eps: float = EPS_CUT) -> HnAnalysis:
    """Grid-and-refine infimum of h_n on [0, nu_n).

    Half of the grid is uniform on [0, nu_n - w], the other half is
    log-spaced inside the boundary window of width w = min(c_r, nu_n / 2).
    Golden-section search then refines around the three smallest samples.
    """
    if grid < 1000:
        raise ValueError("grid must be at least 1000")
    f2 = _comparison(base, family_kind)
    nu = peak_at(f2, n)
    c_r = window_cut(f2.r, family_kind, eps)
    width = min(c_r, nu / 2)
    half = grid // 2
    s = np.concatenate([np.linspace(0.0, nu - width, grid - half, endpoint=False),
                        nu - width * np.logspace(0.0, -10.0, half)])
    vals = hn(base, family_kind, n, s)
    nev = s.size
    order = np.argsort(vals)
    best_s, best_v = float(s[order[0]]), float(vals[order[0]])
    for i in order[:3]:
        lo = s[max(i - 1, 0)]
        hi = s[min(i + 1, s.size - 1)]
        if hi <= lo:
            continue
        x, v, k = golden_section(lambda x: hn(base, family_kind, n, x), float(lo), float(hi),
                                 rtol=1e-10, atol=1e-12 * nu)
        nev += k
        if v < best_v:
            best_s, best_v = float(x), float(v)
    boundary = hn(base, family_kind, n, nu * (1 - 1e-9))
    return HnAnalysis(n, c_r, best_v, best_s, float(boundary), nev)


# --------------------------------------------------------------------------
# int_0^nu t**r sin(1/t) dt by alternating pi-interval sums
# --------------------------------------------------------------------------

def alternating_terms(r: float, k_start: int, count: int) -> np.ndarray:
    """a_k = int_0^1 sin(pi eta) / (eta + k)**(r+2) d eta for k = k_start..k_start+count-1."""
    if r <= -2:
        raise ValueError("need r > -2")
    if k_start < 1:
        raise ValueError("terms start at k = 1")
    a = r + 2.0
    k = np.arange(k_start, k_start + count, dtype=float)
    return gauss_legendre(lambda eta: np.sin(math.pi * eta) * (eta + k[:, None]) ** (-a),
                          np.zeros(count), np.ones(count))


def _euler_alternating(b: np.ndarray, tol: float):
    """Sum of (-1)**j b_j by the Euler transform.

    For a completely monotone b the transformed terms ((-Delta)**i b)_0 / 2**(i+1)
    are positive and nonincreasing in i, and the remainder after m terms is
    at most ((-Delta)**m b)_0 / 2**m.  Returns (sum, remainder_bound, terms_used).
    """
    diff = b.astype(float).copy()
    total = 0.0
    for i in range(b.size - 1):
        term = diff[0] / 2.0 ** (i + 1)
        if term < tol / 2:
            return total, diff[0] / 2.0 ** i, i
        total += term
        diff = diff[:-1] - diff[1:]
    return total, diff[0] / 2.0 ** (b.size - 1), b.size - 1


def oscillatory_integral(r: float, nu: float, tol: float | None = None) -> QuadratureResult:
    """int_0^nu t**r sin(1/t) dt for r > -2.

    With u = 1/t the integral is int_{1/nu}^inf sin(u) u**-(r+2) du.  It is
    split at pi*N, N the least integer with pi*N >= 1/nu.  The head is a
    finite adaptive quadrature; the tail is
    pi**-(r+1) * sum_{k>=N} (-1)**k a_k with a_k from ``alternating_terms``,
    summed with Euler's transform and a rigorous remainder bound.

    ``tol`` defaults to 1e-13 * nu**(r+2), the natural scale of the result.
    """
    if r <= -2:
        raise ValueError("oscillatory_integral needs r > -2")
    if not nu > 0:
        raise ValueError("nu must be positive")
    a = r + 2.0
    if tol is None:
        tol = 1e-13 * nu ** a
    u0 = 1.0 / nu
    big_n = max(1, math.ceil(u0 / math.pi - 1e-15))
    if math.pi * big_n < u0:
        big_n += 1
    scale = math.pi ** (-(r + 1))
    head, head_err, nev = 0.0, 0.0, 0
    u_split = math.pi * big_n
    if u_split > u0:
        breaks = np.geomspace(u0, u_split, 2 + min(40, int(math.log(u_split / u0) / math.log(1.5)) + 1))
        head, head_err, nev, _ = adaptive_gk15(lambda u: np.sin(u) * u ** (-a), breaks,
                                               atol=tol / 4, rtol=0.0)
    count = 96
    b = alternating_terms(r, big_n, count)
    nev += 20 * count
    tail, tail_err, _ = _euler_alternating(b, tol / (2 * scale))
    tail *= (-1) ** big_n * scale
    tail_err *= scale
    return QuadratureResult(float(head + tail), float(head_err + tail_err), nev, True)

"""Low-level quadrature and search kernels shared by the public modules.

Everything here is vectorized over numpy arrays; the public modules call these
with whole grids of abscissae at once.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

_GL_ORDER = 20
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)

# QUADPACK qk15 abscissae/weights (positive half, descending; last is the centre).
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

K15_X = np.concatenate([-_XGK[:-1], _XGK[::-1]])
K15_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
G7_W = np.zeros(15)
G7_W[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


def gauss_legendre(fun, a, b):
    """Fixed 20-point Gauss-Legendre rule on [a, b], vectorized over a and b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[..., None] + half[..., None] * _GL_X
    return half * (fun(x) @ _GL_W)


def gauss_legendre_below(fun, b: float, gap):
    """Gauss-Legendre rule on [b - gap, b] parameterized by the gap itself.

    Keeps the length exact when gap is below the spacing of floats near b.
    """
    gap = np.asarray(gap, dtype=float)
    x = b - (0.5 * gap)[..., None] * (1.0 - _GL_X)
    return 0.5 * gap * (fun(x) @ _GL_W)


@lru_cache(maxsize=32)
def _jacobi_rule(r: float):
    x, w = roots_jacobi(_GL_ORDER, 0.0, r)
    return x, w


def gauss_jacobi_origin(phi, r: float, b):
    """Integral of t**r * phi(t) over [0, b] with the t**r factor in the weight."""
    b = np.asarray(b, dtype=float)
    if r == 0.0:
        return gauss_legendre(phi, np.zeros_like(b), b)
    x, w = _jacobi_rule(float(r))
    t = 0.5 * b[..., None] * (1.0 + x)
    return (0.5 * b) ** (r + 1.0) * (phi(t) @ w)


def _gk_panel(fun, lo, hi):
    half = 0.5 * (hi - lo)
    x = (0.5 * (hi + lo))[:, None] + half[:, None] * K15_X
    fx = fun(x)
    k = half * (fx @ K15_W)
    g = half * (fx @ G7_W)
    return k, np.abs(k - g), fx.size


def adaptive_gk15(fun, breaks, atol=0.0, rtol=1e-10, max_intervals=100_000):
    """Vectorized adaptive Gauss-Kronrod (7, 15) quadrature.

    ``fun`` must accept an array of abscissae of any shape.  ``breaks`` is the
    initial partition.  Each sweep bisects every interval whose |K15 - G7|
    exceeds its length-proportional share of the target, in one vectorized
    call.

    Returns ``(value, error_estimate, n_evaluations, converged)``.
    """
    breaks = np.asarray(breaks, dtype=float)
    span = breaks[-1] - breaks[0]
    lo, hi = breaks[:-1], breaks[1:]
    k, err, nev = _gk_panel(fun, lo, hi)
    while True:
        total = k.sum()
        total_err = err.sum()
        if not np.isfinite(total):
            return total, np.inf, nev, False
        target = max(atol, rtol * abs(total))
        if total_err <= target:
            return total, total_err, nev, True
        refine = err > 0.5 * target * (hi - lo) / span
        refine[np.argmax(err)] = True
        tiny = (hi - lo) <= 64 * np.finfo(float).eps * np.maximum(1.0, np.abs(hi))
        refine &= ~tiny
        if not refine.any() or lo.size + refine.sum() > max_intervals:
            return total, total_err, nev, False
        mid = 0.5 * (lo[refine] + hi[refine])
        new_lo = np.concatenate([lo[refine], mid])
        new_hi = np.concatenate([mid, hi[refine]])
        nk, nerr, n = _gk_panel(fun, new_lo, new_hi)
        nev += n
        keep = ~refine
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        k = np.concatenate([k[keep], nk])
        err = np.concatenate([err[keep], nerr])


# --------------------------------------------------------------------------
# Primitive of t**r * sin(1/t)
# --------------------------------------------------------------------------

_ASYM_TERMS = 60
_SERIES_TERMS = 12
_U_FLOOR = 1e-3


def _asymptotic_tail(a: float, big_u):
    """Imag part of the integral of exp(iu) u**-a over [U, inf) for large U."""
    big_u = np.asarray(big_u, dtype=float)
    inf = np.isinf(big_u)
    # the tail vanishes as U -> inf (a > 0)
    big_u = np.where(inf, 1.0, big_u)
    term = np.ones(big_u.shape, dtype=complex)
    acc = term.copy()
    for k in range(_ASYM_TERMS - 1):
        term = term * (-1j) * (a + k) / big_u
        acc = acc + term
    return np.where(inf, 0.0, (1j * np.exp(1j * big_u) * big_u ** (-a) * acc).imag)


@lru_cache(maxsize=64)
def _sine_table(a: float):
    """Panel edges (descending) and integrals of sin(u) u**-a from each edge to infinity."""
    u_top = 80.0 + 4.0 * a
    edges = [u_top]
    e = u_top
    while e > _U_FLOOR:
        e = e - min(math.pi / 8.0, e / 8.0)
        edges.append(max(e, _U_FLOOR))
    edges = np.array(edges)
    pieces = gauss_legendre(lambda u: np.sin(u) * u ** (-a), edges[1:], edges[:-1])
    cum = np.concatenate([[0.0], np.cumsum(pieces)]) + _asymptotic_tail(a, u_top)
    return edges, cum


def _near_origin(a: float, lo, hi):
    """Integral of sin(u) u**-a over [lo, hi] with hi <= 1e-3, by the Taylor series of sin."""
    out = np.zeros(np.broadcast(lo, hi).shape)
    for j in range(_SERIES_TERMS):
        p = 2 * j + 2 - a
        coef = (-1) ** j / math.factorial(2 * j + 1)
        if abs(p) < 1e-12:
            out = out + coef * (np.log(hi) - np.log(lo))
        else:
            out = out + coef * (hi ** p - lo ** p) / p
    return out


def sine_inverse_primitive(r: float, x):
    """Integral of t**r sin(1/t) over [0, x] for x > 0 and r > -2 (vectorized)."""
    a = float(r) + 2.0
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        big_u = 1.0 / x
    edges, cum = _sine_table(a)
    out = np.empty(x.shape)
    far = big_u >= edges[0]
    if np.any(far):
        out[far] = _asymptotic_tail(a, big_u[far])
    mid = (~far) & (big_u >= edges[-1])
    if np.any(mid):
        uu = big_u[mid]
        # edges descend; k is the panel whose upper edge is edges[k]
        k = np.searchsorted(-edges, -uu, side="right") - 1
        k = np.clip(k, 0, edges.size - 2)
        out[mid] = cum[k] + gauss_legendre(lambda u: np.sin(u) * u ** (-a), uu, edges[k])
    low = big_u < edges[-1]
    if np.any(low):
        uu = big_u[low]
        out[low] = cum[-1] + _near_origin(a, uu, edges[-1])
    return out


# --------------------------------------------------------------------------
# Golden-section search
# --------------------------------------------------------------------------

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(fun, lo: float, hi: float, rtol: float = 1e-8, max_iter: int = 200, atol: float = 0.0):
    """Minimize a unimodal scalar function on [lo, hi]; returns (x_min, f_min, n_evals).

    Stops once the bracket is below max(rtol * max(|lo|, |hi|), atol).
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    nev = 2
    while (hi - lo) > max(rtol * max(abs(lo), abs(hi)), atol) and nev < max_iter:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = fun(x2)
        nev += 1
    if f1 <= f2:
        return x1, f1, nev
    return x2, f2, nev

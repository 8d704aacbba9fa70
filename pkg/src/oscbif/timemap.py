"""Exact one-dimensional bifurcation engine on the interval (0, L).

Multiplying -u'' = lam f(u) by u' gives u'**2/2 + lam F(u) = lam F(nu) for the
positive symmetric solution with peak nu.  Separating variables on the half
interval [0, L/2] yields L/2 = fhat(nu) / sqrt(2 lam), that is

    lam(nu) = 2 fhat(nu)**2 / L**2.

Every positive solution is symmetric and determined by its peak, so the
branch over one window between consecutive zeros of f is the whole solution
set with norm in that window.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ._numerics import gauss_legendre, golden_section
from .exceptions import DegenerateBranch, OscbifError, SingularAtPeak
from .nonlinearity import Family, Nonlinearity, classify_limits, peak_at, window
from .quadrature import _gap_breaks, fhat

BRANCH_RTOL = 1e-11


class Method(str, Enum):
    TIME_MAP_1D = "TimeMap1D"
    RADIAL_UPPER_BOUND = "RadialUpperBound"


@dataclass(frozen=True)
class BranchPoint:
    nu: float
    lam: float
    quad_error: float
    ok: bool = True
    note: str = ""


@dataclass(frozen=True)
class BifurcationBranch:
    n: int
    window: tuple
    points: tuple
    lambda_min: float
    nu_at_min: float
    nl: Nonlinearity
    L: float
    degenerate: bool = False

    def lam(self, nu: float) -> float:
        return lambda_of_nu(self.nl, self.L, nu)


@dataclass(frozen=True)
class SequenceEntry:
    n: int
    lam: float
    method: Method
    nu_at_min: float
    ok: bool = True
    note: str = ""


@dataclass(frozen=True)
class LambdaSequence:
    entries: dict = field(default_factory=dict)

    def ns(self) -> np.ndarray:
        return np.array(sorted(self.entries), dtype=int)

    def values(self) -> np.ndarray:
        return np.array([self.entries[n].lam for n in sorted(self.entries)])

    def usable(self):
        return [e for _, e in sorted(self.entries.items()) if e.ok and np.isfinite(e.lam) and e.lam > 0]


def thread_count() -> int:
    """Worker threads allowed by OSCBIF_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("OSCBIF_THREADS", "1")))
    except ValueError:
        return 1


def _map(fun, items):
    workers = thread_count()
    if workers == 1:
        return [fun(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fun, items))


# --------------------------------------------------------------------------
# lambda(nu)
# --------------------------------------------------------------------------

def branch_point(nl: Nonlinearity, L: float, nu: float, rtol: float = BRANCH_RTOL) -> BranchPoint:
    """lambda(nu) with its propagated quadrature error; failures annotate the point."""
    try:
        q = fhat(nl, nu, rtol=rtol)
    except OscbifError as exc:
        return BranchPoint(float(nu), math.nan, math.inf, False, type(exc).__name__)
    lam = 2.0 * q.value ** 2 / L ** 2
    err = 4.0 * q.value * q.abs_error_estimate / L ** 2
    return BranchPoint(float(nu), lam, err, q.converged, "" if q.converged else "quadrature not converged")


def lambda_of_nu(nl: Nonlinearity, L: float, nu: float, rtol: float = BRANCH_RTOL) -> float:
    """lambda(nu) = 2 fhat(nu)**2 / L**2 for the problem on (0, L)."""
    if not L > 0:
        raise ValueError("L must be positive")
    return 2.0 * fhat(nl, nu, rtol=rtol).value ** 2 / L ** 2


def shooting_lambda(nl: Nonlinearity, L: float, nu: float, rtol: float = 1e-10,
                    target: float = 1e-8) -> tuple[float, float]:
    """Independent oracle for lambda(nu) by integrating -u'' = f(u) from the peak.

    With lam = 1 the solution starting at u = nu, u' = 0 is integrated with an
    eighth-order Runge-Kutta scheme until u reaches a small level u_s.  On
    the rest of the way to u = 0 the solution is concave, so its length x_r
    obeys u_s / sqrt(u'**2 + 2 sup f u_s) <= x_r <= u_s / |u'|; u_s is
    lowered until this bracket is within ``target`` of the half length x_h.
    Scaling then gives lam = (2 x_h / L)**2.  Returns (lam, relative error bound).

    The bound covers the final concave stretch only.  Step-size control can
    step over the oscillation of f at an interior accumulation point of
    zeros (shifted_inverse_sine), so the oracle is unreliable there.
    """
    if float(nl.f(np.array(nu))) == 0.0:
        raise SingularAtPeak(f"f({nu!r}) = 0")

    def rhs(_x, y):
        return [y[1], -float(nl.f(np.array(max(y[0], 0.0))))]

    x0, y0 = 0.0, [nu, 0.0]
    u_stop = 1e-2 * nu
    span = 10.0
    while True:
        def hit(_x, y, level=u_stop):
            return y[0] - level
        hit.terminal = True
        hit.direction = -1
        sol = solve_ivp(rhs, (x0, x0 + span), y0, method="DOP853", rtol=rtol,
                        atol=1e-2 * rtol * nu, events=hit)
        if not sol.t_events[0].size:
            if sol.status < 0:
                raise OscbifError(f"shooting failed: {sol.message}")
            x0, y0 = sol.t[-1], sol.y[:, -1]
            span *= 2
            continue
        x = float(sol.t_events[0][0])
        y = sol.y_events[0][0]
        slope = abs(y[1])
        fmax = float(np.max(nl.f(np.linspace(0.0, u_stop, 2001))))
        hi = u_stop / slope
        lo = u_stop / math.sqrt(slope * slope + 2 * fmax * u_stop)
        half = x + 0.5 * (hi + lo)
        rel = 0.5 * (hi - lo) / half
        if rel <= target:
            return (2 * half / L) ** 2, 2 * rel
        x0, y0 = x, y
        u_stop *= max(0.01, 0.5 * math.sqrt(target / rel))


# --------------------------------------------------------------------------
# Branches
# --------------------------------------------------------------------------

def _cosine_grid(lo: float, hi: float, grid: int) -> np.ndarray:
    k = np.arange(1, grid + 1)
    return lo + (hi - lo) * 0.5 * (1.0 - np.cos(math.pi * k / (grid + 1)))


def branch(nl: Nonlinearity, L: float, n: int, grid: int = 64, nu_rtol: float = 1e-8,
           window_override: tuple | None = None, rtol: float = BRANCH_RTOL) -> BifurcationBranch:
    """Sample lambda(nu) over the n-th window and refine its minimum.

    The grid is cosine-clustered toward both window ends, where lambda
    diverges; golden-section search then refines the minimum to relative
    tolerance ``nu_rtol`` in nu.
    """
    lo, hi = window_override if window_override is not None else window(nl, n)
    nus = _cosine_grid(lo, hi, grid)
    pts = _map(lambda v: branch_point(nl, L, v, rtol), nus)
    good = [p for p in pts if p.ok and np.isfinite(p.lam)]
    if not good:
        return BifurcationBranch(n, (lo, hi), tuple(pts), math.nan, math.nan, nl, L)
    lams = np.array([p.lam if p.ok and np.isfinite(p.lam) else np.inf for p in pts])
    spread = (max(p.lam for p in good) - min(p.lam for p in good)) / min(p.lam for p in good)
    if spread < 1e-9:
        i = int(np.argmin(lams))
        return BifurcationBranch(n, (lo, hi), tuple(pts), pts[i].lam, pts[i].nu, nl, L, degenerate=True)
    i = int(np.argmin(lams))
    a = nus[i - 1] if i > 0 else lo
    b = nus[i + 1] if i + 1 < nus.size else hi
    cache = {}

    def objective(v):
        p = branch_point(nl, L, v, rtol)
        cache[v] = p
        return p.lam if p.ok else math.inf

    x, _, _ = golden_section(objective, float(a), float(b), rtol=nu_rtol)
    refined = [cache[v] for v in sorted(cache) if cache[v].ok]
    allpts = sorted(pts + refined, key=lambda p: p.nu)
    best = min((p for p in allpts if p.ok and np.isfinite(p.lam)), key=lambda p: p.lam)
    return BifurcationBranch(n, (lo, hi), tuple(allpts), best.lam, best.nu, nl, L)


def lambda_n_sequence(nl: Nonlinearity, L: float, n_max: int, n_min: int = 1, grid: int = 12,
                      nu_rtol: float = 1e-6, rtol: float = 1e-9) -> LambdaSequence:
    """lambda_n = min of the n-th branch for n = n_min..n_max; failures are recorded.

    The defaults are looser than for a single branch: lambda is quadratic at
    its minimum, so a relative nu tolerance of 1e-6 already fixes lambda_n
    to about 1e-8 relative.
    """
    entries = {}
    for n in range(n_min, n_max + 1):
        try:
            br = branch(nl, L, n, grid=grid, nu_rtol=nu_rtol, rtol=rtol)
            ok = np.isfinite(br.lambda_min) and br.lambda_min > 0
            entries[n] = SequenceEntry(n, br.lambda_min, Method.TIME_MAP_1D, br.nu_at_min, bool(ok),
                                       "" if ok else "no admissible point in window")
        except OscbifError as exc:
            entries[n] = SequenceEntry(n, math.nan, Method.TIME_MAP_1D, math.nan, False, str(exc))
    return LambdaSequence(entries)


def _toward_end(br: BifurcationBranch, start: float, end: float, lam: float):
    """Walk geometrically from a sampled point toward a window end until lambda exceeds lam."""
    prev = start
    for k in range(1, 15):
        v = end - (end - start) * 10.0 ** (-k)
        p = branch_point(br.nl, br.L, v)
        if p.ok and p.lam > lam:
            return prev, v
        prev = v
    return None


def solutions_at_lambda(br: BifurcationBranch, lam: float) -> list[float]:
    """Peaks nu of all solutions on the branch with parameter lam."""
    if br.degenerate:
        raise DegenerateBranch("branch is flat in lambda; multiplicity is undefined")
    if not lam > 0 or not np.isfinite(br.lambda_min):
        return []
    if lam < br.lambda_min * (1 - 1e-10):
        return []
    if abs(lam - br.lambda_min) <= 1e-10 * br.lambda_min:
        return [br.nu_at_min]
    pts = [p for p in br.points if p.ok and np.isfinite(p.lam)]
    nus = np.array([p.nu for p in pts])
    vals = np.array([p.lam for p in pts]) - lam

    def g(v):
        return lambda_of_nu(br.nl, br.L, v) - lam

    roots = []
    for i in range(nus.size - 1):
        if vals[i] == 0:
            roots.append(float(nus[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(g, nus[i], nus[i + 1], xtol=1e-14, rtol=1e-12))
    lo, hi = br.window
    if vals[0] < 0:
        hit = _toward_end(br, nus[0], lo, lam)
        if hit:
            roots.append(brentq(g, min(hit), max(hit), xtol=1e-15, rtol=1e-12))
    if vals[-1] < 0:
        hit = _toward_end(br, nus[-1], hi, lam)
        if hit:
            roots.append(brentq(g, min(hit), max(hit), xtol=1e-15, rtol=1e-12))
    return sorted(roots)


# --------------------------------------------------------------------------
# Profiles and thresholds
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    x: np.ndarray
    u: np.ndarray
    lam: float
    nu: float


def _cumulative_w(nl: Nonlinearity, nu: float, panels: int):
    """Panel edges in w = sqrt(nu - s) and the cumulative regularized integral."""
    wb = np.sqrt(_gap_breaks(nl, nu))
    edges = np.unique(np.concatenate([np.linspace(a, b, max(2, int(math.ceil(panels * (b - a) / wb[-1]))) + 1)
                                      for a, b in zip(wb[:-1], wb[1:])]))

    peak = 2.0 / math.sqrt(float(nl.f(np.array(nu))))

    def integrand(w):
        w = np.asarray(w, dtype=float)
        d = nl.gap_integral(nu, (w * w).ravel()).reshape(w.shape)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(w > 0, 2.0 * w / np.sqrt(d), peak)

    pieces = gauss_legendre(integrand, edges[:-1], edges[1:])
    return edges, np.concatenate([[0.0], np.cumsum(pieces)]), integrand


def profile(nl: Nonlinearity, L: float, nu: float, samples: int = 201, panels: int = 2000) -> Profile:
    """The solution with peak nu on (0, L), symmetric about L/2.

    With G(W) = int_0^W 2w / sqrt(D(nu, w**2)) dw, the point where
    u = nu - W**2 lies at distance (L/2)(1 - G(W)/G(sqrt(nu))) from the
    boundary; G is inverted by Newton steps inside each panel.
    """
    if float(nl.f(np.array(nu))) == 0.0:
        raise SingularAtPeak(f"f({nu!r}) = 0")
    edges, cum, integrand = _cumulative_w(nl, nu, panels)
    total = cum[-1]
    lam = 2.0 * total ** 2 / L ** 2
    x = np.linspace(0.0, L, samples)
    dist = np.minimum(x, L - x)
    target = total * (1.0 - 2.0 * dist / L)
    k = np.clip(np.searchsorted(cum, target, side="right") - 1, 0, edges.size - 2)
    w = edges[k] + (target - cum[k]) / np.maximum(cum[k + 1] - cum[k], 1e-300) * (edges[k + 1] - edges[k])
    for _ in range(30):
        g = cum[k] + gauss_legendre(integrand, edges[k], w) - target
        dg = integrand(w)
        step = g / dg
        w_new = np.clip(w - step, edges[k], edges[k + 1])
        if np.max(np.abs(w_new - w)) <= 1e-15 * max(1.0, math.sqrt(nu)):
            w = w_new
            break
        w = w_new
    u = nu - w * w
    u[target <= 0] = nu
    u[target >= total] = 0.0
    return Profile(x, np.maximum(u, 0.0), lam, nu)


def nonexistence_threshold(nl: Nonlinearity, L: float, delta: float) -> float:
    """(pi**2/L**2) / sup_{0<s<delta} f(s)/s.

    Below this value no solution with sup-norm less than delta exists.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    at_zero = classify_limits(nl).at_zero
    if at_zero.kind == "superlinear" or not np.isfinite(at_zero.limsup):
        raise ValueError("f(s)/s is unbounded near 0; no threshold")
    s = np.unique(np.concatenate([delta * np.logspace(-12, 0, 2000),
                                  delta * np.linspace(0.0, 1.0, 200_001)[1:]]))
    if nl.family in (Family.INVERSE_SINE_U, Family.SHIFTED_INVERSE_SINE):
        m = np.arange(1, 200_000)
        peaks = nl.shift_alpha + 1.0 / (math.pi / 2 + 2 * math.pi * m)
        s = np.unique(np.concatenate([s, peaks[(peaks > 0) & (peaks < delta)]]))
    ratio = nl.f(s) / s
    i = int(np.argmax(ratio))
    best = float(ratio[i])
    a, b = s[max(i - 1, 0)], s[min(i + 1, s.size - 1)]
    if b > a:
        _, v, _ = golden_section(lambda t: -float(nl.f(np.array(t))) / t, float(a), float(b), rtol=1e-13)
        best = max(best, -v)
    if not best > 0:
        raise ValueError("f vanishes on (0, delta); the threshold is infinite")
    return (math.pi ** 2 / L ** 2) / best

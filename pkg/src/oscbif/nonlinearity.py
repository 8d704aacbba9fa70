"""Nonnegative nonlinearities with oscillatory zero structure.

Every built-in family has the product form ``f(t) = t**r * osc(t) * g(t)``:

* ``sine_u``:                 osc = 1 + sin t
* ``inverse_sine_u``:         osc = 1 + sin(1/t)
* ``shifted_inverse_sine``:   the inverse-sine family translated to start at
  ``shift_alpha`` and extended by its value at the origin (zero) to the left,
  so f vanishes on [0, alpha] and its positive zeros accumulate at alpha from above
* ``constant`` / ``linear`` / ``power``: osc = 1 with r = 0 / 1 / r
* ``user_table``: monotone-cubic (PCHIP) interpolation of nonnegative samples

The multiplier g is either a positive constant (then the constant is the
infimum gamma) or a sampled table with a caller-certified infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._numerics import gauss_jacobi_origin, gauss_legendre, gauss_legendre_below, golden_section, sine_inverse_primitive
from .exceptions import FamilyWithoutZeros

PANEL = math.pi / 8.0
_CHECK_GRID = 10_000


class Family(str, Enum):
    SINE_U = "sine_u"
    INVERSE_SINE_U = "inverse_sine_u"
    SHIFTED_INVERSE_SINE = "shifted_inverse_sine"
    CONSTANT = "constant"
    LINEAR = "linear"
    POWER = "power"
    USER_TABLE = "user_table"


_INVERSE_FAMILIES = (Family.INVERSE_SINE_U, Family.SHIFTED_INVERSE_SINE)
# below this 1/t overflows; the oscillatory factor takes its origin value 1 there
_TINY = 1e-300


def _inverse_osc(t):
    t = np.asarray(t, dtype=float)
    ok = t > _TINY
    return np.where(ok, 1.0 + np.sin(1.0 / np.where(ok, t, 1.0)), 1.0)


@lru_cache(maxsize=128)
def _pchip(knots: tuple, values: tuple) -> PchipInterpolator:
    return PchipInterpolator(np.array(knots), np.array(values), extrapolate=False)


@dataclass(frozen=True)
class Multiplier:
    """Bounded positive factor g with certified infimum ``gamma``."""

    value: float = 1.0
    knots: tuple = ()
    samples: tuple = ()
    gamma: float | None = None

    def __post_init__(self):
        if self.knots:
            if len(self.knots) != len(self.samples) or len(self.knots) < 2:
                raise ValueError("multiplier table needs matching knots and samples (at least two)")
            if np.any(np.diff(self.knots) <= 0):
                raise ValueError("multiplier knots must be strictly increasing")
            if self.gamma is None or self.gamma <= 0:
                raise ValueError("a sampled multiplier needs a certified positive infimum gamma")
            if min(self.samples) < self.gamma:
                raise ValueError("gamma exceeds a sampled value of g; it is not an infimum")
        elif not self.value > 0:
            raise ValueError("constant multiplier must be positive")

    @classmethod
    def table(cls, knots, samples, gamma: float) -> "Multiplier":
        return cls(value=float("nan"), knots=tuple(map(float, knots)),
                   samples=tuple(map(float, samples)), gamma=float(gamma))

    @property
    def is_constant(self) -> bool:
        return not self.knots

    @property
    def infimum(self) -> float:
        return self.value if self.is_constant else self.gamma

    @property
    def supremum(self) -> float:
        return self.value if self.is_constant else max(self.samples)

    def at_zero(self) -> float:
        return self.value if self.is_constant else self.samples[0]

    def at_infinity(self) -> float:
        return self.value if self.is_constant else self.samples[-1]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.is_constant:
            return np.full(t.shape, self.value)
        tc = np.clip(t, self.knots[0], self.knots[-1])
        return _pchip(self.knots, self.samples)(tc)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.is_constant:
            return np.zeros(t.shape)
        inside = (t > self.knots[0]) & (t < self.knots[-1])
        tc = np.clip(t, self.knots[0], self.knots[-1])
        return np.where(inside, _pchip(self.knots, self.samples).derivative()(tc), 0.0)

    def to_text(self) -> str:
        if self.is_constant:
            return f"const:{self.value!r}"
        pairs = ",".join(f"{k!r}:{v!r}" for k, v in zip(self.knots, self.samples))
        return f"table:{self.gamma!r}:{pairs}"

    @classmethod
    def from_text(cls, text: str) -> "Multiplier":
        kind, _, rest = text.strip().partition(":")
        if kind == "const":
            return cls(value=float(rest))
        if kind == "table":
            gamma, _, pairs = rest.partition(":")
            kv = [p.split(":") for p in pairs.split(",") if p]
            return cls.table([float(k) for k, _ in kv], [float(v) for _, v in kv], float(gamma))
        raise ValueError(f"unknown multiplier description {text!r}")


@dataclass(frozen=True)
class Nonlinearity:
    """A nonnegative nonlinearity f on [0, inf) described by its family."""

    family: Family
    r: float = 0.0
    g: Multiplier = field(default_factory=Multiplier)
    shift_alpha: float = 0.0
    table_t: tuple = ()
    table_f: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        fam = self.family
        if self.r < 0:
            raise ValueError("exponent r must be >= 0")
        if fam is Family.CONSTANT and self.r != 0:
            raise ValueError("constant family has r = 0")
        if fam is Family.LINEAR and self.r != 1:
            raise ValueError("linear family has r = 1")
        if fam in _INVERSE_FAMILIES and not self.g.is_constant:
            raise ValueError("inverse-sine families support constant multipliers only")
        if fam is Family.SHIFTED_INVERSE_SINE and not self.shift_alpha > 0:
            raise ValueError("shifted_inverse_sine needs shift_alpha > 0")
        if fam is Family.USER_TABLE:
            t = np.asarray(self.table_t, dtype=float)
            v = np.asarray(self.table_f, dtype=float)
            if t.size < 2 or t.size != v.size or t[0] != 0.0 or np.any(np.diff(t) <= 0):
                raise ValueError("user table needs increasing knots starting at 0")
            if np.any(v < 0):
                raise ValueError("user table values must be nonnegative")

    # ---- constructors -------------------------------------------------
    @classmethod
    def sine_u(cls, r: float = 0.0, gamma: float = 1.0, g: Multiplier | None = None):
        return cls(Family.SINE_U, float(r), g or Multiplier(float(gamma)))

    @classmethod
    def inverse_sine_u(cls, r: float = 1.0, gamma: float = 1.0):
        return cls(Family.INVERSE_SINE_U, float(r), Multiplier(float(gamma)))

    @classmethod
    def shifted_inverse_sine(cls, alpha: float, r: float = 0.0, gamma: float = 1.0):
        return cls(Family.SHIFTED_INVERSE_SINE, float(r), Multiplier(float(gamma)), float(alpha))

    @classmethod
    def constant(cls, c: float = 1.0):
        return cls(Family.CONSTANT, 0.0, Multiplier(float(c)))

    @classmethod
    def linear(cls, slope: float = 1.0):
        return cls(Family.LINEAR, 1.0, Multiplier(float(slope)))

    @classmethod
    def power(cls, r: float, gamma: float = 1.0):
        return cls(Family.POWER, float(r), Multiplier(float(gamma)))

    @classmethod
    def user_table(cls, t, values):
        return cls(Family.USER_TABLE, 0.0, Multiplier(), 0.0,
                   tuple(map(float, t)), tuple(map(float, values)))

    @classmethod
    def from_function(cls, func, t_max: float, n: int = 4000, kinks=()):
        """Tabulate a nonnegative callable on [0, t_max].

        Knots are uniform plus geometric clusters toward 0, t_max and every
        point in ``kinks``, so one-sided derivatives near those points are
        resolved by the interpolant.
        """
        pts = [np.linspace(0.0, t_max, n), t_max * np.logspace(-15, 0, 200)]
        for k in kinks:
            offs = t_max * np.logspace(-12, -1, 80)
            pts += [k - offs, k + offs, [k]]
        t = np.unique(np.clip(np.concatenate(pts), 0.0, t_max))
        vals = np.maximum(np.array([float(func(x)) for x in t]), 0.0)
        return cls.user_table(t, vals)

    # ---- evaluation ----------------------------------------------------
    @property
    def gamma(self) -> float:
        return self.g.infimum

    def _osc(self, t):
        fam = self.family
        if fam is Family.SINE_U:
            return 1.0 + np.sin(t)
        if fam is Family.INVERSE_SINE_U:
            return _inverse_osc(t)
        return np.ones_like(t)

    def f(self, t):
        t = np.asarray(t, dtype=float)
        fam = self.family
        if fam is Family.USER_TABLE:
            tc = np.minimum(t, self.table_t[-1])
            return np.maximum(_pchip(self.table_t, self.table_f)(tc), 0.0)
        if fam is Family.SHIFTED_INVERSE_SINE:
            x = t - self.shift_alpha
            xs = np.where(x > 0, x, 1.0)
            val = xs ** self.r * _inverse_osc(xs) * self.g.value
            return np.where(x > 0, val, 0.0)
        base = t ** self.r if self.r != 0 else np.ones_like(t)
        if fam is Family.INVERSE_SINE_U and self.r > 0:
            base = np.where(t > 0, base, 0.0)
        return base * self._osc(t) * self.g(t)

    def derivative(self, t):
        """Closed-form f'(t) (one-sided limits may be infinite at t = 0)."""
        t = np.asarray(t, dtype=float)
        fam = self.family
        r = self.r
        with np.errstate(divide="ignore", invalid="ignore"):
            if fam is Family.USER_TABLE:
                inside = t < self.table_t[-1]
                tc = np.minimum(t, self.table_t[-1])
                return np.where(inside, _pchip(self.table_t, self.table_f).derivative()(tc), 0.0)
            if fam in _INVERSE_FAMILIES:
                x = t - self.shift_alpha if fam is Family.SHIFTED_INVERSE_SINE else t
                xs = np.where(x > _TINY, x, 1.0)
                d = (r * xs ** (r - 1) * (1 + np.sin(1 / xs)) if r != 0 else 0.0) \
                    - xs ** (r - 2) * np.cos(1 / xs)
                return np.where(x > _TINY, d * self.g.value, 0.0)
            tr = t ** r if r != 0 else np.ones_like(t)
            dtr = r * t ** (r - 1) if r != 0 else np.zeros_like(t)
            osc = self._osc(t)
            dosc = np.cos(t) if fam is Family.SINE_U else np.zeros_like(t)
            return (dtr * osc + tr * dosc) * self.g(t) + tr * osc * self.g.derivative(t)

    def _phi(self, t):
        # f / t**r, smooth at the origin for the product families
        return self._osc(t) * self.g(t)

    def F(self, t):
        """Antiderivative with F(0) = 0 (vectorized)."""
        t = np.asarray(t, dtype=float)
        fam = self.family
        r = self.r
        gam = self.g.value
        if fam is Family.USER_TABLE:
            tmax = self.table_t[-1]
            anti = _pchip(self.table_t, self.table_f).antiderivative()
            tc = np.minimum(t, tmax)
            return anti(tc) + np.maximum(t - tmax, 0.0) * self.table_f[-1]
        if fam is Family.INVERSE_SINE_U:
            out = np.zeros(t.shape)
            pos = t > 0
            tp = t[pos]
            out[pos] = gam * (tp ** (r + 1) / (r + 1) + sine_inverse_primitive(r, tp))
            return out
        if fam is Family.SHIFTED_INVERSE_SINE:
            x = t - self.shift_alpha
            out = np.zeros(t.shape)
            pos = x > 0
            xp = x[pos]
            out[pos] = gam * (xp ** (r + 1) / (r + 1) + sine_inverse_primitive(r, xp))
            return out
        if self.g.is_constant:
            if fam in (Family.CONSTANT, Family.LINEAR, Family.POWER):
                return gam * t ** (r + 1) / (r + 1)
            if fam is Family.SINE_U and r == 0:
                return gam * (t + 1.0 - np.cos(t))
            if fam is Family.SINE_U and r == 1:
                return gam * (0.5 * t * t + np.sin(t) - t * np.cos(t))
        return self._panel_F(t)

    def _panel_F(self, t):
        n = max(1, int(np.max(t, initial=0.0) / PANEL) + 2)
        n = 1 << (n - 1).bit_length()
        cum = _panel_table(self, n)
        k = np.clip(np.floor(t / PANEL).astype(int), 0, n - 1)
        out = np.empty(t.shape)
        first = k == 0
        if np.any(first):
            out[first] = gauss_jacobi_origin(self._phi, self.r, t[first])
        rest = ~first
        if np.any(rest):
            out[rest] = cum[k[rest]] + gauss_legendre(self.f, k[rest] * PANEL, t[rest])
        return out

    def local_scale(self, nu: float) -> float:
        """Length below nu on which f is resolved by one fixed Gauss rule."""
        fam = self.family
        if fam is Family.INVERSE_SINE_U:
            return min(nu * nu * PANEL, nu / 4)
        if fam is Family.SHIFTED_INVERSE_SINE:
            x = nu - self.shift_alpha
            return min(x * x * PANEL, x / 4) if x > 0 else 0.0
        if fam is Family.USER_TABLE:
            return float(np.min(np.diff(self.table_t))) / 4
        return PANEL

    def gap_integral(self, nu: float, gap):
        """Integral of f over [nu - gap, nu], free of cancellation for small gaps."""
        gap = np.minimum(np.asarray(gap, dtype=float), nu)
        fam = self.family
        r = self.r
        if self.g.is_constant and fam in (Family.CONSTANT, Family.LINEAR, Family.POWER):
            gam = self.g.value
            with np.errstate(divide="ignore"):
                return -gam * nu ** (r + 1) * np.expm1((r + 1) * np.log1p(-gap / nu)) / (r + 1)
        h = self.local_scale(nu)
        near = (gap <= h) & (gap <= 0.5 * nu)
        out = np.empty(gap.shape)
        if np.any(near):
            out[near] = gauss_legendre_below(self.f, nu, gap[near])
        far = ~near
        if np.any(far):
            out[far] = self.F(np.array(nu)) - self.F(nu - gap[far])
        return out

    # ---- serialization ---------------------------------------------------
    def to_text(self) -> str:
        lines = [f"family={self.family.value}", f"r={self.r!r}", f"g={self.g.to_text()}",
                 f"shift_alpha={self.shift_alpha!r}"]
        if self.family is Family.USER_TABLE:
            lines.append("table=" + ",".join(f"{a!r}:{b!r}" for a, b in zip(self.table_t, self.table_f)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Nonlinearity":
        kv = {}
        for raw in text.replace(";", "\n").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            kv[key.strip()] = val.strip()
        family = Family(kv["family"])
        g = Multiplier.from_text(kv.get("g", "const:1.0"))
        if family is Family.USER_TABLE:
            pairs = [p.split(":") for p in kv["table"].split(",") if p]
            return cls.user_table([float(a) for a, _ in pairs], [float(b) for _, b in pairs])
        return cls(family, float(kv.get("r", 0.0)), g, float(kv.get("shift_alpha", 0.0)))


@lru_cache(maxsize=256)
def _panel_table(nl: Nonlinearity, n: int) -> np.ndarray:
    """Cumulative integrals of f at the panel edges k * PANEL, k = 0..n."""
    edges = PANEL * np.arange(n + 1)
    pieces = np.empty(n)
    pieces[0] = gauss_jacobi_origin(nl._phi, nl.r, np.array([PANEL]))[0]
    pieces[1:] = gauss_legendre(nl.f, edges[1:-1], edges[2:])
    cum = np.concatenate([[0.0], np.cumsum(pieces)])
    cum.flags.writeable = False
    return cum


def eval_f(nl: Nonlinearity, t):
    """f(t) for t >= 0; scalars in, scalars out."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("f is evaluated on finite t >= 0 only")
    out = nl.f(arr)
    return float(out) if out.ndim == 0 else out


def eval_F(nl: Nonlinearity, t):
    """F(t) = integral of f over [0, t]."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("F is evaluated on finite t >= 0 only")
    out = nl.F(arr)
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# Zero structure
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroStructure:
    """Zeros alpha_n and peaks nu_n for n = 1..n_max (index 0 holds n = 1)."""

    family: Family
    zeros: tuple
    peaks: tuple
    accumulation: float | None
    inf_zero: float
    sup_zero: float

    def alpha(self, n: int) -> float:
        return self.zeros[n - 1]

    def peak(self, n: int) -> float:
        return self.peaks[n - 1]


def zero_at(nl: Nonlinearity, n: int) -> float:
    """The n-th positive zero alpha_n (n >= 1) of a built-in oscillatory family."""
    fam = nl.family
    if fam is Family.SINE_U:
        return -math.pi / 2 + 2 * math.pi * n
    if fam is Family.INVERSE_SINE_U:
        return 1.0 / (-math.pi / 2 + 2 * math.pi * n)
    if fam is Family.SHIFTED_INVERSE_SINE:
        return nl.shift_alpha + 1.0 / (-math.pi / 2 + 2 * math.pi * n)
    raise FamilyWithoutZeros(f"{fam.value} has no countable sequence of positive zeros")


def peak_at(nl: Nonlinearity, n: int) -> float:
    """The point nu_n between consecutive zeros where the oscillatory factor equals 2."""
    fam = nl.family
    if fam is Family.SINE_U:
        return math.pi / 2 + 2 * math.pi * n
    if fam is Family.INVERSE_SINE_U:
        return 1.0 / (math.pi / 2 + 2 * math.pi * n)
    if fam is Family.SHIFTED_INVERSE_SINE:
        return nl.shift_alpha + 1.0 / (math.pi / 2 + 2 * math.pi * n)
    raise FamilyWithoutZeros(f"{fam.value} has no countable sequence of positive zeros")


def window(nl: Nonlinearity, n: int) -> tuple[float, float]:
    """Ordered open interval between the zeros alpha_n and alpha_{n+1}."""
    a, b = zero_at(nl, n), zero_at(nl, n + 1)
    return (a, b) if a < b else (b, a)


def zeros(nl: Nonlinearity, n_max: int) -> ZeroStructure:
    fam = nl.family
    if fam not in (Family.SINE_U,) + _INVERSE_FAMILIES:
        raise FamilyWithoutZeros(f"{fam.value} has no countable sequence of positive zeros")
    ns = range(1, n_max + 1)
    zs = tuple(zero_at(nl, n) for n in ns)
    ps = tuple(peak_at(nl, n) for n in ns)
    if fam is Family.SINE_U:
        return ZeroStructure(fam, zs, ps, math.inf, zero_at(nl, 1), math.inf)
    if fam is Family.INVERSE_SINE_U:
        return ZeroStructure(fam, zs, ps, 0.0, 0.0, zero_at(nl, 1))
    # f vanishes identically on (0, alpha], so inf Z_f = 0
    return ZeroStructure(fam, zs, ps, nl.shift_alpha, 0.0, zero_at(nl, 1))


# --------------------------------------------------------------------------
# Monotonicity conditions
# --------------------------------------------------------------------------

def _min_derivative(nl: Nonlinearity, lo: float, hi: float) -> float:
    """Sampled minimum of f' on the open interval (lo, hi), refined by golden section."""
    width = hi - lo
    offs = width * np.logspace(-15, -1, 57)
    s = np.concatenate([lo + width * np.linspace(0.0, 1.0, _CHECK_GRID + 1)[1:-1],
                        lo + offs, hi - offs])
    s = np.unique(s[(s > lo) & (s < hi)])
    d = nl.derivative(s)
    d = np.where(np.isnan(d), np.inf, d)
    i = int(np.argmin(d))
    best = float(d[i])
    if not np.isfinite(best):
        return best
    a = s[max(i - 1, 0)]
    b = s[min(i + 1, s.size - 1)]
    if b > a:
        _, val, _ = golden_section(lambda x: float(nl.derivative(np.array(x))), a, b, rtol=1e-12)
        best = min(best, val)
    return best


def _increasing_on(nl: Nonlinearity, lo: float, hi: float, M: float) -> bool:
    return _min_derivative(nl, lo, hi) + M >= -1e-12 * max(1.0, M)


def check_condition_local(nl: Nonlinearity, sigma: float, M: float, eps: float) -> bool:
    """Whether s -> f(s) + M s is nondecreasing on (sigma - eps, sigma).

    Decided from the sign of the closed-form derivative on a dense sample
    (10**4 uniform points plus geometric clustering at both ends) with a
    golden-section refinement at the sampled minimum.
    """
    if not 0 < eps < sigma:
        raise ValueError("need 0 < eps < sigma")
    return _increasing_on(nl, sigma - eps, sigma, M)


def check_condition_global(nl: Nonlinearity, sigma: float, M: float) -> bool:
    """Whether s -> f(s) + M s is nondecreasing on (0, sigma)."""
    if not sigma > 0:
        raise ValueError("need sigma > 0")
    return _increasing_on(nl, 0.0, sigma, M)


def local_condition_witness(nl: Nonlinearity, n: int) -> tuple[float, float]:
    """(M, eps) witnessing the local condition at sigma = alpha_n.

    eps is pi/4 for sine_u and shrinks like alpha_n**2 for the inverse-sine
    families; M is one plus the sampled maximum of |f'| on the closed window,
    inflated by 1% to cover the gap between samples.
    """
    sigma = zero_at(nl, n)
    if nl.family is Family.SINE_U:
        eps = math.pi / 4
    elif nl.family is Family.INVERSE_SINE_U:
        eps = sigma * sigma * math.pi / 4
    else:
        x = sigma - nl.shift_alpha
        eps = x * x * math.pi / 4
    # closed window: |f'| typically peaks at the far end sigma - eps
    s = sigma - eps * np.linspace(0.0, 1.0, _CHECK_GRID + 1)
    M = 1.0 + 1.01 * float(np.max(np.abs(nl.derivative(s))))
    return M, eps


# --------------------------------------------------------------------------
# Behaviour of f(s)/s at zero and at infinity
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitBehavior:
    """Limit of f(s)/s: kind is sublinear, linear, superlinear or oscillatory."""

    kind: str
    liminf: float
    limsup: float

    @property
    def slope(self) -> float | None:
        return self.liminf if self.kind == "linear" else None


@dataclass(frozen=True)
class LimitClassification:
    at_zero: LimitBehavior
    at_infinity: LimitBehavior
    heuristic: bool = False


def _power_behavior(exponent_minus_one: float, coeff: float, at_zero: bool) -> LimitBehavior:
    """Behaviour of coeff * s**e as s -> 0 (at_zero) or s -> inf."""
    e = exponent_minus_one
    if e == 0:
        return LimitBehavior("linear", coeff, coeff)
    vanishes = (e > 0) == at_zero
    if vanishes:
        return LimitBehavior("sublinear", 0.0, 0.0)
    return LimitBehavior("superlinear", math.inf, math.inf)


def _oscillating(e: float, amp: float, at_zero: bool) -> LimitBehavior:
    """coeff * s**e * (1 + sin(...)) with the oscillating factor spanning [0, 2]."""
    plain = _power_behavior(e, amp, at_zero)
    if plain.kind == "sublinear":
        return plain
    return LimitBehavior("oscillatory", 0.0, 2 * plain.limsup)


def classify_limits(nl: Nonlinearity) -> LimitClassification:
    fam = nl.family
    r = nl.r
    g0, ginf = nl.g.at_zero(), nl.g.at_infinity()
    if fam in (Family.CONSTANT, Family.LINEAR, Family.POWER):
        return LimitClassification(_power_behavior(r - 1, g0, True), _power_behavior(r - 1, ginf, False))
    if fam is Family.SINE_U:
        # 1 + sin s -> 1 at the origin; oscillates between 0 and 2 at infinity
        return LimitClassification(_power_behavior(r - 1, g0, True), _oscillating(r - 1, ginf, False))
    if fam is Family.INVERSE_SINE_U:
        return LimitClassification(_oscillating(r - 1, g0, True), _power_behavior(r - 1, ginf, False))
    if fam is Family.SHIFTED_INVERSE_SINE:
        return LimitClassification(LimitBehavior("sublinear", 0.0, 0.0), _power_behavior(r - 1, ginf, False))
    # user table: sampled ratios, flagged as heuristic
    t = np.asarray(nl.table_t)
    f0 = nl.table_f[0]
    if f0 > 0:
        zero = LimitBehavior("superlinear", math.inf, math.inf)
    else:
        m0 = float(nl.derivative(np.array(t[1] * 1e-3)))
        zero = LimitBehavior("sublinear", 0.0, 0.0) if abs(m0) < 1e-12 else LimitBehavior("linear", m0, m0)
    # constant extension beyond the table
    inf_kind = LimitBehavior("sublinear", 0.0, 0.0)
    return LimitClassification(zero, inf_kind, heuristic=True)

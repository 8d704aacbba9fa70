"""Radial upper bounds on an annulus R/2 < |x| < R in dimension N >= 2.

For radial w(rho), the variable s = rho**(2-N)/(N-2) (N >= 3) or s = ln rho
(N = 2) turns -Delta w = lam f(w) into -z'' = lam g1(s) f(z) with weight
g1 = rho**(2(N-1)).  Replacing g1 by its infimum (R/2)**(2(N-1)) leaves the
autonomous problem on (a, b), solved exactly by the time map:

    lam_bar = 2 fhat(nu)**2 / ((R/2)**(2(N-1)) (b - a)**2).

A solution of the autonomous problem is a subsolution of the annulus
problem, so lam_bar bounds lam_n from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import OscbifError
from .nonlinearity import Nonlinearity, peak_at
from .quadrature import fhat
from .timemap import LambdaSequence, Method, SequenceEntry, profile


@dataclass(frozen=True)
class RadialConfig:
    N: int
    R: float
    a: float
    b: float

    @classmethod
    def build(cls, N: int, R: float) -> "RadialConfig":
        a, b = reduced_interval(N, R)
        return cls(N, float(R), a, b)

    @property
    def weight(self) -> float:
        return (self.R / 2) ** (2 * (self.N - 1))


@dataclass(frozen=True)
class RadialBound:
    lambda_bar: float
    lambda_closed_form: float
    ratio: float
    N: int
    R: float
    nu: float


def reduced_interval(N: int, R: float) -> tuple[float, float]:
    """Image (a, b) of the radii [R, R/2] under the change of variables."""
    if N <= 1:
        raise ValueError("radial reduction needs N >= 2; use the timemap module for N = 1")
    if not R > 0:
        raise ValueError("R must be positive")
    if N == 2:
        return math.log(R / 2), math.log(R)
    return 1.0 / (R ** (N - 2) * (N - 2)), 2.0 ** (N - 2) / (R ** (N - 2) * (N - 2))


def _radius_of(s, N: int):
    s = np.asarray(s, dtype=float)
    if N == 2:
        return np.exp(s)
    return ((N - 2) * s) ** (-1.0 / (N - 2))


def lambda_bar_interval(f1: Nonlinearity, weight: float, a: float, b: float, nu: float) -> float:
    """lam solving -z'' = lam * weight * f1(z) on (a, b) with peak nu."""
    return 2.0 * fhat(f1, nu).value ** 2 / (weight * (b - a) ** 2)


def closed_form_lambda(fhat_value: float, N: int, R: float) -> float:
    """The closed-form value fhat**2 2**(2N-1) / (R**2 (2**(N-2) - 1)**2); undefined for N = 2."""
    den = R * R * (2.0 ** (N - 2) - 1) ** 2
    return fhat_value ** 2 * 2.0 ** (2 * N - 1) / den if den > 0 else math.nan


def lambda_bar_report(f1: Nonlinearity, N: int, R: float, nu: float) -> RadialBound:
    """lam_bar from first principles together with the closed-form constant and their ratio."""
    cfg = RadialConfig.build(N, R)
    fh = fhat(f1, nu).value
    lam = 2.0 * fh ** 2 / (cfg.weight * (cfg.b - cfg.a) ** 2)
    closed = closed_form_lambda(fh, N, R)
    return RadialBound(lam, closed, lam / closed if closed == closed else math.nan, N, R, float(nu))


def lambda_bar(f1: Nonlinearity, N: int, R: float, nu: float) -> float:
    cfg = RadialConfig.build(N, R)
    return lambda_bar_interval(f1, cfg.weight, cfg.a, cfg.b, nu)


def _family(family_kind: str, r: float, gamma: float) -> Nonlinearity:
    kind = str(family_kind).lower()
    if kind in ("q", "sine_u"):
        return Nonlinearity.sine_u(r, gamma)
    if kind in ("r", "inverse_sine_u"):
        return Nonlinearity.inverse_sine_u(r, gamma)
    raise ValueError(f"family_kind must be 'q' or 'r', got {family_kind!r}")


def lambda_upper_sequence(family_kind: str, r: float, gamma: float, N: int, R: float,
                          n_max: int, n_min: int = 1) -> LambdaSequence:
    """lam_bar_n at the peaks nu_n of f1 = gamma * t**r * osc(t)."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    f1 = _family(family_kind, r, gamma)
    cfg = RadialConfig.build(N, R)
    entries = {}
    for n in range(n_min, n_max + 1):
        nu = peak_at(f1, n)
        try:
            lam = lambda_bar_interval(f1, cfg.weight, cfg.a, cfg.b, nu)
            entries[n] = SequenceEntry(n, lam, Method.RADIAL_UPPER_BOUND, nu)
        except OscbifError as exc:
            entries[n] = SequenceEntry(n, math.nan, Method.RADIAL_UPPER_BOUND, nu, False, str(exc))
    return LambdaSequence(entries)


@dataclass(frozen=True)
class RadialProfile:
    radius: np.ndarray
    w: np.ndarray
    s: np.ndarray
    z: np.ndarray
    lambda_bar: float


def subsolution_profile(f1: Nonlinearity, N: int, R: float, nu: float, samples: int = 201) -> RadialProfile:
    """z(s) on [a, b] from the time map, mapped back to w(radius) on [R/2, R]."""
    cfg = RadialConfig.build(N, R)
    prof = profile(f1, cfg.b - cfg.a, nu, samples)
    s = cfg.a + prof.x
    radius = _radius_of(s, N)
    order = np.argsort(radius)
    return RadialProfile(radius[order], prof.u[order], s, prof.u, prof.lam / cfg.weight)

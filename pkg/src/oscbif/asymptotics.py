"""Exponent fits and regime classification for lambda_n sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import linregress

from .exceptions import TooFewPoints
from .timemap import LambdaSequence

SLOPE_BAND = 0.2
BOUNDED_RATIO = 4.0


class Regime(str, Enum):
    NO_BIFURCATION = "NoBifurcation"
    INTERVAL_FROM_THRESHOLD = "IntervalFromThreshold"
    ALL_POSITIVE_LAMBDA = "AllPositiveLambda"
    INCONCLUSIVE = "Inconclusive"


class Side(str, Enum):
    FROM_ZERO = "FromZero"
    FROM_INFINITY = "FromInfinity"


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    stderr: float
    n_range: tuple
    points_used: int
    intercept: float = 0.0


@dataclass(frozen=True)
class BifurcationClassification:
    regime: Regime
    side: Side
    threshold_estimate: float | None
    slope: float
    band_ratio: float
    note: str = ""


def _usable(seq: LambdaSequence, n0: int = 1, n_max: int | None = None):
    pts = [(e.n, e.lam) for e in seq.usable() if e.n >= n0 and (n_max is None or e.n <= n_max)]
    return np.array([p[0] for p in pts], dtype=float), np.array([p[1] for p in pts])


def fit_exponent(seq: LambdaSequence, n0: int = 1, n_max: int | None = None) -> ExponentFit:
    """Least-squares slope of log lambda_n against log n over n >= n0 (failed entries skipped)."""
    ns, lams = _usable(seq, n0, n_max)
    if ns.size < 5:
        raise TooFewPoints(f"need at least 5 usable entries with n >= {n0}, got {ns.size}")
    x, y = np.log(ns), np.log(lams)
    if np.ptp(y) == 0.0:
        return ExponentFit(0.0, 0.0, (int(ns[0]), int(ns[-1])), int(ns.size), float(y[0]))
    fit = linregress(x, y)
    return ExponentFit(float(fit.slope), float(fit.stderr), (int(ns[0]), int(ns[-1])), int(ns.size),
                       float(fit.intercept))


def _side_of(family_kind) -> Side:
    kind = getattr(family_kind, "value", family_kind)
    kind = str(kind).lower()
    if kind in ("q", "sine_u"):
        return Side.FROM_INFINITY
    if kind in ("r", "inverse_sine_u", "shifted_inverse_sine"):
        return Side.FROM_ZERO
    raise ValueError(f"unknown family kind {family_kind!r}")


def classify(seq: LambdaSequence, family_kind, side: Side | str | None = None) -> BifurcationClassification:
    """Regime from the fitted slope, cross-checked against the tail band and trend.

    slope > 0.2 with a rising trend gives NoBifurcation; slope < -0.2 with a
    falling trend gives AllPositiveLambda; |slope| <= 0.2 with tail
    max/min <= 4 gives IntervalFromThreshold with the tail minimum as the
    threshold estimate.  Anything else is Inconclusive.
    """
    ns, lams = _usable(seq)
    if ns.size < 20:
        raise TooFewPoints(f"classification needs at least 20 usable entries, got {ns.size}")
    side = Side(side) if side is not None else _side_of(family_kind)
    fit = fit_exponent(seq)
    half = ns.size // 2
    logs = np.log(lams)
    trend = float(np.mean(logs[half:]) - np.mean(logs[:half]))
    tail = lams[half:]
    band = float(tail.max() / tail.min())
    slope = fit.slope
    if slope > SLOPE_BAND and trend > 0:
        regime, thr = Regime.NO_BIFURCATION, None
    elif slope < -SLOPE_BAND and trend < 0:
        regime, thr = Regime.ALL_POSITIVE_LAMBDA, None
    elif abs(slope) <= SLOPE_BAND and band <= BOUNDED_RATIO:
        regime, thr = Regime.INTERVAL_FROM_THRESHOLD, float(tail.min())
    else:
        return BifurcationClassification(Regime.INCONCLUSIVE, side, None, slope, band,
                                         f"slope {slope:.3g} disagrees with trend {trend:.3g} / band {band:.3g}")
    return BifurcationClassification(regime, side, thr, slope, band)


def divergence_check(seq: LambdaSequence) -> bool:
    """True iff the minimum over the last quarter exceeds ten times the first entry."""
    _, lams = _usable(seq)
    if lams.size < 4:
        return False
    tail = lams[-max(1, lams.size // 4):]
    return bool(tail.min() > 10.0 * lams[0])


def report(seq: LambdaSequence, family: str, r: float, n0: int = 1) -> dict:
    """JSON-ready summary: family, r, side, slope, stderr, regime, threshold_estimate."""
    fit = fit_exponent(seq, n0)
    cls = classify(seq, family)
    return {
        "family": family,
        "r": r,
        "side": cls.side.value,
        "slope": fit.slope,
        "stderr": fit.stderr,
        "regime": cls.regime.value,
        "threshold_estimate": cls.threshold_estimate if cls.threshold_estimate is None
        or math.isfinite(cls.threshold_estimate) else None,
    }

"""Verification suites: each returns a VerificationReport of pass/fail cases."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import linregress

from .asymptotics import fit_exponent
from .nonlinearity import Nonlinearity, peak_at, zero_at
from .quadrature import alternating_terms, fhat, hn_infimum, oscillatory_integral
from .radial import lambda_upper_sequence
from .timemap import lambda_of_nu, shooting_lambda
from ._numerics import sine_inverse_primitive

DEFAULT_SEED = 20240611
SUITES = ("bounds", "hn", "bachillerato", "oracle")


@dataclass
class VerificationReport:
    suite: str
    config: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)

    def add(self, case_id: str, inputs: dict, observed, expected, relation: str, passed: bool):
        self.cases.append({"id": case_id, "inputs": inputs, "observed": observed,
                           "bound_or_expected": expected, "relation": relation, "pass": bool(passed)})

    @property
    def summary(self) -> dict:
        passed = sum(c["pass"] for c in self.cases)
        return {"total": len(self.cases), "passed": passed, "failed": len(self.cases) - passed}

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.cases)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "config": self.config, "cases": self.cases, "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(_clean(self.to_dict()), sort_keys=True, indent=2) + "\n"


def _clean(obj):
    """Replace non-finite floats (not valid JSON) by strings and numpy scalars by Python ones."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _family(kind: str, r: float) -> Nonlinearity:
    return Nonlinearity.sine_u(r) if kind == "q" else Nonlinearity.inverse_sine_u(r)


def _slope(x, y) -> float:
    return float(linregress(np.log(x), np.log(y)).slope)


def suite_bounds(families=("q", "r"), rs=(0.0, 0.5, 1.0, 2.0), n_max: int = 200) -> VerificationReport:
    """fhat(nu_n) / nu_n**((1-r)/2) stays bounded, and the radial exponent equals 1 - r."""
    rep = VerificationReport("bounds", {"families": list(families), "rs": list(rs), "n_max": n_max})
    ns = np.unique(np.geomspace(10, n_max, 25).round().astype(int))
    for kind in families:
        for r in rs:
            nl = _family(kind, r)
            nus = np.array([peak_at(nl, n) for n in ns])
            ratio = np.array([fhat(nl, v).value for v in nus]) / nus ** ((1 - r) / 2)
            drift = _slope(ns, ratio)
            rep.add(f"fhat-scaling-{kind}-r{r}", {"family": kind, "r": r, "n": [int(ns[0]), int(ns[-1])]},
                    {"max_ratio": float(ratio.max()), "log_slope": drift}, 0.05,
                    "|log-log slope of fhat(nu_n)/nu_n^((1-r)/2)| <= 0.05", abs(drift) <= 0.05)
    for r in rs:
        seq = lambda_upper_sequence("q", r, 1.0, 3, 1.0, n_max, n_min=20)
        lams = seq.values()
        nus = np.array([e.nu_at_min for _, e in sorted(seq.entries.items())])
        s = _slope(nus, lams)
        rep.add(f"radial-exponent-q-r{r}", {"family": "q", "r": r, "N": 3, "R": 1.0, "n": [20, n_max]},
                s, 1 - r, "|slope - (1 - r)| <= 0.05", abs(s - (1 - r)) <= 0.05)
    return rep


def suite_hn(families=("q", "r"), rs=(0.0, 0.5, 1.0, 2.0), n_max: int = 200, grid: int = 2000) -> VerificationReport:
    """Infima of h_n are positive without downward trend; h_n -> 1 at the peak."""
    rep = VerificationReport("hn", {"families": list(families), "rs": list(rs), "n_max": n_max, "grid": grid})
    ns = np.arange(1, n_max + 1)
    for kind in families:
        for r in rs:
            base = _family(kind, r)
            res = [hn_infimum(base, kind, int(n), grid) for n in ns]
            infs = np.array([h.inf_value for h in res])
            bnd = np.array([h.boundary_limit for h in res[:100]])
            s = _slope(ns, infs)
            inputs = {"family": kind, "r": r, "n": [1, n_max]}
            rep.add(f"hn-positive-{kind}-r{r}", inputs, float(infs.min()), 0.0, "min inf h_n > 0",
                    infs.min() > 0)
            rep.add(f"hn-trend-{kind}-r{r}", inputs, s, -0.05, "log-log slope of inf h_n >= -0.05", s >= -0.05)
            dev = float(np.max(np.abs(bnd - 1)))
            rep.add(f"hn-boundary-{kind}-r{r}", {**inputs, "n": [1, min(100, n_max)]}, dev, 1e-4,
                    "max |h_n(nu_n^-) - 1| <= 1e-4", dev <= 1e-4)
    return rep


def suite_bachillerato(rs=(-1.0, 0.0, 1.0, 3.0), nus=(1e-3, 1e-2, 0.1, 1.0, 10.0)) -> VerificationReport:
    """|int_0^nu t^r sin(1/t) dt| <= (pi + 2) nu^(r+2), its small-nu rate, and the term structure."""
    rep = VerificationReport("bachillerato", {"rs": list(rs), "nus": list(nus)})
    for r in rs:
        for nu in nus:
            q = oscillatory_integral(r, nu)
            bound = (math.pi + 2) * nu ** (r + 2)
            rep.add(f"bound-r{r}-nu{nu:g}", {"r": r, "nu": nu}, q.value, bound, "|I| <= (pi+2) nu^(r+2)",
                    abs(q.value) <= bound)
            if r > -1:
                other = float(sine_inverse_primitive(r, np.array([nu]))[0])
                dev = abs(q.value - other) / nu ** (r + 2)
                rep.add(f"cross-r{r}-nu{nu:g}", {"r": r, "nu": nu}, dev, 1e-9,
                        "|alternating sum - panel primitive| / nu^(r+2) <= 1e-9", dev <= 1e-9)
        m = np.unique(np.geomspace(16, 1600, 12).round())
        small = 1.0 / (2 * math.pi * m)
        vals = np.array([oscillatory_integral(r, v).value for v in small])
        ok = bool(np.all(vals > 0))
        s = _slope(small, np.abs(vals)) if ok else math.nan
        rep.add(f"rate-r{r}", {"r": r, "nu": [float(small.min()), float(small.max())]}, s, r + 2,
                "|slope - (r + 2)| <= 0.1", ok and abs(s - (r + 2)) <= 0.1)
        terms = alternating_terms(r, 1, 400)
        mono = bool(np.all(terms > 0) and np.all(np.diff(terms) < 0))
        rep.add(f"terms-r{r}", {"r": r, "k": [1, 400]}, float(terms[-1]), 0.0,
                "a_k > 0 and strictly decreasing", mono)
    return rep


def oracle_cases(seed: int = DEFAULT_SEED, count: int = 20):
    """Random (family, r, n, nu) with families alternating between q and r."""
    rng = np.random.default_rng(seed)
    cases = []
    for i in range(count):
        kind = "q" if i % 2 == 0 else "r"
        r = float(rng.uniform(0.0, 3.0))
        n = int(rng.integers(1, 4 if kind == "q" else 3))
        nl = _family(kind, r)
        a, b = sorted((zero_at(nl, n), zero_at(nl, n + 1)))
        nu = a + (b - a) * float(rng.uniform(0.1, 0.9))
        cases.append((kind, r, n, nu))
    return cases


def suite_oracle(seed: int = DEFAULT_SEED, count: int = 20, L: float = 1.0) -> VerificationReport:
    """Time-map lambda(nu) against the shooting oracle, relative error <= 1e-6."""
    rep = VerificationReport("oracle", {"seed": seed, "count": count, "L": L})
    for i, (kind, r, n, nu) in enumerate(oracle_cases(seed, count)):
        nl = _family(kind, r)
        lam = lambda_of_nu(nl, L, nu)
        shot, _ = shooting_lambda(nl, L, nu)
        err = abs(lam - shot) / shot
        rep.add(f"oracle-{i:02d}", {"family": kind, "r": r, "n": n, "nu": nu},
                {"timemap": lam, "shooting": shot, "rel_err": err}, 1e-6, "rel_err <= 1e-6", err <= 1e-6)
    return rep


def run_suite(name: str, **kwargs) -> VerificationReport:
    table = {"bounds": suite_bounds, "hn": suite_hn, "bachillerato": suite_bachillerato, "oracle": suite_oracle}
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return table[name](**kwargs)


__all__ = ["VerificationReport", "run_suite", "SUITES", "DEFAULT_SEED", "fit_exponent"]

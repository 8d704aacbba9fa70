"""Command-line interface: ``oscbif <command> [options]``.

Commands: diagram, lambda-seq, verify, asymptotics, profile.  Options may also
come from a key=value config file (``--config``); the command line wins.
Exit status is 0 iff every requested computation and check succeeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import asymptotics, verify
from .exceptions import ConfigError, OscbifError
from .nonlinearity import Family, Nonlinearity, zeros
from .radial import lambda_upper_sequence
from .svg import Chart
from .timemap import LambdaSequence, Method, SequenceEntry, branch, lambda_n_sequence, profile

COMMANDS = ("diagram", "lambda-seq", "verify", "asymptotics", "profile")
FAMILIES = ("sine_u", "inverse_sine_u", "shifted_inverse_sine", "constant", "linear", "power")


@dataclass
class RunConfig:
    command: str
    family: str = "sine_u"
    r: float = 0.0
    gamma: float = 1.0
    alpha: float = 1.0
    L: float | None = None
    N: int | None = None
    R: float | None = None
    n_min: int = 1
    n_max: int = 10
    grid: int = 64
    tol: float = 1e-11
    nu: float | None = None
    samples: int = 201
    suite: str | None = None
    seed: int = verify.DEFAULT_SEED
    input: str | None = None
    out: str | None = None
    svg: str | None = None

    @property
    def radial(self) -> bool:
        return self.N is not None or self.R is not None

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.radial:
            if self.L is not None:
                raise ConfigError("give either L (interval) or N and R (annulus), not both")
            if self.N is None or self.R is None or self.N < 2 or not self.R > 0:
                raise ConfigError("radial runs need N >= 2 and R > 0")
            if self.command not in ("lambda-seq", "asymptotics"):
                raise ConfigError(f"{self.command} works on the interval (0, L) only")
            if self.family not in ("sine_u", "inverse_sine_u"):
                raise ConfigError("radial sequences are defined for sine_u and inverse_sine_u")
        elif self.L is None:
            self.L = 1.0
        if self.L is not None and not self.L > 0:
            raise ConfigError("L must be positive")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ConfigError("need 1 <= n_min <= n_max")
        if self.grid < 4:
            raise ConfigError("grid must be at least 4")
        if self.command == "verify" and self.suite not in verify.SUITES:
            raise ConfigError(f"verify needs --suite in {{{', '.join(verify.SUITES)}}}")
        if self.command == "profile" and self.nu is None:
            raise ConfigError("profile needs --nu")
        return self

    def nonlinearity(self) -> Nonlinearity:
        fam = Family(self.family)
        if fam is Family.SINE_U:
            return Nonlinearity.sine_u(self.r, self.gamma)
        if fam is Family.INVERSE_SINE_U:
            return Nonlinearity.inverse_sine_u(self.r, self.gamma)
        if fam is Family.SHIFTED_INVERSE_SINE:
            return Nonlinearity.shifted_inverse_sine(self.alpha, self.r, self.gamma)
        if fam is Family.CONSTANT:
            return Nonlinearity.constant(self.gamma)
        if fam is Family.LINEAR:
            return Nonlinearity.linear(self.gamma)
        return Nonlinearity.power(self.r, self.gamma)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value: str):
    kind = _TYPES[key]
    if value in ("", "none", "None"):
        return None
    if "int" in kind:
        return int(value)
    if "float" in kind:
        return float(value)
    return value


def read_config(path: str) -> dict:
    """Parse a plain-text key=value file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _TYPES or key == "command":
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _coerce(key, value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oscbif", description="Bifurcation diagrams and lambda_n sequences "
                                "for -u'' = lam f(u) with oscillatory nonnegative f.")
    p.add_argument("command", choices=COMMANDS)
    S = argparse.SUPPRESS
    p.add_argument("--family", choices=FAMILIES, default=S)
    p.add_argument("--r", type=float, default=S, help="exponent r >= 0")
    p.add_argument("--gamma", type=float, default=S, help="constant multiplier g (default 1)")
    p.add_argument("--alpha", type=float, default=S, help="accumulation point for shifted_inverse_sine")
    p.add_argument("--L", type=float, default=S, help="interval length (1D)")
    p.add_argument("--N", type=int, default=S, help="space dimension (radial)")
    p.add_argument("--R", type=float, default=S, help="outer annulus radius (radial)")
    p.add_argument("--n-min", dest="n_min", type=int, default=S)
    p.add_argument("--n-max", dest="n_max", type=int, default=S)
    p.add_argument("--grid", type=int, default=S, help="branch samples per window (diagram)")
    p.add_argument("--tol", type=float, default=S, help="relative quadrature tolerance (diagram)")
    p.add_argument("--nu", type=float, default=S, help="peak value for profile")
    p.add_argument("--samples", type=int, default=S)
    p.add_argument("--suite", choices=verify.SUITES, default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--input", default=S, help="sequence CSV for asymptotics")
    p.add_argument("--out", default=S, help="output path (default stdout)")
    p.add_argument("--svg", default=S, help="optional SVG path")
    p.add_argument("--config", default=None, help="key=value config file")
    return p


def parse_config(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    path = ns.pop("config")
    merged = read_config(path) if path else {}
    merged.update(ns)
    return RunConfig(**merged).validate()


# --------------------------------------------------------------------------
# Output helpers
# --------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(verify._clean(obj), sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_diagram(cfg: RunConfig) -> int:
    nl = cfg.nonlinearity()
    zeros(nl, 1)  # rejects families without zeros
    rows, chart, ok = [], Chart("lambda", "||u||_inf", logx=True), True
    for n in range(cfg.n_min, cfg.n_max + 1):
        br = branch(nl, cfg.L, n, grid=cfg.grid, rtol=cfg.tol)
        ok &= math.isfinite(br.lambda_min)
        for p in br.points:
            rows.append((n, p.nu, p.lam, p.quad_error))
        good = [p for p in br.points if p.ok]
        chart.line([p.lam for p in good], [p.nu for p in good], f"n={n}")
        chart.marker(br.lambda_min, br.nu_at_min)
    _emit(_csv(("n", "nu", "lambda", "quad_error"), rows), cfg.out)
    if cfg.svg:
        _emit(chart.render(), cfg.svg)
    return 0 if ok else 1


def _sequence(cfg: RunConfig) -> LambdaSequence:
    if cfg.radial:
        kind = "q" if cfg.family == "sine_u" else "r"
        return lambda_upper_sequence(kind, cfg.r, cfg.gamma, cfg.N, cfg.R, cfg.n_max, cfg.n_min)
    return lambda_n_sequence(cfg.nonlinearity(), cfg.L, cfg.n_max, cfg.n_min)


def _sequence_csv(seq: LambdaSequence, radial: bool) -> str:
    items = [seq.entries[n] for n in sorted(seq.entries)]
    if radial:
        return _csv(("n", "nu_n", "lambda_bar_n", "method"), [(e.n, e.nu_at_min, e.lam, e.method.value) for e in items])
    return _csv(("n", "lambda_n", "nu_at_min", "method"), [(e.n, e.lam, e.nu_at_min, e.method.value) for e in items])


def cmd_lambda_seq(cfg: RunConfig) -> int:
    seq = _sequence(cfg)
    _emit(_sequence_csv(seq, cfg.radial), cfg.out)
    if cfg.svg:
        chart = Chart("n", "lambda_n", logx=True, logy=True)
        good = seq.usable()
        chart.line([e.n for e in good], [e.lam for e in good], cfg.family)
        _emit(chart.render(), cfg.svg)
    return 0 if len(seq.usable()) == len(seq.entries) else 1


def read_sequence_csv(path: str) -> LambdaSequence:
    """Read a CSV written by lambda-seq (either schema)."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.DictReader(fh))
        entries = {}
        for row in rows:
            lam = float(row.get("lambda_n", row.get("lambda_bar_n")))
            nu = float(row.get("nu_at_min", row.get("nu_n")))
            n = int(row["n"])
            entries[n] = SequenceEntry(n, lam, Method(row["method"]), nu, math.isfinite(lam) and lam > 0)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed sequence CSV {path!r}: {exc}") from exc
    if not entries:
        raise ConfigError(f"sequence CSV {path!r} has no rows")
    return LambdaSequence(entries)


def cmd_asymptotics(cfg: RunConfig) -> int:
    seq = read_sequence_csv(cfg.input) if cfg.input else _sequence(cfg)
    fit = asymptotics.fit_exponent(seq, cfg.n_min)
    cls = asymptotics.classify(seq, cfg.family)
    doc = {
        "family": cfg.family, "r": cfg.r, "side": cls.side.value, "slope": fit.slope, "stderr": fit.stderr,
        "regime": cls.regime.value, "threshold_estimate": cls.threshold_estimate,
        "n_range": list(fit.n_range), "points_used": fit.points_used, "config": asdict(cfg),
    }
    _emit(_json(doc), cfg.out)
    return 0 if cls.regime is not asymptotics.Regime.INCONCLUSIVE else 1


def cmd_verify(cfg: RunConfig) -> int:
    kwargs = {"seed": cfg.seed} if cfg.suite == "oracle" else {}
    rep = verify.run_suite(cfg.suite, **kwargs)
    rep.config = {**rep.config, "run": asdict(cfg)}
    _emit(rep.to_json(), cfg.out)
    return 0 if rep.ok else 1


def cmd_profile(cfg: RunConfig) -> int:
    prof = profile(cfg.nonlinearity(), cfg.L, cfg.nu, cfg.samples)
    _emit(_csv(("x", "u"), zip(prof.x, prof.u)), cfg.out)
    if cfg.svg:
        chart = Chart("x", "u")
        chart.line(prof.x, prof.u, f"nu={cfg.nu:g}")
        _emit(chart.render(), cfg.svg)
    return 0


HANDLERS = {"diagram": cmd_diagram, "lambda-seq": cmd_lambda_seq, "verify": cmd_verify,
            "asymptotics": cmd_asymptotics, "profile": cmd_profile}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"oscbif: config error: {exc}", file=sys.stderr)
        return 2
    except (OscbifError, ValueError) as exc:
        print(f"oscbif: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

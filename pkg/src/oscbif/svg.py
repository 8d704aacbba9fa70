"""Minimal SVG line charts: polylines, point markers and labelled axes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

WIDTH, HEIGHT, MARGIN = 640, 480, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass
class Chart:
    xlabel: str
    ylabel: str
    logx: bool = False
    logy: bool = False
    lines: list = field(default_factory=list)
    markers: list = field(default_factory=list)

    def line(self, xs, ys, label: str = ""):
        self.lines.append((np.asarray(xs, float), np.asarray(ys, float), label))

    def marker(self, x: float, y: float):
        self.markers.append((float(x), float(y)))

    def _tx(self, v, lo, hi, log, size, flip):
        v = np.log10(v) if log else v
        lo, hi = (math.log10(lo), math.log10(hi)) if log else (lo, hi)
        frac = (v - lo) / (hi - lo) if hi > lo else np.full_like(np.asarray(v, float), 0.5)
        span = size - 2 * MARGIN
        return MARGIN + (1 - frac) * span if flip else MARGIN + frac * span

    def render(self) -> str:
        xs = np.concatenate([l[0] for l in self.lines] + [np.array([m[0] for m in self.markers])])
        ys = np.concatenate([l[1] for l in self.lines] + [np.array([m[1] for m in self.markers])])
        keep = np.isfinite(xs) & np.isfinite(ys)
        if self.logx:
            keep &= xs > 0
        if self.logy:
            keep &= ys > 0
        xlo, xhi = (float(xs[keep].min()), float(xs[keep].max())) if keep.any() else (0.0, 1.0)
        ylo, yhi = (float(ys[keep].min()), float(ys[keep].max())) if keep.any() else (0.0, 1.0)
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
               f'viewBox="0 0 {WIDTH} {HEIGHT}">',
               f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
               f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}" '
               'fill="none" stroke="black"/>']
        for i, (x, y, label) in enumerate(self.lines):
            ok = np.isfinite(x) & np.isfinite(y)
            if self.logx:
                ok &= x > 0
            if self.logy:
                ok &= y > 0
            px = self._tx(x[ok], xlo, xhi, self.logx, WIDTH, False)
            py = self._tx(y[ok], ylo, yhi, self.logy, HEIGHT, True)
            pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
            out.append(f'<polyline fill="none" stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="1.5" '
                       f'points="{pts}"><title>{label}</title></polyline>')
        for x, y in self.markers:
            if (self.logx and x <= 0) or (self.logy and y <= 0) or not (math.isfinite(x) and math.isfinite(y)):
                continue
            px = float(self._tx(np.array(x), xlo, xhi, self.logx, WIDTH, False))
            py = float(self._tx(np.array(y), ylo, yhi, self.logy, HEIGHT, True))
            out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="black"/>')
        tag = " (log)"
        out.append(f'<text x="{WIDTH / 2:.0f}" y="{HEIGHT - 15}" text-anchor="middle" font-size="14">'
                   f'{self.xlabel}{tag if self.logx else ""}</text>')
        out.append(f'<text x="15" y="{HEIGHT / 2:.0f}" text-anchor="middle" font-size="14" '
                   f'transform="rotate(-90 15 {HEIGHT / 2:.0f})">{self.ylabel}{tag if self.logy else ""}</text>')
        for val, x, anchor in ((xlo, MARGIN, "start"), (xhi, WIDTH - MARGIN, "end")):
            out.append(f'<text x="{x}" y="{HEIGHT - MARGIN + 18}" text-anchor="{anchor}" font-size="11">{val:.4g}</text>')
        for val, y in ((ylo, HEIGHT - MARGIN), (yhi, MARGIN + 11)):
            out.append(f'<text x="{MARGIN - 4}" y="{y}" text-anchor="end" font-size="11">{val:.4g}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

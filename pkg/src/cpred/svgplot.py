"""Tiny dependency-free SVG line plots for the diagnostic figures."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _nice_ticks(lo, hi, n=5):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return []
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v):
    return f"{v:.4g}"


class LinePlot:
    def __init__(self, title="", xlabel="", ylabel="", width=640, height=420):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.width = width
        self.height = height
        self.series = []

    def add(self, xs, ys, label=None, dashed=False, markers=False, color=None):
        pts = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
        color = color or PALETTE[len(self.series) % len(PALETTE)]
        self.series.append({"pts": pts, "label": label, "dashed": dashed, "markers": markers, "color": color})
        return self

    def _bounds(self):
        xs = [p[0] for s in self.series for p in s["pts"]]
        ys = [p[1] for s in self.series for p in s["pts"]]
        if not xs:
            return 0.0, 1.0, 0.0, 1.0
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 == y0:
            y0, y1 = y0 - 0.5, y1 + 0.5
        pad = 0.05 * (y1 - y0)
        return x0, x1, y0 - pad, y1 + pad

    def render(self) -> str:
        left, right, top, bottom = 64, 24 + (110 if any(s["label"] for s in self.series) else 0), 36, 48
        pw = self.width - left - right
        ph = self.height - top - bottom
        x0, x1, y0, y1 = self._bounds()

        def sx(x):
            return left + (x - x0) / (x1 - x0) * pw

        def sy(y):
            return top + ph - (y - y0) / (y1 - y0) * ph

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="11">',
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>',
            f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
        ]
        for t in _nice_ticks(x0, x1):
            X = sx(t)
            out.append(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 4}" stroke="#444"/>')
            out.append(f'<text x="{X:.2f}" y="{top + ph + 16}" text-anchor="middle">{_fmt(t)}</text>')
        for t in _nice_ticks(y0, y1):
            Y = sy(t)
            out.append(f'<line x1="{left - 4}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="#444"/>')
            out.append(f'<text x="{left - 6}" y="{Y + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
        if self.title:
            out.append(f'<text x="{left + pw / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(self.title)}</text>')
        if self.xlabel:
            out.append(f'<text x="{left + pw / 2:.1f}" y="{self.height - 10}" text-anchor="middle">{escape(self.xlabel)}</text>')
        if self.ylabel:
            cy = top + ph / 2
            out.append(f'<text x="14" y="{cy:.1f}" text-anchor="middle" transform="rotate(-90 14 {cy:.1f})">{escape(self.ylabel)}</text>')

        for s in self.series:
            if not s["pts"]:
                continue
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s["pts"])
            dash = ' stroke-dasharray="4 3"' if s["dashed"] else ""
            out.append(f'<polyline points="{path}" fill="none" stroke="{s["color"]}" stroke-width="1.5"{dash}/>')
            if s["markers"]:
                for x, y in s["pts"]:
                    out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{s["color"]}"/>')

        ly = top + 8
        for s in self.series:
            if not s["label"]:
                continue
            lx = left + pw + 10
            out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" stroke="{s["color"]}" stroke-width="2"/>')
            out.append(f'<text x="{lx + 22}" y="{ly + 4}">{escape(str(s["label"]))}</text>')
            ly += 16
        out.append("</svg>")
        return "\n".join(out) + "\n"

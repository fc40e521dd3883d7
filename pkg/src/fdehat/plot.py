"""Dependency-free SVG line charts for quick inspection of solutions."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .errors import RenderError

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 30, 40, 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf")


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        pad = max(abs(lo), 1.0) * 0.05
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [k * step for k in range(first, last + 1)]


def _fmt_tick(v: float) -> str:
    if v == 0:
        return "0"
    if 1e-3 <= abs(v) < 1e5:
        return f"{v:.6g}"
    return f"{v:.2e}"


def svg_text(series, title: str | None = None, xlabel: str = "t",
             ylabel: str | None = None) -> str:
    """Render ``series``, a sequence of ``(label, t, values)``, to SVG source."""
    series = [(str(lbl), np.asarray(t, float), np.asarray(v, float)) for lbl, t, v in series]
    if not series:
        raise RenderError("nothing to plot: empty series list")
    bad = [lbl for lbl, t, v in series
           if t.size == 0 or t.shape != v.shape
           or not (np.all(np.isfinite(t)) and np.all(np.isfinite(v)))]
    if bad:
        raise RenderError("series with missing or non-finite values: " + ", ".join(bad))
    x_lo = min(float(t.min()) for _, t, _ in series)
    x_hi = max(float(t.max()) for _, t, _ in series)
    y_lo = min(float(v.min()) for _, _, v in series)
    y_hi = max(float(v.max()) for _, _, v in series)
    x_ticks = nice_ticks(x_lo, x_hi)
    y_ticks = nice_ticks(y_lo, y_hi)
    x_lo, x_hi = min(x_lo, x_ticks[0]), max(x_hi, x_ticks[-1])
    y_lo, y_hi = min(y_lo, y_ticks[0]), max(y_hi, y_ticks[-1])
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y):
        return MARGIN_T + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black"/>',
    ]
    for x in x_ticks:
        px = sx(x)
        out.append(f'<line x1="{px:.2f}" y1="{MARGIN_T + ph}" x2="{px:.2f}" '
                   f'y2="{MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{MARGIN_T + ph + 20}" '
                   f'text-anchor="middle">{_fmt_tick(x)}</text>')
    for y in y_ticks:
        py = sy(y)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{py:.2f}" x2="{MARGIN_L}" '
                   f'y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{py + 4:.2f}" '
                   f'text-anchor="end">{_fmt_tick(y)}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="18" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
                   f'transform="rotate(-90 18 {MARGIN_T + ph / 2:.1f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
                   f'font-size="15">{escape(title)}</text>')
    for k, (label, t, v) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(t, v))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                   f'points="{pts}"><title>{escape(label)}</title></polyline>')
    lx, ly = MARGIN_L + pw - 150, MARGIN_T + 12
    out.append(f'<rect x="{lx - 8}" y="{ly - 10}" width="150" '
               f'height="{18 * len(series) + 6}" fill="white" stroke="#888"/>')
    for k, (label, _, _) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        y = ly + 18 * k
        out.append(f'<line x1="{lx}" y1="{y + 2}" x2="{lx + 24}" y2="{y + 2}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{y + 6}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(series, path, **kwargs) -> None:
    text = svg_text(series, **kwargs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)

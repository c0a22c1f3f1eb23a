"""Minimal deterministic SVG line plots.

Only what the figures need: a fixed viewport, linear axes with ticks, a set
of polylines, optional horizontal reference lines and a legend. Coordinates
are written with a fixed number of decimals so identical data gives
byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 720, 480
MARGIN = dict(left=70, right=170, top=30, bottom=50)
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


@dataclass
class Series:
    x: np.ndarray
    y: np.ndarray
    label: str
    color: str | None = None
    dashed: bool = False


@dataclass
class Plot:
    title: str
    xlabel: str
    ylabel: str
    series: list[Series] = field(default_factory=list)
    hlines: list[tuple[float, str]] = field(default_factory=list)
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None

    def add(self, x, y, label: str, color: str | None = None, dashed: bool = False) -> None:
        self.series.append(Series(np.asarray(x, float), np.asarray(y, float), label, color, dashed))


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick values covering ``[lo, hi]``, steps of 1, 2 or 5 times a power of ten."""
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _limits(plot: Plot) -> tuple[float, float, float, float]:
    finite = lambda a: a[np.isfinite(a)]
    xs = np.concatenate([finite(s.x) for s in plot.series]) if plot.series else np.array([0.0, 1.0])
    ys = np.concatenate([finite(s.y) for s in plot.series]) if plot.series else np.array([0.0, 1.0])
    ys = np.concatenate([ys, [v for v, _ in plot.hlines]])
    x0, x1 = plot.xlim or (float(xs.min()), float(xs.max()))
    y0, y1 = plot.ylim or (float(ys.min()), float(ys.max()))
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    if plot.ylim is None:
        pad = 0.05 * (y1 - y0)
        y0, y1 = y0 - pad, y1 + pad
    return x0, x1, y0, y1


def render(plot: Plot) -> str:
    """The SVG document as a string."""
    x0, x1, y0, y1 = _limits(plot)
    L, Rm, T, B = MARGIN["left"], MARGIN["right"], MARGIN["top"], MARGIN["bottom"]
    pw, ph = WIDTH - L - Rm, HEIGHT - T - B
    sx = lambda x: L + (x - x0) / (x1 - x0) * pw
    sy = lambda y: T + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" font-size="14">{escape(plot.title)}</text>',
        f'<defs><clipPath id="plotarea"><rect x="{L}" y="{T}" width="{pw}" height="{ph}"/></clipPath></defs>',
        f'<rect x="{L}" y="{T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in nice_ticks(x0, x1):
        X = _fmt(sx(t))
        out.append(f'<line x1="{X}" y1="{T + ph}" x2="{X}" y2="{T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X}" y="{T + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in nice_ticks(y0, y1):
        Y = _fmt(sy(t))
        out.append(f'<line x1="{L - 5}" y1="{Y}" x2="{L}" y2="{Y}" stroke="black"/>')
        out.append(f'<text x="{L - 8}" y="{Y}" text-anchor="end" dominant-baseline="middle">{t:g}</text>')
    out.append(f'<text x="{L + pw / 2:.0f}" y="{HEIGHT - 10}" text-anchor="middle">{escape(plot.xlabel)}</text>')
    out.append(
        f'<text x="16" y="{T + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {T + ph / 2:.0f})">{escape(plot.ylabel)}</text>'
    )

    out.append('<g clip-path="url(#plotarea)">')
    for value, label in plot.hlines:
        Y = _fmt(sy(value))
        out.append(
            f'<line x1="{L}" y1="{Y}" x2="{L + pw}" y2="{Y}" stroke="#555" stroke-dasharray="2,3">'
            f"<title>{escape(label)}</title></line>"
        )
        out.append(f'<text x="{L + pw - 4}" y="{_fmt(sy(value) - 4)}" text-anchor="end" fill="#555">{escape(label)}</text>')
    for k, s in enumerate(plot.series):
        color = s.color or PALETTE[k % len(PALETTE)]
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        # Non-finite samples split the curve into separate polylines.
        ok = np.isfinite(s.x) & np.isfinite(s.y)
        runs, cur = [], []
        for xv, yv, good in zip(s.x, s.y, ok):
            if good:
                cur.append(f"{_fmt(sx(xv))},{_fmt(sy(yv))}")
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        for pts in runs:
            out.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{" ".join(pts)}"/>'
            )
    out.append("</g>")

    lx = L + pw + 12
    for k, s in enumerate(plot.series):
        color = s.color or PALETTE[k % len(PALETTE)]
        y = T + 10 + 18 * k
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 24}" y2="{y}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 30}" y="{y}" dominant-baseline="middle">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write(plot: Plot, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render(plot))

"""Self-contained SVG line and bar charts, no plotting dependency."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]

WIDTH, HEIGHT = 960, 600
LEFT, RIGHT, TOP, BOTTOM = 90, 200, 60, 80
MAX_POINTS = 1500


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.floor(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-9 * step:
        if v >= lo - 1e-9 * step:
            ticks.append(round(v, 12))
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _thin(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Decimate to at most MAX_POINTS, keeping the endpoints and the minimum."""
    if len(x) <= MAX_POINTS:
        return x, y
    idx = np.unique(np.r_[np.linspace(0, len(x) - 1, MAX_POINTS).astype(int), np.argmin(y)])
    return x[idx], y[idx]


class _Frame:
    def __init__(self, title: str, x_label: str, y_label: str, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.pw = WIDTH - LEFT - RIGHT
        self.ph = HEIGHT - TOP - BOTTOM
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="Helvetica, Arial, sans-serif">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
            f'<text x="{LEFT + self.pw / 2:.1f}" y="32" text-anchor="middle" font-size="18">{_escape(title)}</text>',
        ]
        self.x_label, self.y_label = x_label, y_label

    def px(self, x: float) -> float:
        return LEFT + (x - self.x0) / (self.x1 - self.x0) * self.pw

    def py(self, y: float) -> float:
        return TOP + self.ph - (y - self.y0) / (self.y1 - self.y0) * self.ph

    def axes(self, x_ticks: Sequence[float] | None = None) -> None:
        bottom = TOP + self.ph
        for v in nice_ticks(self.y0, self.y1):
            y = self.py(v)
            self.parts.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + self.pw}" y2="{y:.2f}" stroke="#e0e0e0"/>')
            self.parts.append(f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="12">{_fmt(v)}</text>')
        if x_ticks is None:
            for v in nice_ticks(self.x0, self.x1):
                x = self.px(v)
                self.parts.append(f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" stroke="#000"/>')
                self.parts.append(f'<text x="{x:.2f}" y="{bottom + 20}" text-anchor="middle" font-size="12">{_fmt(v)}</text>')
        if self.y0 < 0 < self.y1:
            y = self.py(0.0)
            self.parts.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + self.pw}" y2="{y:.2f}" stroke="#555" stroke-dasharray="4 3"/>')
        self.parts.append(
            f'<rect x="{LEFT}" y="{TOP}" width="{self.pw}" height="{self.ph}" fill="none" stroke="#000"/>'
        )
        self.parts.append(
            f'<text x="{LEFT + self.pw / 2:.1f}" y="{HEIGHT - 25}" text-anchor="middle" font-size="14">{_escape(self.x_label)}</text>'
        )
        cy = TOP + self.ph / 2
        self.parts.append(
            f'<text x="22" y="{cy:.1f}" text-anchor="middle" font-size="14" transform="rotate(-90 22 {cy:.1f})">{_escape(self.y_label)}</text>'
        )

    def legend(self, labels: Sequence[str]) -> None:
        x = LEFT + self.pw + 20
        for k, label in enumerate(labels):
            y = TOP + 20 + 24 * k
            color = COLORS[k % len(COLORS)]
            self.parts.append(f'<line x1="{x}" y1="{y}" x2="{x + 24}" y2="{y}" stroke="{color}" stroke-width="3"/>')
            self.parts.append(f'<text x="{x + 32}" y="{y + 4}" font-size="13">{_escape(label)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>", ""])


def line_chart(
    series: Sequence[tuple[str, np.ndarray, np.ndarray]],
    *,
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """SVG text for one or more (label, x, y) polylines sharing axes."""
    if not series:
        raise ValueError("no series to plot")
    xs = np.concatenate([np.asarray(x, float) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, float) for _, _, y in series])
    if xs.size == 0:
        raise ValueError("series are empty")
    y_lo, y_hi = float(ys.min()), float(ys.max())
    pad = 0.05 * (y_hi - y_lo or abs(y_hi) or 1.0)
    y_lo = min(y_lo - pad, 0.0) if y_lo >= 0 else y_lo - pad
    frame = _Frame(title, x_label, y_label, (float(xs.min()), float(xs.max())), (y_lo, y_hi + pad))
    frame.axes()
    for k, (_, x, y) in enumerate(series):
        x, y = _thin(np.asarray(x, float), np.asarray(y, float))
        pts = " ".join(f"{frame.px(a):.2f},{frame.py(b):.2f}" for a, b in zip(x, y))
        frame.parts.append(
            f'<polyline fill="none" stroke="{COLORS[k % len(COLORS)]}" stroke-width="2" points="{pts}"/>'
        )
    frame.legend([label for label, _, _ in series])
    return frame.render()


def bar_chart(
    bars: Sequence[tuple[str, float]],
    *,
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """SVG text for signed vertical bars, positive blue and negative red."""
    if not bars:
        raise ValueError("no bars to plot")
    values = [v for _, v in bars]
    lo, hi = min(0.0, min(values)), max(0.0, max(values))
    pad = 0.08 * (hi - lo or 1.0)
    frame = _Frame(title, x_label, y_label, (0.0, float(len(bars))), (lo - pad, hi + pad))
    frame.axes(x_ticks=[])
    zero = frame.py(0.0)
    slot = frame.pw / len(bars)
    for k, (label, v) in enumerate(bars):
        x = LEFT + k * slot + 0.2 * slot
        y = frame.py(v)
        top, height = min(y, zero), abs(zero - y)
        color = COLORS[0] if v >= 0 else COLORS[1]
        frame.parts.append(
            f'<rect x="{x:.2f}" y="{top:.2f}" width="{0.6 * slot:.2f}" height="{height:.2f}" fill="{color}">'
            f"<title>{_escape(label)} = {v:.6g}</title></rect>"
        )
        frame.parts.append(
            f'<text x="{x + 0.3 * slot:.2f}" y="{TOP + frame.ph + 20}" text-anchor="middle" font-size="12">{_escape(label)}</text>'
        )
        label_y = y - 6 if v >= 0 else y + 16
        frame.parts.append(
            f'<text x="{x + 0.3 * slot:.2f}" y="{label_y:.2f}" text-anchor="middle" font-size="11">{v:.3f}</text>'
        )
    return frame.render()

"""Minimal standalone SVG bar charts for lattice distributions."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 480, 320
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 56, 16, 32, 44


def _nice_max(v):
    for top in (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.75, 1.0):
        if v <= top:
            return top
    return float(np.ceil(v * 4) / 4)


def bar_chart(indices, values, title: str, y_label: str) -> str:
    indices = list(indices)
    values = np.asarray(values, dtype=float)
    q = max(abs(n) for n in indices)
    ymax = _nice_max(float(values.max(initial=0.0)))
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B
    x0, y0 = MARGIN_L, MARGIN_T + ph
    slot = pw / len(indices)

    def x_of(n):
        return x0 + (n + q + 0.5) * slot

    def y_of(v):
        return y0 - v / ymax * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN_T}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = frac * ymax
        y = y_of(v)
        out.append(f'<line x1="{x0 - 4}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 6}" y="{y + 4:.2f}" text-anchor="end">{v:.3g}</text>')
    bw = slot * 0.7
    for n, v in zip(indices, values):
        h = v / ymax * ph
        out.append(f'<rect x="{x_of(n) - bw / 2:.2f}" y="{y0 - h:.2f}" width="{bw:.2f}" '
                   f'height="{h:.2f}" fill="steelblue"><title>n={n}: {v:.6g}</title></rect>')
    step = 5 if q >= 5 else 1
    for n in indices:
        if n % step == 0:
            out.append(f'<text x="{x_of(n):.2f}" y="{y0 + 14}" text-anchor="middle">{n / 100:g}</text>')
    out.append(f'<text x="{x0 + pw / 2:.1f}" y="{HEIGHT - 8}" text-anchor="middle">rate of return x</text>')
    out.append(f'<text x="14" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {MARGIN_T + ph / 2:.1f})">{escape(y_label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Minimal deterministic SVG line plots (no plotting library, no timestamps).

Builds multi-panel line charts as plain SVG strings; identical inputs produce
identical bytes, so rendered figures can be diffed in CI.
"""

import math

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f"]

PANEL_W = 360
PANEL_H = 300
MARGIN_L = 58
MARGIN_R = 14
MARGIN_T = 34
MARGIN_B = 46
FIG_PAD_TOP = 28


def _f(x: float) -> str:
    if x == 0:
        return "0"
    return format(float(x), ".6g")


def _nice_ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(n - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


class Panel:
    def __init__(self, title="", xlabel="", ylabel="", xlim=None, ylim=None):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.xlim = xlim
        self.ylim = ylim
        self.curves = []  # (label, xs, ys)

    def add_curve(self, label, xs, ys):
        self.curves.append((label, list(map(float, xs)), list(map(float, ys))))

    def _ranges(self):
        xs = [x for _, cx, _ in self.curves for x in cx]
        ys = [y for _, _, cy in self.curves for y in cy if math.isfinite(y)]
        xlo, xhi = (min(xs), max(xs)) if xs else (0.0, 1.0)
        ylo, yhi = (min(ys), max(ys)) if ys else (0.0, 1.0)
        if self.xlim:
            xlo, xhi = self.xlim
        if self.ylim:
            ylo, yhi = self.ylim
        else:
            pad = 0.05 * (yhi - ylo) or 0.05 * max(abs(yhi), 1.0)
            ylo, yhi = ylo - pad, yhi + pad
        if xhi == xlo:
            xhi = xlo + 1.0
        if yhi == ylo:
            yhi = ylo + 1.0
        return xlo, xhi, ylo, yhi

    def render(self, x0: float, y0: float) -> str:
        xlo, xhi, ylo, yhi = self._ranges()
        iw = PANEL_W - MARGIN_L - MARGIN_R
        ih = PANEL_H - MARGIN_T - MARGIN_B

        def sx(x):
            return x0 + MARGIN_L + (x - xlo) / (xhi - xlo) * iw

        def sy(y):
            return y0 + MARGIN_T + (1.0 - (y - ylo) / (yhi - ylo)) * ih

        parts = []
        parts.append(
            f'<rect x="{_f(x0 + MARGIN_L)}" y="{_f(y0 + MARGIN_T)}" width="{_f(iw)}" '
            f'height="{_f(ih)}" fill="none" stroke="#333333" stroke-width="1"/>')
        if self.title:
            parts.append(
                f'<text x="{_f(x0 + PANEL_W / 2)}" y="{_f(y0 + MARGIN_T - 10)}" '
                f'text-anchor="middle" font-size="13" font-family="sans-serif">'
                f'{self.title}</text>')
        for t in _nice_ticks(xlo, xhi):
            parts.append(
                f'<line x1="{_f(sx(t))}" y1="{_f(y0 + MARGIN_T + ih)}" '
                f'x2="{_f(sx(t))}" y2="{_f(y0 + MARGIN_T + ih + 4)}" stroke="#333333"/>')
            parts.append(
                f'<text x="{_f(sx(t))}" y="{_f(y0 + MARGIN_T + ih + 17)}" '
                f'text-anchor="middle" font-size="10" font-family="sans-serif">{_f(t)}</text>')
        for t in _nice_ticks(ylo, yhi):
            parts.append(
                f'<line x1="{_f(x0 + MARGIN_L - 4)}" y1="{_f(sy(t))}" '
                f'x2="{_f(x0 + MARGIN_L)}" y2="{_f(sy(t))}" stroke="#333333"/>')
            parts.append(
                f'<text x="{_f(x0 + MARGIN_L - 7)}" y="{_f(sy(t) + 3.5)}" '
                f'text-anchor="end" font-size="10" font-family="sans-serif">{_f(t)}</text>')
        if self.xlabel:
            parts.append(
                f'<text x="{_f(x0 + MARGIN_L + iw / 2)}" y="{_f(y0 + PANEL_H - 12)}" '
                f'text-anchor="middle" font-size="12" font-family="sans-serif">'
                f'{self.xlabel}</text>')
        if self.ylabel:
            cx, cy = x0 + 15, y0 + MARGIN_T + ih / 2
            parts.append(
                f'<text x="{_f(cx)}" y="{_f(cy)}" text-anchor="middle" font-size="12" '
                f'font-family="sans-serif" transform="rotate(-90 {_f(cx)} {_f(cy)})">'
                f'{self.ylabel}</text>')
        for idx, (label, cx, cy) in enumerate(self.curves):
            color = PALETTE[idx % len(PALETTE)]
            pts = []
            for x, y in zip(cx, cy):
                if xlo <= x <= xhi and math.isfinite(y):
                    yc = min(max(y, ylo), yhi)
                    pts.append(f"{_f(sx(x))},{_f(sy(yc))}")
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.3" '
                f'points="{" ".join(pts)}"/>')
        # legend
        ly = y0 + MARGIN_T + 6
        for idx, (label, _, _) in enumerate(self.curves):
            color = PALETTE[idx % len(PALETTE)]
            lx = x0 + MARGIN_L + iw - 112
            parts.append(
                f'<line x1="{_f(lx)}" y1="{_f(ly + 14 * idx)}" x2="{_f(lx + 18)}" '
                f'y2="{_f(ly + 14 * idx)}" stroke="{color}" stroke-width="1.6"/>')
            parts.append(
                f'<text x="{_f(lx + 23)}" y="{_f(ly + 14 * idx + 3.5)}" font-size="10" '
                f'font-family="sans-serif">{label}</text>')
        return "\n".join(parts)


def render_figure(title: str, panels, columns: int = 2) -> str:
    n = len(panels)
    cols = min(columns, n)
    rows = (n + cols - 1) // cols
    width = cols * PANEL_W
    height = rows * PANEL_H + FIG_PAD_TOP
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{_f(width / 2)}" y="20" text-anchor="middle" font-size="15" '
        f'font-family="sans-serif">{title}</text>',
    ]
    for i, panel in enumerate(panels):
        x0 = (i % cols) * PANEL_W
        y0 = FIG_PAD_TOP + (i // cols) * PANEL_H
        parts.append(panel.render(x0, y0))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

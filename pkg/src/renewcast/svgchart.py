"""Small deterministic SVG chart writer (linear and log10 axes).

Hand-rolled on purpose: output must be byte-identical across runs, so no
plotting library with embedded ids or timestamps. Coordinates are formatted
to fixed precision; text is XML-escaped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, max_ticks: int = 6):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / max(1, max_ticks - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _decade_ticks(lo: float, hi: float):
    lo_k = math.floor(math.log10(lo))
    hi_k = math.ceil(math.log10(hi))
    return [10.0 ** k for k in range(lo_k, hi_k + 1)]


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e5 or abs(v) < 1e-3:
        return f"{v:.0e}".replace("e+0", "e").replace("e+", "e").replace("e-0", "e-")
    return f"{v:g}"


@dataclass
class Axis:
    label: str = ""
    kind: str = "linear"          # linear | log
    lo: float = 0.0
    hi: float = 1.0

    def scale(self, v: float, a: float, b: float) -> float:
        """Map data value v onto pixel range [a, b]."""
        if self.kind == "log":
            f = (math.log10(v) - math.log10(self.lo)) / (
                math.log10(self.hi) - math.log10(self.lo))
        else:
            f = (v - self.lo) / (self.hi - self.lo)
        return a + f * (b - a)

    def ticks(self):
        return _decade_ticks(self.lo, self.hi) if self.kind == "log" \
            else _nice_ticks(self.lo, self.hi)


@dataclass
class Chart:
    title: str
    x: Axis
    y: Axis
    width: int = 560
    height: int = 420
    margin: tuple = (46, 16, 40, 78)   # top, right, bottom, left
    elements: list = field(default_factory=list)

    # -- plot-area pixel bounds
    @property
    def _px(self):
        top, right, bottom, left = self.margin
        return left, self.width - right, self.height - bottom, top  # x0, x1, y0(bottom), y1(top)

    def _xy(self, vx, vy):
        x0, x1, y0, y1 = self._px
        return self.x.scale(vx, x0, x1), self.y.scale(vy, y0, y1)

    def add_points(self, xs, ys, color, label="", radius=3.0):
        self.elements.append(("points", list(zip(xs, ys)), color, label, radius))

    def add_line(self, xs, ys, color, label="", dashed=False, width=1.6):
        self.elements.append(("line", list(zip(xs, ys)), color, label, dashed, width))

    def add_hline(self, value, label, color="#777777"):
        self.elements.append(("hline", value, label, color))

    def add_vline(self, value, label, color="#777777"):
        self.elements.append(("vline", value, label, color))

    def add_marker(self, vx, vy, label, color="#c53030"):
        self.elements.append(("marker", vx, vy, label, color))

    def _clip(self, pairs):
        out = []
        for vx, vy in pairs:
            if self.x.lo <= vx <= self.x.hi and self.y.lo <= vy <= self.y.hi:
                out.append((vx, vy))
        return out

    def render_group(self, dx=0.0) -> str:
        x0, x1, y0, y1 = self._px
        parts = [f'<g transform="translate({_fmt(dx)},0)" font-family="sans-serif">']
        parts.append(
            f'<text x="{_fmt((x0 + x1) / 2)}" y="20" text-anchor="middle" '
            f'font-size="13" font-weight="bold">{escape(self.title)}</text>'
        )
        # frame
        parts.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(y0 - y1)}" fill="none" stroke="#222222" stroke-width="1"/>'
        )
        # ticks + grid
        for t in self.x.ticks():
            if not (self.x.lo <= t <= self.x.hi):
                continue
            px = self.x.scale(t, x0, x1)
            parts.append(f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" '
                         f'y2="{_fmt(y0 + 4)}" stroke="#222222" stroke-width="1"/>')
            parts.append(f'<text x="{_fmt(px)}" y="{_fmt(y0 + 16)}" text-anchor="middle" '
                         f'font-size="10">{escape(_tick_label(t))}</text>')
        for t in self.y.ticks():
            if not (self.y.lo <= t <= self.y.hi):
                continue
            py = self.y.scale(t, y0, y1)
            parts.append(f'<line x1="{_fmt(x0 - 4)}" y1="{_fmt(py)}" x2="{_fmt(x0)}" '
                         f'y2="{_fmt(py)}" stroke="#222222" stroke-width="1"/>')
            parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(py)}" x2="{_fmt(x1)}" '
                         f'y2="{_fmt(py)}" stroke="#eeeeee" stroke-width="1"/>')
            parts.append(f'<text x="{_fmt(x0 - 7)}" y="{_fmt(py + 3)}" text-anchor="end" '
                         f'font-size="10">{escape(_tick_label(t))}</text>')
        # axis labels
        parts.append(f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(self.height - 8)}" '
                     f'text-anchor="middle" font-size="11">{escape(self.x.label)}</text>')
        parts.append(f'<text x="14" y="{_fmt((y0 + y1) / 2)}" text-anchor="middle" '
                     f'font-size="11" transform="rotate(-90 14 {_fmt((y0 + y1) / 2)})">'
                     f'{escape(self.y.label)}</text>')

        legend_y = y1 + 12
        for el in self.elements:
            kind = el[0]
            if kind == "points":
                _, pairs, color, label, radius = el
                for vx, vy in self._clip(pairs):
                    px, py = self._xy(vx, vy)
                    parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" '
                                 f'r="{_fmt(radius)}" fill="{color}"/>')
            elif kind == "line":
                _, pairs, color, label, dashed, width = el
                pts = " ".join(f"{_fmt(self._xy(vx, vy)[0])},{_fmt(self._xy(vx, vy)[1])}"
                               for vx, vy in self._clip(pairs))
                dash = ' stroke-dasharray="6 4"' if dashed else ""
                parts.append(f'<polyline points="{pts}" fill="none" '
                             f'stroke="{color}" stroke-width="{_fmt(width)}"{dash}/>')
            elif kind == "hline":
                _, value, label, color = el
                py = self.y.scale(value, y0, y1)
                parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(py)}" x2="{_fmt(x1)}" '
                             f'y2="{_fmt(py)}" stroke="{color}" stroke-width="1.2" '
                             f'stroke-dasharray="3 3"/>')
                parts.append(f'<text x="{_fmt(x0 + 5)}" y="{_fmt(py - 4)}" '
                             f'font-size="10" fill="{color}">{escape(label)}</text>')
            elif kind == "vline":
                _, value, label, color = el
                px = self.x.scale(value, x0, x1)
                parts.append(f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" '
                             f'y2="{_fmt(y1)}" stroke="{color}" stroke-width="1.2" '
                             f'stroke-dasharray="3 3"/>')
                parts.append(f'<text x="{_fmt(px + 4)}" y="{_fmt(y1 + 12)}" '
                             f'font-size="10" fill="{color}">{escape(label)}</text>')
            elif kind == "marker":
                _, vx, vy, label, color = el
                px, py = self._xy(vx, vy)
                parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" '
                             f'fill="none" stroke="{color}" stroke-width="2"/>')
                parts.append(f'<text x="{_fmt(px + 8)}" y="{_fmt(py - 6)}" '
                             f'font-size="10" fill="{color}">{escape(label)}</text>')
        # legend for labelled series
        for el in self.elements:
            if el[0] in ("points", "line") and el[3]:
                color = el[2]
                parts.append(f'<rect x="{_fmt(x1 - 150)}" y="{_fmt(legend_y - 8)}" '
                             f'width="10" height="10" fill="{color}"/>')
                parts.append(f'<text x="{_fmt(x1 - 136)}" y="{_fmt(legend_y + 1)}" '
                             f'font-size="10">{escape(el[3])}</text>')
                legend_y += 14
        parts.append("</g>")
        return "\n".join(parts)


def render(charts, title="") -> str:
    """Compose one or more charts side by side into a standalone SVG."""
    charts = list(charts)
    width = sum(c.width for c in charts)
    height = max(c.height for c in charts)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<desc>{escape(title)}</desc>' if title else "<desc/>",
        '<rect width="100%" height="100%" fill="#ffffff"/>',
    ]
    dx = 0.0
    for c in charts:
        parts.append(c.render_group(dx))
        dx += c.width
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

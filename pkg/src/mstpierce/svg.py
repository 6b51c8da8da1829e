"""Standalone SVG figures of an instance, its tree, enclosing circle, disks and ellipses."""
from __future__ import annotations

import math
from pathlib import Path

from .geom import dist, midpoint

SIZE = 480
MARGIN = 24


def _fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    """World-to-pixel map with y pointing up in world coordinates."""

    def __init__(self, xmin, ymin, xmax, ymax):
        span = max(xmax - xmin, ymax - ymin, 1e-12)
        self.k = (SIZE - 2 * MARGIN) / span
        self.x0 = xmin - ((span - (xmax - xmin)) / 2)
        self.y1 = ymax + ((span - (ymax - ymin)) / 2)

    def xy(self, p):
        return MARGIN + (p[0] - self.x0) * self.k, MARGIN + (self.y1 - p[1]) * self.k

    def len(self, r):
        return r * self.k


def _ellipse_axes(e):
    a, b, alpha = e
    w = dist(a, b)
    major = alpha * w / 2
    minor = math.sqrt(max(major * major - w * w / 4, 0.0))
    return midpoint(a, b), major, minor, math.atan2(b[1] - a[1], b[0] - a[0])


def render_svg(inst, tree=None, circle=None, disks=(), ellipses=(), path=None) -> str:
    """SVG text for the figure; also written to ``path`` when given.

    Points are black dots, tree edges red, the enclosing circle a bold
    outline with its center marked by a cross, diametral disks translucent
    blue fills and ellipses green outlines.
    """
    pts = list(inst.points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if circle is not None:
        (cx, cy), r = circle
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    for e in ellipses:
        c, major, _, _ = _ellipse_axes(e)
        xs += [c[0] - major, c[0] + major]
        ys += [c[1] - major, c[1] + major]
    cv = _Canvas(min(xs), min(ys), max(xs), max(ys))
    dot = max(2.0, SIZE / 160)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for d in disks:
        x, y = cv.xy(d.center)
        out.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(cv.len(d.radius))}" '
            'fill="#3366cc" fill-opacity="0.12" stroke="#3366cc" stroke-opacity="0.4" stroke-width="0.8"/>'
        )
    for e in ellipses:
        c, major, minor, tilt = _ellipse_axes(e)
        x, y = cv.xy(c)
        out.append(
            f'<ellipse cx="{_fmt(x)}" cy="{_fmt(y)}" rx="{_fmt(cv.len(major))}" ry="{_fmt(cv.len(minor))}" '
            f'transform="rotate({_fmt(-math.degrees(tilt))} {_fmt(x)} {_fmt(y)})" '
            'fill="none" stroke="#2a9d3a" stroke-width="1.2"/>'
        )
    if circle is not None:
        x, y = cv.xy(circle.center)
        out.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(cv.len(circle.radius))}" '
            'fill="none" stroke="black" stroke-width="2.5"/>'
        )
    if tree is not None:
        for e in tree.edges:
            (x1, y1), (x2, y2) = cv.xy(pts[e.i]), cv.xy(pts[e.j])
            out.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                'stroke="red" stroke-width="1.6"/>'
            )
    for p in pts:
        x, y = cv.xy(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(dot)}" fill="black"/>')
    if circle is not None:
        x, y = cv.xy(circle.center)
        s = 2 * dot
        out.append(
            f'<path d="M {_fmt(x - s)} {_fmt(y - s)} L {_fmt(x + s)} {_fmt(y + s)} '
            f'M {_fmt(x - s)} {_fmt(y + s)} L {_fmt(x + s)} {_fmt(y - s)}" stroke="black" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text

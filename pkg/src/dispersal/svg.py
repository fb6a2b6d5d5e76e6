"""Deterministic SVG pictures of instances before and after a dispersal."""

from __future__ import annotations

import math
from typing import Sequence

from .geometry import Arc, Ball, Box, Interval, WeightedInstance, apply_dispersal

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf")
GREY = "#9e9e9e"
WIDTH = 800
LANE = 14
MARGIN = 20


def _f(x) -> str:
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def _lanes(intervals):
    """Greedy lane per interval so overlapping ones never share a lane."""
    order = sorted(range(len(intervals)), key=lambda i: (intervals[i].left, i))
    ends, lane = [], [0] * len(intervals)
    for i in order:
        for k, end in enumerate(ends):
            if end <= intervals[i].left:
                lane[i], ends[k] = k, intervals[i].right
                break
        else:
            lane[i] = len(ends)
            ends.append(intervals[i].right)
    return lane, max(len(ends), 1)


def _intervals(layers):
    lo = min(o.left for objs, _ in layers for o in objs)
    hi = max(o.right for objs, _ in layers for o in objs)
    span = (hi - lo) or 1
    sx = (WIDTH - 2 * MARGIN) / float(span)
    parts, y = [], MARGIN
    for objs, name in layers:
        lane, count = _lanes(objs)
        parts.append(f'<g id="{name}">')
        for i, o in enumerate(objs):
            colour = GREY if name == "before" else PALETTE[i % len(PALETTE)]
            x = MARGIN + float(o.left - lo) * sx
            parts.append(
                f'<rect x="{_f(x)}" y="{_f(y + lane[i] * LANE)}" width="{_f(float(o.length) * sx)}" '
                f'height="{LANE - 2}" fill="{colour}" fill-opacity="0.8"><title>{i}</title></rect>'
            )
        parts.append("</g>")
        y += count * LANE + MARGIN
    return parts, y


def _arc_path(cx, cy, r0, r1, a0, a1):
    large = 1 if a1 - a0 > math.pi else 0
    p = [(cx + r * math.cos(a), cy - r * math.sin(a)) for r, a in ((r1, a0), (r1, a1), (r0, a1), (r0, a0))]
    return (
        f"M {_f(p[0][0])} {_f(p[0][1])} A {_f(r1)} {_f(r1)} 0 {large} 0 {_f(p[1][0])} {_f(p[1][1])} "
        f"L {_f(p[2][0])} {_f(p[2][1])} A {_f(r0)} {_f(r0)} 0 {large} 1 {_f(p[3][0])} {_f(p[3][1])} Z"
    )


def _arcs(layers):
    radius = 150
    size = 2 * (radius + 3 * MARGIN + LANE * max(len(objs) for objs, _ in layers))
    parts, x0 = [], 0
    for objs, name in layers:
        cx, cy = x0 + size / 2, size / 2
        parts.append(f'<g id="{name}">')
        parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{radius}" fill="none" stroke="#000" stroke-width="0.5"/>')
        # unroll each arc into a line segment to reuse the lane layout
        circ = objs[0].circumference if objs else 1
        lane, _ = _lanes([Interval(o.start + o.length / 2, o.length) for o in objs])
        for i, o in enumerate(objs):
            colour = GREY if name == "before" else PALETTE[i % len(PALETTE)]
            a0 = 2 * math.pi * float(o.start / circ)
            a1 = a0 + 2 * math.pi * float(o.length / circ)
            r0 = radius + 4 + lane[i] * LANE
            parts.append(
                f'<path d="{_arc_path(cx, cy, r0, r0 + LANE - 2, a0, a1)}" fill="{colour}" fill-opacity="0.8">'
                f"<title>{i}</title></path>"
            )
        parts.append("</g>")
        x0 += size
    return parts, size, x0


def _planar(layers):
    def bounds(o):
        h = o.half
        return o.centre[0] - h, o.centre[1] - h, o.centre[0] + h, o.centre[1] + h

    boxes = [bounds(o) for objs, _ in layers for o in objs]
    lo_x, lo_y = min(b[0] for b in boxes), min(b[1] for b in boxes)
    hi_x, hi_y = max(b[2] for b in boxes), max(b[3] for b in boxes)
    s = (WIDTH - 2 * MARGIN) / float(max(hi_x - lo_x, hi_y - lo_y) or 1)
    height = float(hi_y - lo_y) * s + 2 * MARGIN
    parts = []
    for objs, name in layers:
        parts.append(f'<g id="{name}">')
        for i, o in enumerate(objs):
            colour = GREY if name == "before" else PALETTE[i % len(PALETTE)]
            x = MARGIN + float(o.centre[0] - lo_x) * s
            y = MARGIN + float(hi_y - o.centre[1]) * s
            if isinstance(o, Box):
                w = float(o.side) * s
                parts.append(
                    f'<rect x="{_f(x - w / 2)}" y="{_f(y - w / 2)}" width="{_f(w)}" height="{_f(w)}" '
                    f'fill="{colour}" fill-opacity="0.5"/>'
                )
            else:
                parts.append(
                    f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(float(o.radius) * s)}" '
                    f'fill="{colour}" fill-opacity="0.5"/>'
                )
        parts.append("</g>")
    return parts, height


def render_svg(instance: WeightedInstance, dispersal: Sequence | None = None) -> str:
    """SVG text; a grey "before" layer, plus a coloured "after" layer when ``dispersal`` is given.

    Intervals are drawn as bars on stacked lanes (layers one above the
    other), arcs as annulus segments around a circle (layers side by side)
    and 2-D objects as squares and disks (layers overlaid).
    """
    layers = [(list(instance.objects), "before")]
    if dispersal is not None:
        layers.append((list(apply_dispersal(instance, dispersal).objects), "after"))
    first = instance.objects[0]
    if isinstance(first, Interval):
        parts, height = _intervals(layers)
        width = WIDTH
    elif isinstance(first, Arc):
        parts, height, width = _arcs(layers)
    elif isinstance(first, (Box, Ball)):
        parts, height = _planar(layers)
        width = WIDTH
    else:
        raise TypeError(f"cannot render {type(first).__name__}")
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">'
    )
    return "\n".join([head, f'<rect width="100%" height="100%" fill="#fff"/>', *parts, "</svg>"]) + "\n"

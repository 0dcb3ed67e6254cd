"""Deterministic SVG rendering of annular diagrams.

Points 1..p sit on the outer circle, clockwise from the top; points
p+1..p+q sit on the inner circle, counterclockwise from the top, so the
two boundary orientations run the same way around the annulus.  Each
cycle is drawn as a closed curve through its points, bent toward the
middle of the annulus; a partition block gluing two cycles is drawn as
a dotted connector between them.

The layout is fixed: equal angular spacing, fixed radii, and all
coordinates emitted with three decimals, so identical inputs produce
byte-identical files.  Aesthetics are not part of the contract;
determinism is.
"""

from __future__ import annotations

import math

from .annular import AnnulusShape, PartitionedPermutation
from .perm import Permutation, SetPartition, orbit_partition

__all__ = ["render_svg"]

_SIZE = 420.0
_CENTER = _SIZE / 2.0
_R_OUTER = 170.0
_R_INNER = 78.0
_R_BEND = (_R_OUTER + _R_INNER) / 2.0

_STYLE = {
    "circle": 'fill="none" stroke="#aaaaaa" stroke-width="1"',
    "cycle": 'fill="#dbe7f5" fill-opacity="0.55" stroke="#33557a" stroke-width="1.6"',
    "tunnel": 'stroke="#aa3355" stroke-width="1.4" stroke-dasharray="5 4"',
    "point": 'fill="#222222"',
    "label": 'font-family="sans-serif" font-size="11" fill="#222222"',
}


def _fmt(v: float) -> str:
    out = f"{v:.3f}"
    return "0.000" if out == "-0.000" else out


def _point_xy(i: int, shape: AnnulusShape) -> tuple[float, float]:
    """Position of point i (1-based) on its circle."""
    if i <= shape.p:
        theta = 2.0 * math.pi * (i - 1) / shape.p
        return (_CENTER + _R_OUTER * math.sin(theta), _CENTER - _R_OUTER * math.cos(theta))
    theta = 2.0 * math.pi * (i - shape.p - 1) / shape.q
    return (_CENTER - _R_INNER * math.sin(theta), _CENTER - _R_INNER * math.cos(theta))


def _bend(xy: tuple[float, float]) -> tuple[float, float]:
    """The control point for xy: the same direction, at the bend radius."""
    dx, dy = xy[0] - _CENTER, xy[1] - _CENTER
    r = math.hypot(dx, dy)
    if r == 0.0:
        return xy
    f = _R_BEND / r
    return (_CENTER + dx * f, _CENTER + dy * f)


def _label_xy(i: int, shape: AnnulusShape) -> tuple[float, float]:
    x, y = _point_xy(i, shape)
    dx, dy = x - _CENTER, y - _CENTER
    r = math.hypot(dx, dy)
    shift = 16.0 if i <= shape.p else -16.0
    f = (r + shift) / r
    return (_CENTER + dx * f, _CENTER + dy * f)


def _cycle_path(cycle: tuple[int, ...], shape: AnnulusShape) -> str:
    pts = [_point_xy(i, shape) for i in cycle]
    if len(pts) == 1:
        return ""
    parts = [f"M {_fmt(pts[0][0])} {_fmt(pts[0][1])}"]
    for k in range(len(pts)):
        a = pts[k]
        b = pts[(k + 1) % len(pts)]
        ca, cb = _bend(a), _bend(b)
        parts.append(
            f"C {_fmt(ca[0])} {_fmt(ca[1])} {_fmt(cb[0])} {_fmt(cb[1])} "
            f"{_fmt(b[0])} {_fmt(b[1])}"
        )
    parts.append("Z")
    return " ".join(parts)


def _centroid(cycle: tuple[int, ...], shape: AnnulusShape) -> tuple[float, float]:
    pts = [_point_xy(i, shape) for i in cycle]
    return (sum(x for x, _ in pts) / len(pts), sum(y for _, y in pts) / len(pts))


def render_svg(
    perm: Permutation,
    shape: AnnulusShape,
    partition: SetPartition | None = None,
) -> str:
    """Render a permutation of the (p, q)-annulus as an SVG document.

    With ``partition`` given, the pair must form a valid partitioned
    permutation; blocks holding two cycles get a dotted connector.
    """
    if perm.size != shape.total:
        raise ValueError(
            f"permutation of size {perm.size} does not fit the ({shape.p},{shape.q})-annulus"
        )
    vp = PartitionedPermutation(partition or orbit_partition(perm), perm)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(_SIZE)} {_fmt(_SIZE)}">',
        f"  <title>{perm.cycle_string()} on the ({shape.p},{shape.q})-annulus</title>",
        f'  <circle cx="{_fmt(_CENTER)}" cy="{_fmt(_CENTER)}" r="{_fmt(_R_OUTER)}" '
        f'{_STYLE["circle"]}/>',
        f'  <circle cx="{_fmt(_CENTER)}" cy="{_fmt(_CENTER)}" r="{_fmt(_R_INNER)}" '
        f'{_STYLE["circle"]}/>',
    ]
    for cycle in perm.cycles:
        path = _cycle_path(cycle, shape)
        if path:
            lines.append(f'  <path d="{path}" {_STYLE["cycle"]}/>')
    for group in vp.block_cycles():
        if len(group) != 2:
            continue
        (ax, ay), (bx, by) = (_centroid(c, shape) for c in group)
        lines.append(
            f'  <line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            f'{_STYLE["tunnel"]}/>'
        )
    for i in range(1, shape.total + 1):
        x, y = _point_xy(i, shape)
        lines.append(f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.0" {_STYLE["point"]}/>')
    for i in range(1, shape.total + 1):
        x, y = _label_xy(i, shape)
        lines.append(
            f'  <text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" '
            f'dominant-baseline="middle" {_STYLE["label"]}>{i}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

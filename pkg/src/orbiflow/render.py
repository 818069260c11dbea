"""Static SVG drawings of the curve-lift tilings in the Poincare disc.

The computational modules work in the half-plane; conversion to the disc
happens only here.  Output is deterministic: fixed float formatting, fixed
iteration order.
"""
from __future__ import annotations

import math

from . import hyp2, trigroup
from .config import DEFAULT_TOL, Tolerances
from .hyp2 import Geodesic, HPoint, IsometryKind

_FAMILY_STYLES = {
    "P": ("#1f77b4", "#c6dbef"),
    "Q": ("#2ca02c", "#c7e9c0"),
    "R": ("#d62728", "#fcbba1"),
}


def _fmt(x: float) -> str:
    v = f"{x:.6f}"
    return "0.000000" if v == "-0.000000" else v


def _disc_xy(p: HPoint) -> tuple[float, float]:
    wx, wy = hyp2.to_disc(p)
    return wx, -wy  # SVG y axis points down


def _boundary_xy(angle: float) -> tuple[float, float]:
    return math.cos(angle), -math.sin(angle)


def geodesic_path(geo: Geodesic) -> str:
    """SVG path of the disc-model arc of a complete geodesic."""
    a = hyp2.boundary_angle(geo.u)
    b = hyp2.boundary_angle(geo.v)
    ux, uy = _boundary_xy(a)
    vx, vy = _boundary_xy(b)
    dot = ux * vx + uy * vy
    if dot < -1.0 + 1e-9:  # diameter
        return f"M {_fmt(ux)} {_fmt(uy)} L {_fmt(vx)} {_fmt(vy)}"
    cx = (ux + vx) / (1.0 + dot)
    cy = (uy + vy) / (1.0 + dot)
    r = math.sqrt(max(cx * cx + cy * cy - 1.0, 0.0))
    cross = (ux - cx) * (vy - cy) - (uy - cy) * (vx - cx)
    sweep = 1 if cross > 0 else 0
    return (f"M {_fmt(ux)} {_fmt(uy)} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(vx)} {_fmt(vy)}")


def _klein_to_disc_xy(kx: float, ky: float) -> tuple[float, float]:
    n = kx * kx + ky * ky
    s = 1.0 / (1.0 + math.sqrt(max(1.0 - n, 0.0)))
    return s * kx, -s * ky


def cell_path(vertices: list[tuple[float, float]], samples: int = 12) -> str:
    """Closed path of a Klein-polygon cell, subsampled so sides curve
    correctly in the disc model."""
    pts: list[tuple[float, float]] = []
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        for s in range(samples):
            t = s / samples
            pts.append(_klein_to_disc_xy(x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
    head = f"M {_fmt(pts[0][0])} {_fmt(pts[0][1])} "
    body = " ".join(f"L {_fmt(x)} {_fmt(y)}" for x, y in pts[1:])
    return head + body + " Z"


def tiling_svg(case: int, depth: int, tol: Tolerances = DEFAULT_TOL,
               size: int = 640) -> str:
    """Disc-model drawing: curve lifts, cone-point tiles by family, the base
    and neighbor tiles highlighted, and the hyperbolic adjacency axes."""
    if case not in trigroup.CASES:
        raise ValueError(f"unknown case {case}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    group = trigroup.build_group(*trigroup.CASE_TRIPLES[case], tol)
    system = trigroup.curve_system(case, tol)
    lifts = trigroup.curve_lifts(case, depth, tol)
    adjacency = trigroup.adjacency_isometries(group, system,
                                              depth=max(2 * depth, 8))

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        'viewBox="-1.05 -1.05 2.1 2.1">')
    parts.append('<rect x="-1.05" y="-1.05" width="2.1" height="2.1" fill="white"/>')
    parts.append('<circle cx="0" cy="0" r="1" fill="none" stroke="#444444" '
                 'stroke-width="0.006"/>')

    # Tiles around every cone-point family not lying on the curve itself.
    for name in ("P", "Q", "R"):
        vertex = group.vertex(name)
        on_curve = any(
            hyp2.distance(vertex, trigroup.foot_of_perpendicular(lift, vertex)) < 1e-7
            for lift in lifts)
        if on_curve:
            continue
        stroke, fill = _FAMILY_STYLES[name]
        orbit = trigroup.cell_tiling(group, trigroup.CurveSystem(
            case, system.base_geodesics, system.base_segments, vertex,
            system.stabilizer_order, system.fiber_fraction), depth)
        for point, _ in orbit:
            dx, dy = hyp2.to_disc(point)
            if dx * dx + dy * dy > 0.55:
                continue
            try:
                verts, labels = trigroup.cell_polygon(point, lifts)
            except hyp2.GeometryError:
                continue
            if any(lab is None for lab in labels):
                continue
            parts.append(f'<path d="{cell_path(verts)}" fill="{fill}" '
                         f'fill-opacity="0.45" stroke="{stroke}" '
                         'stroke-width="0.003"/>')

    # Base and neighbor tiles of the distinguished family, highlighted.
    for point, color in ((adjacency.base_center, "#ffd92f"),
                         (adjacency.neighbor_center, "#fc8d62")):
        verts, labels = trigroup.cell_polygon(point, lifts)
        if not any(lab is None for lab in labels):
            parts.append(f'<path d="{cell_path(verts)}" fill="{color}" '
                         'fill-opacity="0.8" stroke="#555555" '
                         'stroke-width="0.004"/>')

    for lift in lifts:
        parts.append(f'<path d="{geodesic_path(lift)}" fill="none" '
                     'stroke="#333333" stroke-width="0.004"/>')

    for entry in adjacency.entries:
        if entry.classification.kind is IsometryKind.HYPERBOLIC:
            axis = hyp2.axis_of(entry.element.matrix, tol)
            parts.append(f'<path d="{geodesic_path(axis)}" fill="none" '
                         'stroke="#e41a1c" stroke-width="0.006" '
                         'stroke-dasharray="0.02 0.012"/>')

    for point, color in ((adjacency.base_center, "#b8860b"),
                         (adjacency.neighbor_center, "#a0522d")):
        x, y = _disc_xy(point)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="0.012" '
                     f'fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

"""Triangle rotation groups: word balls, curve-lift tilings, adjacency counts.

The groups are generated by counterclockwise rotations by 2*pi/p, 2*pi/q,
2*pi/r about the vertices of the canonical triangle (see ``hyp2``).  Word
balls are enumerated breadth-first with projective matrix dedup; the five
section curves are realized by explicit base geodesics whose group orbit
tiles the plane, and fixed-point bookkeeping reduces to counting the
isometries carrying the distinguished tile to a chosen adjacent tile.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import hyp2
from .config import DEFAULT_SEARCH, DEFAULT_TOL, Tolerances
from .hyp2 import (Geodesic, GeometryError, HPoint, Isometry, IsometryClass,
                   IsometryKind, apply, apply_geodesic, axis_of,
                   axis_parameter, classify, distance, foot_on_axis,
                   geodesic_intersection, geodesic_through, crossing_angle,
                   rotation_about, to_disc, to_klein)

CASES = (237, 245, 246, 334, 344)
CASE_TRIPLES = {237: (2, 3, 7), 245: (2, 4, 5), 246: (2, 4, 6),
                334: (3, 3, 4), 344: (3, 4, 4)}

ALPHABET = ("P", "p", "Q", "q", "R", "r")  # lowercase marks the inverse


class EnumerationError(RuntimeError):
    """Search-budget or tolerance failures during enumeration."""


class DedupAmbiguityError(EnumerationError):
    """Two candidate matrices fell into the dedup guard band."""


class TangencyError(RuntimeError):
    """An axis met a curve lift non-transversally."""


@dataclass(frozen=True)
class TriangleGroup:
    p: int
    q: int
    r: int
    P: HPoint
    Q: HPoint
    R: HPoint
    gP: Isometry
    gQ: Isometry
    gR: Isometry
    tol: Tolerances

    def generator(self, letter: str) -> Isometry:
        base = {"P": self.gP, "Q": self.gQ, "R": self.gR}
        if letter in base:
            return base[letter]
        return base[letter.upper()].inverse(self.tol)

    def vertex(self, name: str) -> HPoint:
        return {"P": self.P, "Q": self.Q, "R": self.R}[name]


@dataclass(frozen=True)
class GroupElement:
    word: tuple[str, ...]
    matrix: Isometry

    def __len__(self) -> int:
        return len(self.word)

    def word_str(self) -> str:
        return "".join(self.word) if self.word else "1"


def build_group(p: int, q: int, r: int, tol: Tolerances = DEFAULT_TOL) -> TriangleGroup:
    """Rotation triangle group on the canonical triangle, relations checked."""
    P, Q, R = hyp2.triangle_from_angles(p, q, r, tol)
    gP = rotation_about(P, 2.0 * math.pi / p, tol)
    gQ = rotation_about(Q, 2.0 * math.pi / q, tol)
    gR = rotation_about(R, 2.0 * math.pi / r, tol)
    group = TriangleGroup(p, q, r, P, Q, R, gP, gQ, gR, tol)
    for g, n in ((gP, p), (gQ, q), (gR, r)):
        acc = Isometry.identity()
        for _ in range(n):
            acc = acc.compose(g, tol)
        if not hyp2.is_identity(acc, tol):
            raise EnumerationError(f"generator order {n} violated for ({p},{q},{r})")
    if not hyp2.is_identity(gP.compose(gQ, tol).compose(gR, tol), tol):
        raise EnumerationError(f"product relation violated for ({p},{q},{r})")
    return group


def projective_dist(m1: Isometry, m2: Isometry) -> float:
    """Chebyshev distance between projective matrices (sign-agnostic)."""
    e1, e2 = m1.entries(), m2.entries()
    d_plus = max(abs(a - b) for a, b in zip(e1, e2))
    d_minus = max(abs(a + b) for a, b in zip(e1, e2))
    return min(d_plus, d_minus)


class _QuantIndex:
    """Approximate-duplicate index over float vectors via quantized buckets.

    ``insert`` returns the index of an existing item within ``radius`` or
    stores the vector and returns None.  With a guard factor, a nearest
    neighbor in (radius, guard*radius) raises DedupAmbiguityError, signalling
    that the dedup tolerance is too coarse for the requested depth.
    """

    _OFFSETS_CACHE: dict[int, list[tuple[int, ...]]] = {}

    def __init__(self, radius: float, dim: int, guard: float = 0.0,
                 dist=None):
        self.radius = radius
        self.guard = guard
        self.cell = max(radius * (guard if guard else 1.0), radius) * 1.000001
        self.buckets: dict[tuple[int, ...], list[int]] = {}
        self.vectors: list[tuple[float, ...]] = []
        self.dist = dist or (lambda a, b: max(abs(x - y) for x, y in zip(a, b)))
        if dim not in self._OFFSETS_CACHE:
            offs = [()]
            for _ in range(dim):
                offs = [o + (s,) for o in offs for s in (-1, 0, 1)]
            self._OFFSETS_CACHE[dim] = offs
        self.offsets = self._OFFSETS_CACHE[dim]

    def _key(self, vec) -> tuple[int, ...]:
        return tuple(int(math.floor(x / self.cell)) for x in vec)

    def _nearest(self, vec) -> tuple[Optional[int], float]:
        key = self._key(vec)
        best, best_d = None, math.inf
        exact = self.buckets.get(key)
        if exact:
            for idx in exact:
                d = self.dist(vec, self.vectors[idx])
                if d < best_d:
                    best, best_d = idx, d
            if best_d <= self.radius:
                return best, best_d
        for off in self.offsets:
            k = tuple(a + b for a, b in zip(key, off))
            if k == key:
                continue
            for idx in self.buckets.get(k, ()):
                d = self.dist(vec, self.vectors[idx])
                if d < best_d:
                    best, best_d = idx, d
        return best, best_d

    def insert(self, vec) -> Optional[int]:
        best, best_d = self._nearest(vec)
        if best is not None:
            if best_d <= self.radius:
                return best
            if self.guard and best_d < self.guard * self.radius:
                raise DedupAmbiguityError(
                    f"candidates at ambiguous distance {best_d:.3e} "
                    f"(dedup radius {self.radius:.1e})")
        idx = len(self.vectors)
        self.vectors.append(tuple(vec))
        self.buckets.setdefault(self._key(vec), []).append(idx)
        return None


def _matrix_vec(m: Isometry) -> tuple[float, float, float, float]:
    return m.entries()


def _matrix_index(tol: Tolerances) -> _QuantIndex:
    def pdist(a, b):
        d_plus = max(abs(x - y) for x, y in zip(a, b))
        d_minus = max(abs(x + y) for x, y in zip(a, b))
        return min(d_plus, d_minus)
    return _QuantIndex(tol.eps_dedup, dim=4, guard=10.0, dist=pdist)


def _point_vec(p: HPoint) -> tuple[float, float]:
    return to_disc(p)


def _geodesic_vec(g: Geodesic) -> tuple[float, float, float, float]:
    # Unordered ideal pair embedded via symmetric functions of e^{i angle}.
    a, b = hyp2.geodesic_angles(g)
    s = complex(math.cos(a) + math.cos(b), math.sin(a) + math.sin(b))
    pr = complex(math.cos(a + b), math.sin(a + b))
    return (s.real, s.imag, pr.real, pr.imag)


@functools.lru_cache(maxsize=64)
def enumerate_elements(group: TriangleGroup, max_len: int) -> tuple[GroupElement, ...]:
    """All distinct elements of word length <= max_len, shortlex order.

    Dedup is by projective matrix within eps_dedup, with a guard band that
    raises if two candidates are suspiciously close without coinciding.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    tol = group.tol
    gens = {letter: group.generator(letter) for letter in ALPHABET}
    index = _matrix_index(tol)
    identity = GroupElement((), Isometry.identity())
    index.insert(_matrix_vec(identity.matrix))
    elements = [identity]
    frontier = [identity]
    for _ in range(max_len):
        fresh: list[GroupElement] = []
        for el in frontier:
            for letter in ALPHABET:
                m = el.matrix.compose(gens[letter], tol)
                if index.insert(_matrix_vec(m)) is None:
                    fresh.append(GroupElement(el.word + (letter,), m))
        elements.extend(fresh)
        frontier = fresh
        if not fresh:
            break
    return tuple(elements)


# --- Section curves -------------------------------------------------------

@dataclass(frozen=True)
class CurveSystem:
    """Base data of one section curve: defining geodesics inside the triangle
    whose group orbit is the full lift set, plus the distinguished tile."""

    case: int
    base_geodesics: tuple[Geodesic, ...]
    base_segments: tuple[tuple[HPoint, HPoint], ...]
    cell_center: HPoint
    stabilizer_order: int
    # Fraction of the unit tangent fiber carried by the section over the
    # curve: 1/2 when only vectors on one side are taken, 1 otherwise.
    fiber_fraction: float


def foot_of_perpendicular(geo: Geodesic, p: HPoint) -> HPoint:
    return foot_on_axis(geo, axis_parameter(geo, p))


def point_on_segment(a: HPoint, b: HPoint, frac: float,
                     tol: Tolerances = DEFAULT_TOL) -> HPoint:
    geo = geodesic_through(a, b, tol)
    ta, tb = axis_parameter(geo, a), axis_parameter(geo, b)
    return foot_on_axis(geo, ta + frac * (tb - ta))


def _clip_to_triangle(geo: Geodesic, group: TriangleGroup) -> tuple[HPoint, HPoint]:
    """Chord of the geodesic inside the closed triangle PQR (Klein model)."""
    import itertools
    tol = group.tol
    corners = [to_klein(group.P), to_klein(group.Q), to_klein(group.R)]
    a = hyp2.klein_boundary_point(geo.u)
    b = hyp2.klein_boundary_point(geo.v)
    dx, dy = b[0] - a[0], b[1] - a[1]

    def side(pt):
        return dx * (pt[1] - a[1]) - dy * (pt[0] - a[0])

    ts = []
    for i, j in itertools.combinations(range(3), 2):
        p1, p2 = corners[i], corners[j]
        s1, s2 = side(p1), side(p2)
        if (s1 > 0) == (s2 > 0):
            continue
        u = s1 / (s1 - s2)
        x = (p1[0] + u * (p2[0] - p1[0]), p1[1] + u * (p2[1] - p1[1]))
        t = ((x[0] - a[0]) * dx + (x[1] - a[1]) * dy)
        ts.append((t, x))
    # Interior points of the triangle on the line (vertices count too).
    for c in corners:
        if abs(side(c)) < 1e-12:
            t = ((c[0] - a[0]) * dx + (c[1] - a[1]) * dy)
            ts.append((t, c))
    if len(ts) < 2:
        raise GeometryError("geodesic does not cross the base triangle")
    ts.sort(key=lambda it: it[0])
    lo, hi = ts[0][1], ts[-1][1]
    return (hyp2.klein_to_hpoint(*lo), hyp2.klein_to_hpoint(*hi))


@functools.lru_cache(maxsize=16)
def curve_system(case: int, tol: Tolerances = DEFAULT_TOL) -> CurveSystem:
    """The section curve of one of the five cases, on the canonical triangle.

    237: full geodesic through P perpendicular to QR (the doubled altitude).
    245: full geodesic through P and Q (the doubled edge b).
    246: full geodesic through P and R (the doubled edge c).
    334: figure-eight geodesic crossing itself at the midpoint J of PQ,
         realized as the axis of gP * gQ^-1 together with the second branch
         through J from the group orbit.
    344: same with Q, R and the midpoint K of QR, axis of gQ * gR^-1.
    """
    group = build_group(*CASE_TRIPLES[case], tol)
    P, Q, R = group.P, group.Q, group.R
    if case == 237:
        qr = geodesic_through(Q, R, tol)
        foot = foot_of_perpendicular(qr, P)
        geo = geodesic_through(P, foot, tol)
        return CurveSystem(case, (geo,), ((P, foot),), R, 7, 0.5)
    if case == 245:
        geo = geodesic_through(P, Q, tol)
        return CurveSystem(case, (geo,), ((P, Q),), R, 5, 1.0)
    if case == 246:
        geo = geodesic_through(P, R, tol)
        return CurveSystem(case, (geo,), ((P, R),), Q, 4, 1.0)
    if case in (334, 344):
        if case == 334:
            g8 = group.gP.compose(group.gQ.inverse(tol), tol)
            crossing_pt = point_on_segment(P, Q, 0.5, tol)
            center, order = R, 4
        else:
            g8 = group.gQ.compose(group.gR.inverse(tol), tol)
            crossing_pt = point_on_segment(Q, R, 0.5, tol)
            center, order = P, 3
        axis = axis_of(g8, tol)
        gap = distance(crossing_pt, foot_of_perpendicular(axis, crossing_pt))
        if gap > 1e-6:
            raise GeometryError(f"figure-eight axis misses its crossing point "
                                f"by {gap:.2e} in case {case}")
        second = _second_branch(group, axis, crossing_pt)
        segs = (_clip_to_triangle(axis, group), _clip_to_triangle(second, group))
        return CurveSystem(case, (axis, second), segs, center, order, 1.0)
    raise ValueError(f"unknown case {case}")


def _second_branch(group: TriangleGroup, axis: Geodesic, pt: HPoint) -> Geodesic:
    """Second lift of the figure-eight curve through its crossing point."""
    tol = group.tol
    for el in enumerate_elements(group, 4):
        img = apply_geodesic(el.matrix, axis)
        if hyp2.same_geodesic_angles(hyp2.geodesic_angles(img),
                                     hyp2.geodesic_angles(axis), 1e-9):
            continue
        if distance(pt, foot_of_perpendicular(img, pt)) < 1e-9:
            return img
    raise EnumerationError("no second branch found through the crossing point")


@functools.lru_cache(maxsize=32)
def curve_lifts(case: int, depth: int,
                tol: Tolerances = DEFAULT_TOL) -> tuple[Geodesic, ...]:
    """Deduped group orbit of the base geodesics within the word ball."""
    group = build_group(*CASE_TRIPLES[case], tol)
    system = curve_system(case, tol)
    index = _QuantIndex(1e-9, dim=4)
    lifts: list[Geodesic] = []
    for el in enumerate_elements(group, depth):
        for base in system.base_geodesics:
            img = apply_geodesic(el.matrix, base)
            if index.insert(_geodesic_vec(img)) is None:
                lifts.append(img)
    return tuple(lifts)


# --- Tiling cells ---------------------------------------------------------

def cell_tiling(group: TriangleGroup, system: CurveSystem,
                depth: int) -> list[tuple[HPoint, GroupElement]]:
    """Orbit of the distinguished cell center in the ball, with witnesses."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    index = _QuantIndex(1e-9, dim=2)
    out: list[tuple[HPoint, GroupElement]] = []
    for el in enumerate_elements(group, depth):
        img = apply(el.matrix, system.cell_center)
        if index.insert(_point_vec(img)) is None:
            out.append((img, el))
    return out


def cell_polygon(center: HPoint, lifts: Sequence[Geodesic],
                 max_chord_dist: float = 1.9):
    """Convex tile around `center` cut out by the lifts, in Klein coordinates.

    Returns (vertices, side_sources): vertices of the clipped polygon and,
    per side, the index into `lifts` of the wall carrying it (None marks a
    side of the initial bounding square, which signals insufficient depth).
    """
    kc = to_klein(center)
    big = 8.0
    verts = [(-big, -big), (big, -big), (big, big), (-big, big)]
    labels: list[Optional[int]] = [None, None, None, None]
    for idx, lift in enumerate(lifts):
        a = hyp2.klein_boundary_point(lift.u)
        b = hyp2.klein_boundary_point(lift.v)
        # Quick reject: chord far from the center (both in Klein metric scale).
        mx, my = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
        if math.hypot(mx - kc[0], my - kc[1]) > max_chord_dist:
            continue
        nx, ny = b[1] - a[1], a[0] - b[0]
        c = nx * a[0] + ny * a[1]
        sign = nx * kc[0] + ny * kc[1] - c
        if sign == 0.0:
            raise GeometryError("cell center lies on a wall")
        if sign < 0:
            nx, ny, c = -nx, -ny, -c
        new_v: list[tuple[float, float]] = []
        new_l: list[Optional[int]] = []
        n = len(verts)
        changed = False
        for i in range(n):
            cur, nxt = verts[i], verts[(i + 1) % n]
            lab = labels[i]
            f_cur = nx * cur[0] + ny * cur[1] - c
            f_nxt = nx * nxt[0] + ny * nxt[1] - c
            if f_cur >= 0:
                new_v.append(cur)
                new_l.append(lab)
            if (f_cur >= 0) != (f_nxt >= 0):
                t = f_cur / (f_cur - f_nxt)
                x = (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
                if f_cur >= 0:
                    new_v.append(x)
                    new_l.append(idx)   # leaving: the clip wall starts here
                else:
                    new_v.append(x)
                    new_l.append(lab)   # entering: original side continues
                changed = True
            if f_cur < 0:
                changed = True
        if changed:
            verts, labels = new_v, new_l
        if not verts:
            raise GeometryError("cell clipped to nothing")
    # Drop degenerate slivers.
    cleaned_v, cleaned_l = [], []
    n = len(verts)
    for i in range(n):
        j = (i + 1) % n
        if math.hypot(verts[j][0] - verts[i][0], verts[j][1] - verts[i][1]) > 1e-12:
            cleaned_v.append(verts[i])
            cleaned_l.append(labels[i])
    return cleaned_v, cleaned_l


def cell_wall_count(center: HPoint, lifts: Sequence[Geodesic]) -> int:
    """Number of distinct walls bounding the tile around `center`."""
    _, labels = cell_polygon(center, lifts)
    if any(lab is None for lab in labels):
        raise EnumerationError("tile not closed by the available lifts; "
                               "increase the enumeration depth")
    return len(set(labels))


# --- Adjacency ------------------------------------------------------------

@dataclass(frozen=True)
class AdjacencyEntry:
    element: GroupElement
    classification: IsometryClass
    on_boundary_curve: Optional[bool]  # hyperbolic elements only
    crossing: Optional[int]            # hyperbolic elements only


@dataclass(frozen=True)
class AdjacencyReport:
    case: int
    base_center: HPoint
    neighbor_center: HPoint
    entries: tuple[AdjacencyEntry, ...]
    elliptic: int
    hyperbolic: int
    parabolic: int

    @property
    def total(self) -> int:
        return len(self.entries)


def _segment_crossing_clusters(seg_from: HPoint, seg_to: HPoint,
                               lifts: Sequence[Geodesic],
                               tol: Tolerances) -> int:
    """Distinct points where the open segment crosses the lift union."""
    geo = geodesic_through(seg_from, seg_to, tol)
    t0 = axis_parameter(geo, seg_from)
    t1 = axis_parameter(geo, seg_to)
    lo, hi = min(t0, t1), max(t0, t1)
    params: list[float] = []
    for lift in lifts:
        z = geodesic_intersection(lift, geo, tol)
        if z is None:
            continue
        t = axis_parameter(geo, z)
        if lo + 1e-9 < t < hi - 1e-9:
            params.append(t)
    params.sort()
    clusters = 0
    last = None
    for t in params:
        if last is None or t - last > 1e-5:
            clusters += 1
        last = t
    return clusters


def canonical_neighbors(group: TriangleGroup, system: CurveSystem,
                        depth: int, count: int = 2) -> list[HPoint]:
    """Deterministic choices of adjacent same-type tile centers.

    A candidate orbit point is adjacent when the segment joining it to the
    base center meets the curve lifts in exactly one point (an edge interior
    for the vertical cases, the four-valent crossing vertex for the
    figure-eight cases).  Candidates are ranked by distance, then by disc
    coordinates.
    """
    tol = group.tol
    lifts = curve_lifts(system.case, min(depth, 6), tol)
    c0 = system.cell_center
    pts = cell_tiling(group, system, min(depth, 5))
    ranked = []
    for p, _ in pts:
        d = distance(p, c0)
        if d < tol.eps_pt:
            continue
        dx, dy = to_disc(p)
        ranked.append((round(d, 9), round(dx, 9), round(dy, 9), p))
    ranked.sort(key=lambda it: it[:3])
    chosen: list[HPoint] = []
    for _, _, _, p in ranked:
        if _segment_crossing_clusters(c0, p, lifts, tol) == 1:
            chosen.append(p)
            if len(chosen) >= count:
                break
    if not chosen:
        raise EnumerationError(f"no adjacent tile found within depth {depth} "
                               f"for case {system.case}")
    return chosen


def _axis_on_lift(axis: Geodesic, lifts: Sequence[Geodesic], eps: float) -> bool:
    pair = hyp2.geodesic_angles(axis)
    return any(hyp2.same_geodesic_angles(pair, hyp2.geodesic_angles(lift), eps)
               for lift in lifts)


def adjacency_isometries(group: TriangleGroup, system: CurveSystem,
                         depth: int = DEFAULT_SEARCH.adjacency_depth,
                         neighbor: Optional[HPoint] = None) -> AdjacencyReport:
    """All group elements carrying the base tile center to the neighbor tile
    center within the word-length budget, classified.

    The search is complete for words up to `depth` letters: it matches
    half-ball translates of the two centers, so any g = u * v with
    |u|, |v| <= ceil(depth/2) is found, and the result is checked to be a
    full coset of the base-center stabilizer.
    """
    tol = group.tol
    half = (depth + 1) // 2
    ball = enumerate_elements(group, half)
    c0 = system.cell_center
    if neighbor is None:
        neighbor = canonical_neighbors(group, system, depth, count=1)[0]
    c1 = neighbor

    fwd: dict[tuple[int, int], list[int]] = {}
    quant = 1e-7

    def key_of(p: HPoint) -> tuple[int, int]:
        dx, dy = to_disc(p)
        return (int(math.floor(dx / quant)), int(math.floor(dy / quant)))

    for i, el in enumerate(ball):
        fwd.setdefault(key_of(apply(el.matrix, c0)), []).append(i)

    pairs: list[tuple[int, int]] = []
    for j, el in enumerate(ball):
        target = apply(el.matrix.inverse(tol), c1)
        kx, ky = key_of(target)
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                for i in fwd.get((kx + ox, ky + oy), ()):
                    pairs.append((j, i))

    pairs.sort(key=lambda ji: (len(ball[ji[0]].word) + len(ball[ji[1]].word),
                               ball[ji[0]].word, ball[ji[1]].word))
    found: list[GroupElement] = []
    index = _matrix_index(tol)
    for j, i in pairs:
        m = ball[j].matrix.compose(ball[i].matrix, tol)
        if distance(apply(m, c0), c1) > 10.0 * tol.eps_pt:
            continue
        if index.insert(_matrix_vec(m)) is None:
            found.append(GroupElement(ball[j].word + ball[i].word, m))

    k = system.stabilizer_order
    if len(found) != k:
        raise EnumerationError(
            f"case {system.case}: expected a coset of {k} adjacency elements, "
            f"found {len(found)} at depth {depth}")

    lifts = curve_lifts(system.case, max(half, 6), tol)
    entries = []
    counts = {IsometryKind.ELLIPTIC: 0, IsometryKind.HYPERBOLIC: 0,
              IsometryKind.PARABOLIC: 0}
    for el in found:
        cls = classify(el.matrix, tol)
        if cls.kind is IsometryKind.IDENTITY:
            raise EnumerationError("identity cannot move a tile")
        counts[cls.kind] += 1
        on_curve = None
        crossings = None
        if cls.kind is IsometryKind.HYPERBOLIC:
            axis = axis_of(el.matrix, tol)
            on_curve = _axis_on_lift(axis, lifts, 1e-7)
            crossings = crossing_count(group, system, el, depth=max(half, 6))
        entries.append(AdjacencyEntry(el, cls, on_curve, crossings))
    return AdjacencyReport(system.case, c0, c1, tuple(entries),
                           counts[IsometryKind.ELLIPTIC],
                           counts[IsometryKind.HYPERBOLIC],
                           counts[IsometryKind.PARABOLIC])


def crossing_count(group: TriangleGroup, system: CurveSystem,
                   g: GroupElement,
                   depth: int = DEFAULT_SEARCH.tiling_depth) -> int:
    """Crossing points of the axis of g with the curve-lift union, per period.

    Counts distinct points (several lifts through one point count once) along
    a half-open fundamental period of the translation; lifts coinciding with
    the axis are skipped, and near-tangential meetings are rejected.
    """
    tol = group.tol
    cls = classify(g.matrix, tol, with_order=False)
    if cls.kind is not IsometryKind.HYPERBOLIC:
        raise GeometryError("crossing_count needs a hyperbolic element")
    axis = axis_of(g.matrix, tol)
    period = cls.translation_length
    axis_pair = hyp2.geodesic_angles(axis)
    reduced: list[float] = []
    for lift in curve_lifts(system.case, depth, tol):
        if hyp2.same_geodesic_angles(axis_pair, hyp2.geodesic_angles(lift), 1e-7):
            continue
        z = geodesic_intersection(lift, axis, tol)
        if z is None:
            continue
        ang = crossing_angle(lift, axis, z)
        if ang < 1e-6:
            raise TangencyError(f"axis meets a curve lift at angle {ang:.2e}")
        reduced.append(axis_parameter(axis, z) % period)
    if not reduced:
        raise EnumerationError("no curve crossings found; depth too small?")
    reduced.sort()
    clusters = []
    for t in reduced:
        if not clusters or t - clusters[-1][-1] > 1e-5:
            clusters.append([t])
        else:
            clusters[-1].append(t)
    # Wrap-around: first and last cluster may be one crossing split mod period.
    if len(clusters) > 1 and (clusters[0][0] + period - clusters[-1][-1]) <= 1e-5:
        clusters[0].extend(clusters.pop())
    return len(clusters)

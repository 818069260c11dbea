"""Upper half-plane geometry: points, geodesics, isometries, classification.

Model conventions
-----------------
Points live in the upper half-plane {x + iy : y > 0}.  Orientation-preserving
isometries are real 2x2 matrices of determinant 1 acting by Mobius
transformations z -> (az + b)/(cz + d); matrices are kept up to sign by
normalizing the first significant entry to be positive.  Ideal boundary
points are reals plus the dedicated marker ``INF`` (math.inf), never a large
finite stand-in.

Angle conventions: rotations are counterclockwise for positive angle, and
``rotation_about(p, theta)`` rotates tangent vectors at p by theta, so its
matrix is conjugate to [[cos(theta/2), sin(theta/2)], [-sin(theta/2),
cos(theta/2)]] with trace 2*cos(theta/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .config import DEFAULT_TOL, Tolerances

INF = math.inf


class GeometryError(ValueError):
    """Raised on degenerate or out-of-domain geometric input."""


@dataclass(frozen=True)
class HPoint:
    """Point x + iy of the upper half-plane (y > 0)."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise GeometryError(f"point ({self.x}, {self.y}) not in upper half-plane")

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def _normalize_entries(a: float, b: float, c: float, d: float, eps_sign: float):
    # Projective representative: first entry exceeding eps_sign is positive.
    for e in (a, b, c, d):
        if abs(e) > eps_sign:
            if e < 0:
                return (-a, -b, -c, -d)
            return (a, b, c, d)
    return (a, b, c, d)


@dataclass(frozen=True)
class Isometry:
    """Sign-normalized SL(2,R) matrix [[a, b], [c, d]], ad - bc = 1."""

    a: float
    b: float
    c: float
    d: float

    @staticmethod
    def from_entries(a: float, b: float, c: float, d: float,
                     tol: Tolerances = DEFAULT_TOL) -> "Isometry":
        det = a * d - b * c
        if det <= 0:
            raise GeometryError(f"matrix has nonpositive determinant {det}")
        if abs(det - 1.0) > tol.eps_det:
            s = 1.0 / math.sqrt(det)
            a, b, c, d = a * s, b * s, c * s, d * s
        return Isometry(*_normalize_entries(a, b, c, d, tol.eps_sign))

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(1.0, 0.0, 0.0, 1.0)

    def trace(self) -> float:
        return self.a + self.d

    def compose(self, other: "Isometry", tol: Tolerances = DEFAULT_TOL) -> "Isometry":
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return Isometry(*_normalize_entries(a, b, c, d, tol.eps_sign))

    def inverse(self, tol: Tolerances = DEFAULT_TOL) -> "Isometry":
        return Isometry(*_normalize_entries(self.d, -self.b, -self.c, self.a, tol.eps_sign))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def dist(self, other: "Isometry") -> float:
        """Max entry difference between the two projective representatives."""
        return max(abs(p - q) for p, q in zip(self.entries(), other.entries()))

    def boundary_image(self, t: float) -> float:
        """Action on the ideal boundary R u {INF}."""
        if t is INF or math.isinf(t):
            return INF if abs(self.c) < 1e-300 else self.a / self.c
        den = self.c * t + self.d
        if den == 0.0:
            return INF
        return (self.a * t + self.b) / den


class IsometryKind(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class IsometryClass:
    kind: IsometryKind
    rotation_order: Optional[int] = None      # elliptic only, None if undetected
    translation_length: Optional[float] = None  # hyperbolic only


@dataclass(frozen=True)
class Geodesic:
    """Oriented complete geodesic with ideal endpoints u -> v (real or INF)."""

    u: float
    v: float

    def __post_init__(self):
        if self.u == self.v:
            raise GeometryError("geodesic needs distinct ideal endpoints")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.v, self.u)

    def is_vertical(self) -> bool:
        return math.isinf(self.u) or math.isinf(self.v)


def apply(g: Isometry, p: HPoint) -> HPoint:
    z = p.as_complex()
    w = (g.a * z + g.b) / (g.c * z + g.d)
    return HPoint(w.real, w.imag)


def apply_geodesic(g: Isometry, geo: Geodesic) -> Geodesic:
    return Geodesic(g.boundary_image(geo.u), g.boundary_image(geo.v))


def distance(p: HPoint, q: HPoint) -> float:
    dx, dy = p.x - q.x, p.y - q.y
    arg = 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y)
    return math.acosh(max(arg, 1.0))


def _tangent_toward(p: HPoint, q: HPoint, eps: float):
    """Unit Euclidean direction at p of the geodesic ray from p to q."""
    if abs(q.x - p.x) <= eps * (1.0 + abs(p.x) + abs(q.x)):
        return (0.0, 1.0) if q.y > p.y else (0.0, -1.0)
    # Half-circle with real center c; tangent is the radius rotated by 90 deg.
    c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x))
    rx, ry = p.x - c, p.y
    tx, ty = -ry, rx
    if tx * (q.x - p.x) < 0:
        tx, ty = -tx, -ty
    n = math.hypot(tx, ty)
    return (tx / n, ty / n)


def angle_at(p: HPoint, q: HPoint, r: HPoint, tol: Tolerances = DEFAULT_TOL) -> float:
    """Interior angle at p of the triangle pqr, in (0, pi).

    The model is conformal, so the hyperbolic angle equals the Euclidean angle
    between initial tangent directions.  Collinear configurations (angle ~0 or
    ~pi) are rejected as degenerate.
    """
    t1 = _tangent_toward(p, q, tol.eps_pt)
    t2 = _tangent_toward(p, r, tol.eps_pt)
    dot = max(-1.0, min(1.0, t1[0] * t2[0] + t1[1] * t2[1]))
    ang = math.acos(dot)
    if ang < tol.eps_ang or ang > math.pi - tol.eps_ang:
        raise GeometryError("degenerate triangle: collinear vertices at angle "
                            f"{ang!r}")
    return ang


def _transport_from_i(p: HPoint) -> Isometry:
    # Maps i to p: [[sqrt(y), x/sqrt(y)], [0, 1/sqrt(y)]].
    s = math.sqrt(p.y)
    return Isometry(s, p.x / s, 0.0, 1.0 / s)


def rotation_about(p: HPoint, theta: float, tol: Tolerances = DEFAULT_TOL) -> Isometry:
    """Elliptic isometry fixing p, rotating tangent vectors by theta (ccw)."""
    h = theta / 2.0
    rot = Isometry(math.cos(h), math.sin(h), -math.sin(h), math.cos(h))
    t = _transport_from_i(p)
    return t.compose(rot, tol).compose(t.inverse(tol), tol)


def is_identity(g: Isometry, tol: Tolerances = DEFAULT_TOL, slack: float = 100.0) -> bool:
    """Projective identity test (matrix ~ +-Id)."""
    e = slack * tol.eps_pt
    return (abs(abs(g.a) - 1.0) < e and abs(abs(g.d) - 1.0) < e
            and abs(g.b) < e and abs(g.c) < e and g.a * g.d > 0)


def _rotation_order(g: Isometry, tol: Tolerances, max_order: int = 100) -> Optional[int]:
    acc = g
    for n in range(1, max_order + 1):
        if is_identity(acc, tol):
            return n
        acc = acc.compose(g, tol)
    return None


def classify(g: Isometry, tol: Tolerances = DEFAULT_TOL,
             with_order: bool = True) -> IsometryClass:
    if is_identity(g, tol):
        return IsometryClass(IsometryKind.IDENTITY)
    t = abs(g.trace())
    if t > 2.0 + tol.eps_cls:
        return IsometryClass(IsometryKind.HYPERBOLIC,
                             translation_length=2.0 * math.acosh(t / 2.0))
    if t < 2.0 - tol.eps_cls:
        order = _rotation_order(g, tol) if with_order else None
        return IsometryClass(IsometryKind.ELLIPTIC, rotation_order=order)
    return IsometryClass(IsometryKind.PARABOLIC)


def axis_of(g: Isometry, tol: Tolerances = DEFAULT_TOL) -> Geodesic:
    """Oriented axis of a hyperbolic isometry, repelling -> attracting."""
    cls = classify(g, tol, with_order=False)
    if cls.kind is not IsometryKind.HYPERBOLIC:
        raise GeometryError(f"axis requested for {cls.kind.value} isometry")
    if abs(g.c) < tol.eps_sign:
        # Fixed points: INF and b/(d - a).
        other = g.b / (g.d - g.a)
        # At INF the derivative is (a/d) = a^2; attracting iff |a| > 1.
        if abs(g.a) > 1.0:
            return Geodesic(other, INF)
        return Geodesic(INF, other)
    disc = math.sqrt((g.a - g.d) ** 2 + 4.0 * g.b * g.c)
    z1 = ((g.a - g.d) - disc) / (2.0 * g.c)
    z2 = ((g.a - g.d) + disc) / (2.0 * g.c)
    # Attracting fixed point has |g'(z)| = 1/(cz + d)^2 < 1.
    if abs(g.c * z1 + g.d) > 1.0:
        return Geodesic(z1, z2)
    return Geodesic(z2, z1)


def side_length_from_angles(alpha: float, beta: float, gamma: float) -> float:
    """Length of the side joining the alpha- and beta-vertices.

    Dual hyperbolic law of cosines: cosh c = (cos gamma + cos alpha cos beta)
    / (sin alpha sin beta), gamma being the opposite angle.
    """
    num = math.cos(gamma) + math.cos(alpha) * math.cos(beta)
    den = math.sin(alpha) * math.sin(beta)
    return math.acosh(num / den)


def _point_at(direction_angle: float, dist: float, tol: Tolerances) -> HPoint:
    # From i, travel `dist` in the tangent direction making angle
    # `direction_angle` with +x (so +y is pi/2).
    up = HPoint(0.0, math.exp(dist))
    rot = rotation_about(HPoint(0.0, 1.0), direction_angle - math.pi / 2.0, tol)
    return apply(rot, up)


def triangle_from_angles(p: int, q: int, r: int,
                         tol: Tolerances = DEFAULT_TOL) -> tuple[HPoint, HPoint, HPoint]:
    """Canonical triangle with angles pi/p, pi/q, pi/r.

    Pose: P = i, Q east of P along the unit half-circle, R at angle +pi/p
    counterclockwise from the PQ direction, so (P, Q, R) is positively
    oriented.  Rejects non-hyperbolic parameter triples.
    """
    if 1.0 / p + 1.0 / q + 1.0 / r >= 1.0 - 1e-12:
        raise GeometryError(f"({p},{q},{r}) is not a hyperbolic triple")
    ap, aq, ar = math.pi / p, math.pi / q, math.pi / r
    d_pq = side_length_from_angles(ap, aq, ar)
    d_pr = side_length_from_angles(ap, ar, aq)
    P = HPoint(0.0, 1.0)
    Q = _point_at(0.0, d_pq, tol)
    R = _point_at(ap, d_pr, tol)
    return P, Q, R


# --- Disc-model coordinates (used for dedup keys, cells, and rendering) ---

def to_disc(p: HPoint) -> tuple[float, float]:
    """Cayley map z -> (z - i)/(z + i) onto the Poincare disc."""
    z = p.as_complex()
    w = (z - 1j) / (z + 1j)
    return (w.real, w.imag)


def boundary_angle(t: float) -> float:
    """Disc boundary angle of the ideal point t (INF maps to angle 0)."""
    if math.isinf(t):
        return 0.0
    w = (complex(t, 0.0) - 1j) / (complex(t, 0.0) + 1j)
    return math.atan2(w.imag, w.real) % (2.0 * math.pi)


def to_klein(p: HPoint) -> tuple[float, float]:
    wx, wy = to_disc(p)
    s = 2.0 / (1.0 + wx * wx + wy * wy)
    return (s * wx, s * wy)


def klein_boundary_point(t: float) -> tuple[float, float]:
    a = boundary_angle(t)
    return (math.cos(a), math.sin(a))


def klein_to_hpoint(kx: float, ky: float) -> HPoint:
    n = kx * kx + ky * ky
    if n >= 1.0:
        raise GeometryError("Klein point outside the disc")
    s = 1.0 / (1.0 + math.sqrt(1.0 - n))
    wx, wy = s * kx, s * ky
    w = complex(wx, wy)
    z = 1j * (1 + w) / (1 - w)
    return HPoint(z.real, z.imag)


def geodesic_through(p: HPoint, q: HPoint, tol: Tolerances = DEFAULT_TOL) -> Geodesic:
    """Oriented geodesic through p then q."""
    if distance(p, q) < tol.eps_pt:
        raise GeometryError("geodesic through coincident points")
    if abs(q.x - p.x) <= tol.eps_pt * (1.0 + abs(p.x) + abs(q.x)):
        return Geodesic(p.x, INF) if q.y > p.y else Geodesic(INF, p.x)
    c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x))
    rad = math.hypot(p.x - c, p.y)
    # Traveling p -> q decreases the polar angle about c iff q is clockwise.
    tp = math.atan2(p.y, p.x - c)
    tq = math.atan2(q.y, q.x - c)
    if tq < tp:
        return Geodesic(c - rad, c + rad)
    return Geodesic(c + rad, c - rad)


def _angle_close(a: float, b: float, eps: float) -> bool:
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d) < eps


def same_geodesic_angles(pair1: tuple[float, float], pair2: tuple[float, float],
                         eps: float) -> bool:
    """Unordered coincidence of two geodesics given by boundary angles."""
    a1, b1 = pair1
    a2, b2 = pair2
    return ((_angle_close(a1, a2, eps) and _angle_close(b1, b2, eps))
            or (_angle_close(a1, b2, eps) and _angle_close(b1, a2, eps)))


def geodesic_angles(g: Geodesic) -> tuple[float, float]:
    return (boundary_angle(g.u), boundary_angle(g.v))


def geodesic_intersection(g1: Geodesic, g2: Geodesic,
                          tol: Tolerances = DEFAULT_TOL) -> Optional[HPoint]:
    """Transverse intersection point of two geodesics, or None if disjoint.

    Decided by endpoint interleaving on the boundary circle; the point itself
    is computed from the half-plane circle equations.
    """
    a1, b1 = boundary_angle(g1.u), boundary_angle(g1.v)
    a2, b2 = boundary_angle(g2.u), boundary_angle(g2.v)
    if same_geodesic_angles((a1, b1), (a2, b2), tol.eps_geo):
        return None

    def between(x, lo, hi):
        return (x - lo) % (2.0 * math.pi) < (hi - lo) % (2.0 * math.pi)

    if between(a2, a1, b1) == between(b2, a1, b1):
        return None

    def circle_data(g: Geodesic):
        if g.is_vertical():
            x = g.u if not math.isinf(g.u) else g.v
            return ("v", x, 0.0)
        c = (g.u + g.v) / 2.0
        return ("c", c, abs(g.v - g.u) / 2.0)

    k1, c1, r1 = circle_data(g1)
    k2, c2, r2 = circle_data(g2)
    if k1 == "v" and k2 == "v":
        return None  # parallel verticals cannot interleave anyway
    if k1 == "v":
        k1, c1, r1, k2, c2, r2 = k2, c2, r2, k1, c1, r1
    if k2 == "v":
        x = c2
        yy = r1 * r1 - (x - c1) ** 2
        if yy <= 0:
            return None
        return HPoint(x, math.sqrt(yy))
    if abs(c2 - c1) < tol.eps_pt:
        return None  # concentric: tangent at infinity or disjoint
    x = (c2 * c2 - c1 * c1 + r1 * r1 - r2 * r2) / (2.0 * (c2 - c1))
    yy = r1 * r1 - (x - c1) ** 2
    if yy <= 0:
        return None
    return HPoint(x, math.sqrt(yy))


def geodesic_direction_at(g: Geodesic, p: HPoint) -> tuple[float, float]:
    """Unit Euclidean tangent of the oriented geodesic g at a point p on it."""
    if g.is_vertical():
        return (0.0, 1.0) if math.isinf(g.v) else (0.0, -1.0)
    c = (g.u + g.v) / 2.0
    tx, ty = -p.y, p.x - c
    if tx * (g.v - g.u) < 0:
        tx, ty = -tx, -ty
    n = math.hypot(tx, ty)
    return (tx / n, ty / n)


def crossing_angle(g1: Geodesic, g2: Geodesic, p: HPoint) -> float:
    """Unoriented angle in [0, pi/2] between two geodesics crossing at p."""
    t1 = geodesic_direction_at(g1, p)
    t2 = geodesic_direction_at(g2, p)
    dot = abs(t1[0] * t2[0] + t1[1] * t2[1])
    return math.acos(max(-1.0, min(1.0, dot)))


def axis_parameter(g: Geodesic, p: HPoint) -> float:
    """Signed arclength coordinate of p along g (increasing toward g.v).

    The zero point is fixed by the endpoint normalization (t = log|w| where
    w = (z - u)/(z - v) maps the axis to the imaginary half-line), giving a
    deterministic base point per oriented geodesic.
    """
    z = p.as_complex()
    if math.isinf(g.v):
        w = z - g.u
        return math.log(abs(w))
    if math.isinf(g.u):
        w = 1.0 / (z - g.v)
        return math.log(abs(w))
    w = (z - g.u) / (z - g.v)
    return math.log(abs(w))


def foot_on_axis(g: Geodesic, t: float) -> HPoint:
    """Point of g at axis parameter t (inverse of axis_parameter)."""
    if math.isinf(g.v):
        return HPoint(g.u, math.exp(t))
    if math.isinf(g.u):
        return HPoint(g.v, math.exp(-t))
    # z -> (z - u)/(z - v) sends the axis to the ray s*i*e^t, where the side
    # s = sign(u - v) records whether the map preserves the half-plane.
    s = 1.0 if g.u > g.v else -1.0
    w = complex(0.0, s * math.exp(t))
    z = (g.u - g.v * w) / (1.0 - w)
    return HPoint(z.real, z.imag)

"""Dehn-surgery slope calculus and first-homology cross-checks.

Two independent computations feed the main comparison:

* ``surgered_h1``: homology of the filling of the suspension-flow complement
  of a periodic orbit, from an explicit fibered presentation.  The fiber is
  the punctured torus; monodromy images of the homology basis are computed
  exactly (rational arithmetic) as winding numbers against cut arcs joining
  the punctures, and the longitude is the stable-direction push-off of the
  orbit, assembled from flow-box chains.
* ``seifert_h1``: abelianization of the standard presentation of the unit
  tangent bundle of a triangle orbifold with exceptional fibers
  (p,1), (q,1), (r,1).

Both reduce by Smith normal form; agreement on the five theorem rows is the
acceptance gate for the presentation conventions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import intlinalg
from .torusmap import CAT, CatOrbit, RationalPoint, TorusMatrix, act, orbit_of

Vec = tuple[Fraction, Fraction]


class DegenerateChoiceError(RuntimeError):
    """A generic-position parameter hit a degeneracy; retry with the next."""


@dataclass(frozen=True)
class SlopeCoefficient:
    """Surgery coefficient b/a: the new meridian is homologous to a*l + b*m."""

    b: int
    a: int

    def __post_init__(self):
        if self.a < 0 or (self.a == 0 and abs(self.b) != 1):
            raise ValueError("denominator convention: a > 0, or a = 0 with b = +-1")
        if math.gcd(abs(self.a), abs(self.b)) != 1:
            raise ValueError(f"slope {self.b}/{self.a} not in lowest terms")

    def __str__(self) -> str:
        return f"{self.b}/{self.a}"


@dataclass(frozen=True)
class SeifertData:
    base: tuple[int, int, int]
    fibers: tuple[tuple[int, int], ...]
    b0: int
    euler_number: Fraction


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant factors d1 | d2 | ...; factors >= 2 first, 0 per free rank."""

    invariant_factors: tuple[int, ...]

    @staticmethod
    def from_relation_rows(rows: Sequence[Sequence[int]], n_generators: int) -> "AbelianGroup":
        if not rows:
            return AbelianGroup((0,) * n_generators)
        D, _, _ = intlinalg.smith_normal_form([list(r) for r in rows])
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        torsion = tuple(d for d in diag if d not in (0, 1))
        free = n_generators - sum(1 for d in diag if d != 0)
        return AbelianGroup(torsion + (0,) * free)

    def order(self) -> Optional[int]:
        if 0 in self.invariant_factors:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        parts = ["Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts)


@dataclass(frozen=True)
class SurgerySpec:
    orbit: CatOrbit
    slope: SlopeCoefficient
    matrix: TorusMatrix = CAT


@dataclass(frozen=True)
class SNFCertificate:
    factors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    diagonal: tuple[tuple[int, ...], ...]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFCertificate:
    """Invariant factors with the unimodular transformation certificate."""
    D, U, V = intlinalg.smith_normal_form([list(r) for r in M])
    factors = tuple(D[i][i] for i in range(min(len(D), len(D[0]))))
    return SNFCertificate(factors,
                          tuple(tuple(r) for r in U),
                          tuple(tuple(r) for r in V),
                          tuple(tuple(r) for r in D))


def mapping_torus_h1(A: TorusMatrix) -> AbelianGroup:
    """Z (suspension class) plus the cokernel of A - I on the fiber torus."""
    rows = [[A.a - 1, A.b, 0], [A.c, A.d - 1, 0]]
    return AbelianGroup.from_relation_rows(rows, 3)


# --- Exact winding machinery on the punctured torus -------------------------

def _orient(a: Vec, b: Vec, c: Vec) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segment_cross_sign(p: Vec, q: Vec, r: Vec, s: Vec) -> int:
    """+-1 for a proper crossing of segment pq over the oriented arc rs
    (+1 when pq crosses from the right of rs to its left), 0 if disjoint.
    Touching or collinear configurations raise."""
    d1 = _orient(r, s, p)
    d2 = _orient(r, s, q)
    d3 = _orient(p, q, r)
    d4 = _orient(p, q, s)
    if (d1 < 0 < d2 or d2 < 0 < d1) and (d3 < 0 < d4 or d4 < 0 < d3):
        return 1 if d1 < 0 else -1
    if d1 == 0 and d2 == 0:
        # Collinear: overlapping segments are degenerate, disjoint ones fine.
        lo1, hi1 = sorted((p, q))
        lo2, hi2 = sorted((r, s))
        if max(lo1, lo2) <= min(hi1, hi2):
            raise DegenerateChoiceError("collinear overlap")
        return 0
    if (d1 == 0 and min(r[0], s[0]) <= p[0] <= max(r[0], s[0])
            and min(r[1], s[1]) <= p[1] <= max(r[1], s[1])):
        raise DegenerateChoiceError("segment endpoint on arc")
    if (d2 == 0 and min(r[0], s[0]) <= q[0] <= max(r[0], s[0])
            and min(r[1], s[1]) <= q[1] <= max(r[1], s[1])):
        raise DegenerateChoiceError("segment endpoint on arc")
    if (d3 == 0 and min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])):
        raise DegenerateChoiceError("arc endpoint on segment")
    if (d4 == 0 and min(p[0], q[0]) <= s[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= s[1] <= max(p[1], q[1])):
        raise DegenerateChoiceError("arc endpoint on segment")
    return 0


def _torus_cross(cycle: Sequence[Vec], arc: tuple[Vec, Vec]) -> int:
    """Signed crossings of a closed polyline (mod Z^2) with all integer
    translates of the arc."""
    (rx, ry), (sx, sy) = arc
    total = 0
    for i in range(len(cycle) - 1):
        p, q = cycle[i], cycle[i + 1]
        if p == q:
            continue
        x_lo = min(p[0], q[0]) - max(rx, sx)
        x_hi = max(p[0], q[0]) - min(rx, sx)
        y_lo = min(p[1], q[1]) - max(ry, sy)
        y_hi = max(p[1], q[1]) - min(ry, sy)
        for vx in range(math.floor(x_lo), math.floor(x_hi) + 2):
            for vy in range(math.floor(y_lo), math.floor(y_hi) + 2):
                r = (rx + vx, ry + vy)
                s = (sx + vx, sy + vy)
                total += _segment_cross_sign(p, q, r, s)
    return total


def _frac_vec(x, y) -> Vec:
    return (Fraction(x), Fraction(y))


def _mat_vec(A: TorusMatrix, v: Vec) -> Vec:
    return (A.a * v[0] + A.b * v[1], A.c * v[0] + A.d * v[1])


class PuncturedTorusBasis:
    """Homology bookkeeping for the torus punctured at a rational orbit.

    Basis: x (horizontal loop), y (vertical loop), mu_i (small loops around
    the punctures, with sum(mu_i) = 0).  Classes of explicit polyline cycles
    are read off from crossings with cut arcs joining consecutive punctures.
    """

    def __init__(self, punctures: Sequence[Vec], salt: int = 0):
        self.punctures = list(punctures)
        c = len(punctures)
        offs = Fraction(2 * salt + 1, 64 + 17 * salt)
        self.x_height = Fraction(3, 7) + offs / 3
        self.y_offset = Fraction(2, 7) + offs / 5
        self.x_rep = [(Fraction(0) + offs, self.x_height),
                      (Fraction(1) + offs, self.x_height)]
        self.y_rep = [(self.y_offset, Fraction(0) + offs),
                      (self.y_offset, Fraction(1) + offs)]
        self.arcs: list[tuple[Vec, Vec]] = []
        for i in range(c):
            a = punctures[i]
            b = punctures[(i + 1) % c] if c > 1 else (punctures[0][0] + 1,
                                                      punctures[0][1])
            self.arcs.append((a, b))
        rho = Fraction(1, 257 + salt)
        self._loops = [self._square_loop(p, rho, salt) for p in punctures]
        # Pairing of the basis cycles against the cut arcs.
        self.x_cross = [_torus_cross(self.x_rep, arc) for arc in self.arcs]
        self.y_cross = [_torus_cross(self.y_rep, arc) for arc in self.arcs]
        self.mu_cross = [[_torus_cross(loop, arc) for arc in self.arcs]
                         for loop in self._loops]

    @staticmethod
    def _square_loop(p: Vec, rho: Fraction, salt: int = 0) -> list[Vec]:
        # Asymmetric quadrilateral; vertex slopes vary with the salt so no
        # vertex direction aligns with a cut-arc direction.
        x, y = p
        s = 7 + salt
        return [(x + rho, y + rho / s), (x - rho / (s + 4), y + rho),
                (x - rho, y - rho / (s + 2)), (x + rho / (s + 6), y - rho),
                (x + rho, y + rho / s)]

    def cycle_class(self, cycle: Sequence[Vec]) -> list[Fraction]:
        """Coefficients (m, n, k_0 .. k_{c-1}) with k_{c-1} normalized to 0."""
        c = len(self.punctures)
        m = cycle[-1][0] - cycle[0][0]
        n = cycle[-1][1] - cycle[0][1]
        if m.denominator != 1 or n.denominator != 1:
            raise ValueError("polyline does not close on the torus")
        crossings = [_torus_cross(cycle, arc) for arc in self.arcs]
        # Solve sum_j k_j mu_cross[j][i] = crossings[i] - m*x - n*y, k_{c-1}=0.
        rhs = [Fraction(crossings[i] - m * self.x_cross[i] - n * self.y_cross[i])
               for i in range(c)]
        ks = self._solve_mu(rhs)
        return [Fraction(m), Fraction(n)] + ks

    def _solve_mu(self, rhs: list[Fraction]) -> list[Fraction]:
        c = len(self.punctures)
        if c == 1:
            # mu_0 is trivial in homology (sum relation); coefficient free.
            return [Fraction(0)]
        # Unknowns k_0 .. k_{c-2}; k_{c-1} = 0.
        rows = [[Fraction(self.mu_cross[j][i]) for j in range(c - 1)] + [rhs[i]]
                for i in range(c)]
        sol = _solve_rational(rows, c - 1)
        return sol + [Fraction(0)]


def _solve_rational(aug: list[list[Fraction]], n_unknowns: int) -> list[Fraction]:
    """Solve a consistent overdetermined rational system by elimination."""
    rows = [row[:] for row in aug]
    pivots = []
    r = 0
    for col in range(n_unknowns):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    sol = [Fraction(0)] * n_unknowns
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    for row in rows[r:]:
        if row[-1] != 0:
            raise ValueError("inconsistent winding system")
    if len(pivots) < n_unknowns:
        raise ValueError("underdetermined winding system")
    return sol


def _stable_direction(A: TorusMatrix) -> Vec:
    """Rational approximation of the contracting eigendirection of A."""
    t = A.trace()
    lam = (t - math.sqrt(t * t - 4)) / 2.0
    if A.b != 0:
        v = (float(A.b), lam - A.a)
    else:
        v = (lam - A.d, float(A.c))
    norm = math.hypot(*v)
    vx = Fraction(v[0] / norm).limit_denominator(10 ** 6)
    vy = Fraction(v[1] / norm).limit_denominator(10 ** 6)
    # The push-off framing needs the direction to be nearly A-equivariant.
    ax, ay = float(A.a * vx + A.b * vy), float(A.c * vx + A.d * vy)
    cosang = (ax * float(vx) + ay * float(vy)) / math.hypot(ax, ay)
    if cosang < 0.999:
        raise DegenerateChoiceError("stable direction approximation too coarse")
    return (vx, vy)


def _nearest_translate(target: Vec, base: Vec) -> Vec:
    """Translate of `base` by integers, nearest to `target` (rounded)."""
    def nearest_int(f: Fraction) -> int:
        return int(math.floor(f + Fraction(1, 2)))
    vx = nearest_int(target[0] - base[0])
    vy = nearest_int(target[1] - base[1])
    return (base[0] + vx, base[1] + vy)


def _surgery_rows(spec: SurgerySpec, basis: PuncturedTorusBasis) -> tuple[list[list[int]], int]:
    """Relation rows over generators (x, y, mu_0..mu_{c-1}, t)."""
    A = spec.matrix
    orbit_pts = [p.as_fractions() for p in spec.orbit.points]
    c = len(orbit_pts)
    n_gen = 3 + c

    def as_int_row(coeffs: Sequence[Fraction]) -> list[int]:
        out = []
        for f in coeffs:
            if f.denominator != 1:
                raise ValueError(f"non-integer relation coefficient {f}")
            out.append(int(f))
        return out

    rows: list[list[int]] = []
    rows.append([0, 0] + [1] * c + [0])  # sum of puncture loops bounds

    # Monodromy relations: image minus source, for x and y.
    for rep, idx in ((basis.x_rep, 0), (basis.y_rep, 1)):
        img = [_mat_vec(A, v) for v in rep]
        cls = basis.cycle_class(img)
        row = as_int_row(cls) + [0]
        row[idx] -= 1
        rows.append(row)
    # For the puncture loops the image is the loop at the image puncture.
    perm = []
    for i, p in enumerate(orbit_pts):
        img = _mat_vec(A, p)
        img = (img[0] % 1, img[1] % 1)
        perm.append(orbit_pts.index(img))
    for i in range(c):
        row = [0, 0] + [0] * c + [0]
        row[2 + perm[i]] += 1
        row[2 + i] -= 1
        rows.append(row)

    # Longitude: push off along the stable direction and follow the flow.
    u = _stable_direction(A)
    eps = Fraction(1, 1024)
    base_r0 = (Fraction(5, 13), Fraction(4, 11))
    q = [(p[0] + eps * u[0], p[1] + eps * u[1]) for p in orbit_pts]
    r0 = base_r0
    Ar0 = _mat_vec(A, r0)
    fiber_total = [Fraction(0)] * (2 + c)
    for i in range(c):
        Aqi = _mat_vec(A, q[i])
        q_next = _nearest_translate(Aqi, q[(i + 1) % c])
        pi_next_end = (r0[0] + (q_next[0] - q[(i + 1) % c][0]),
                       r0[1] + (q_next[1] - q[(i + 1) % c][1]))
        ret_end = (Ar0[0] + (pi_next_end[0] - r0[0]),
                   Ar0[1] + (pi_next_end[1] - r0[1]))
        poly = [Ar0, Aqi, q_next, pi_next_end, ret_end]
        cls = basis.cycle_class(poly)
        fiber_total = [a + b for a, b in zip(fiber_total, cls)]
    a_coef, b_coef = spec.slope.a, spec.slope.b
    fill = [a_coef * f for f in fiber_total]
    fill[2 + 0] += b_coef  # meridian = loop around the base puncture
    fill_row = as_int_row(fill) + [a_coef * c]
    rows.append(fill_row)
    return rows, n_gen


def surgered_h1(spec: SurgerySpec) -> AbelianGroup:
    """First homology of the b/a filling of the orbit complement."""
    A = spec.matrix
    pts = spec.orbit.points
    for i, p in enumerate(pts):
        if act(A, p) != pts[(i + 1) % len(pts)]:
            raise ValueError("orbit is not a forward cycle of the matrix")
    last_err: Optional[Exception] = None
    for salt in range(6):
        try:
            basis = PuncturedTorusBasis([p.as_fractions() for p in pts], salt)
            rows, n_gen = _surgery_rows(spec, basis)
            return AbelianGroup.from_relation_rows(rows, n_gen)
        except DegenerateChoiceError as err:
            last_err = err
    raise RuntimeError(f"no generic parameter choice worked: {last_err}")


# --- Seifert side -----------------------------------------------------------

def seifert_data(p: int, q: int, r: int, mirrored: bool = False) -> SeifertData:
    b0 = -1 if not mirrored else -2
    fibers = ((p, 1), (q, 1), (r, 1)) if not mirrored else \
        ((p, p - 1), (q, q - 1), (r, r - 1))
    e = -(Fraction(b0) + sum(Fraction(b, a) for a, b in fibers))
    return SeifertData((p, q, r), fibers, b0, e)


def seifert_h1(p: int, q: int, r: int, mirrored: bool = False) -> AbelianGroup:
    """Abelianized unit-tangent-bundle presentation over the (p,q,r) orbifold.

    Generators x1, x2, x3, h; relations alpha_i x_i + beta_i h = 0 and
    x1 + x2 + x3 - b0 h = 0, with (alpha_i, beta_i) = (p, 1), (q, 1), (r, 1)
    and b0 = -1, the convention with Euler number -(b0 + 1/p + 1/q + 1/r).
    The mirrored flag applies the orientation-reversed convention.
    """
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise ValueError(f"({p},{q},{r}) is not hyperbolic")
    data = seifert_data(p, q, r, mirrored)
    rows = [[data.fibers[0][0], 0, 0, data.fibers[0][1]],
            [0, data.fibers[1][0], 0, data.fibers[1][1]],
            [0, 0, data.fibers[2][0], data.fibers[2][1]],
            [1, 1, 1, -data.b0]]
    return AbelianGroup.from_relation_rows(rows, 4)


# --- Theorem-level assembly --------------------------------------------------

GAMMA1_BASE = RationalPoint.of(0, 0)
GAMMA2_BASE = RationalPoint.of(Fraction(3, 5), Fraction(1, 5))


def gamma1() -> CatOrbit:
    return orbit_of(CAT, GAMMA1_BASE)


def gamma2() -> CatOrbit:
    return orbit_of(CAT, GAMMA2_BASE)


THEOREM_ROWS = (
    ("gamma1", SlopeCoefficient(1, 1), (2, 3, 7)),
    ("gamma1", SlopeCoefficient(1, 2), (2, 4, 5)),
    ("gamma1", SlopeCoefficient(1, 3), (3, 3, 4)),
    ("gamma2", SlopeCoefficient(1, 1), (2, 4, 6)),
    ("gamma2", SlopeCoefficient(1, 2), (3, 4, 4)),
)


@dataclass(frozen=True)
class TheoremRowCheck:
    orbit_name: str
    slope: SlopeCoefficient
    triple: tuple[int, int, int]
    surgered: AbelianGroup
    seifert: AbelianGroup

    @property
    def match(self) -> bool:
        return self.surgered == self.seifert


def verify_theorem_h1() -> list[TheoremRowCheck]:
    """Compare filling homology with unit-tangent-bundle homology, per row."""
    orbits = {"gamma1": gamma1(), "gamma2": gamma2()}
    out = []
    for name, slope, triple in THEOREM_ROWS:
        spec = SurgerySpec(orbits[name], slope)
        out.append(TheoremRowCheck(name, slope, triple,
                                   surgered_h1(spec), seifert_h1(*triple)))
    return out


def section_to_slope(direction: tuple[int, int]) -> SlopeCoefficient:
    """Boundary direction (a, b) of a section component to the filling slope
    b/a realizing its mapping torus."""
    a, b = direction
    if b <= 0:
        raise ValueError(f"boundary direction must have b > 0, got {direction}")
    if math.gcd(abs(a), b) != 1:
        raise ValueError(f"direction {direction} is not primitive")
    return SlopeCoefficient(b=b, a=a)


@dataclass(frozen=True)
class ExceptionalSlopeRow:
    orbit_name: str
    slope: str
    identification: str


def exceptional_slope_table() -> list[ExceptionalSlopeRow]:
    rows = [
        ExceptionalSlopeRow("gamma1", "0", "mapping torus (0-surgery)"),
        ExceptionalSlopeRow("gamma1", "+-1", "unit tangent bundle of the (2,3,7) orbifold"),
        ExceptionalSlopeRow("gamma1", "+-1/2", "unit tangent bundle of the (2,4,5) orbifold"),
        ExceptionalSlopeRow("gamma1", "+-1/3", "unit tangent bundle of the (3,3,4) orbifold"),
        ExceptionalSlopeRow("gamma1", "+-1/4", "graph manifold (no homology claim)"),
        ExceptionalSlopeRow("gamma2", "+-1", "unit tangent bundle of the (2,4,6) orbifold"),
        ExceptionalSlopeRow("gamma2", "+-1/2", "unit tangent bundle of the (3,4,4) orbifold"),
    ]
    return rows

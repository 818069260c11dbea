import math

import pytest

from orbiflow import hyp2, trigroup
from orbiflow.hyp2 import IsometryKind, apply, distance
from orbiflow.trigroup import (CASE_TRIPLES, CASES, EnumerationError,
                               GroupElement, adjacency_isometries, build_group,
                               canonical_neighbors, cell_tiling,
                               cell_wall_count, crossing_count, curve_lifts,
                               curve_system, enumerate_elements,
                               projective_dist)

ADJACENCY_EXPECTED = {
    237: (7, 5, 2), 245: (5, 3, 2), 246: (4, 3, 1),
    334: (4, 2, 2), 344: (3, 2, 1),
}
ON_BOUNDARY_EXPECTED = {237: 2, 245: 2, 246: 0, 334: 2, 344: 0}
WALLS_EXPECTED = {237: 7, 245: 5, 246: 4, 334: 8, 344: 6}


@pytest.fixture(scope="module", params=CASES)
def case_data(request):
    case = request.param
    group = build_group(*CASE_TRIPLES[case])
    system = curve_system(case)
    report = adjacency_isometries(group, system, depth=12)
    return case, group, system, report


def test_build_group_orders():
    g = build_group(2, 4, 6)
    acc = hyp2.Isometry.identity()
    for _ in range(4):
        acc = acc.compose(g.gQ)
    assert hyp2.is_identity(acc)
    prod = g.gP.compose(g.gQ).compose(g.gR)
    assert hyp2.is_identity(prod)


def test_build_group_rejects_euclidean():
    with pytest.raises(hyp2.GeometryError):
        build_group(2, 3, 6)


def test_order4_generators_not_conjugate_in_344():
    # gQ and gR share order 4 and trace, but the two order-4 cone points are
    # distinct orbifold points, so no group element conjugates one rotation
    # to the other (or to its inverse): the word search finds no witness.
    g = build_group(3, 4, 4)
    assert abs(abs(g.gQ.trace()) - abs(g.gR.trace())) < 1e-12
    ball = enumerate_elements(g, 5)
    for el in ball:
        conj = el.matrix.compose(g.gQ).compose(el.matrix.inverse())
        assert projective_dist(conj, g.gR) > 1e-3
        assert projective_dist(conj, g.gR.inverse()) > 1e-3
    # The cone-point orbits stay disjoint as well.
    for el in ball:
        assert distance(apply(el.matrix, g.Q), g.R) > 1e-3


def test_ball_zero_is_identity():
    g = build_group(2, 3, 7)
    ball = enumerate_elements(g, 0)
    assert len(ball) == 1
    assert ball[0].word == ()


def test_ball_one_dedups_involution():
    g = build_group(2, 3, 7)
    ball = enumerate_elements(g, 1)
    # gP equals its inverse projectively, so the ball has 1 + 5 elements.
    assert len(ball) == 6
    words = [el.word_str() for el in ball]
    assert words[0] == "1" and "P" in words and "p" not in words


def test_ball_growth_strictly_monotone():
    g = build_group(2, 3, 7)
    sizes = [len(enumerate_elements(g, d)) for d in range(9)]
    assert all(a < b for a, b in zip(sizes, sizes[1:]))


def test_enumeration_deterministic():
    g1 = build_group(2, 4, 5)
    words1 = [el.word for el in enumerate_elements(g1, 5)]
    enumerate_elements.cache_clear()
    trigroup.curve_system.cache_clear()
    trigroup.curve_lifts.cache_clear()
    g2 = build_group(2, 4, 5)
    words2 = [el.word for el in enumerate_elements(g2, 5)]
    assert words1 == words2


def test_figure_eight_axis_through_midpoints():
    for case, seg in ((334, ("P", "Q")), (344, ("Q", "R"))):
        group = build_group(*CASE_TRIPLES[case])
        system = curve_system(case)
        a, b = group.vertex(seg[0]), group.vertex(seg[1])
        mid = trigroup.point_on_segment(a, b, 0.5)
        for geo in system.base_geodesics:
            foot = trigroup.foot_of_perpendicular(geo, mid)
            assert distance(mid, foot) < 1e-8


def test_base_segments_inside_triangle(case_data):
    case, group, system, _ = case_data
    corners = [hyp2.to_klein(group.P), hyp2.to_klein(group.Q),
               hyp2.to_klein(group.R)]

    def inside(pt, slack=1e-7):
        k = hyp2.to_klein(pt)
        for i in range(3):
            a, b = corners[i], corners[(i + 1) % 3]
            c = corners[(i + 2) % 3]
            nx, ny = b[1] - a[1], a[0] - b[0]
            side_c = nx * (c[0] - a[0]) + ny * (c[1] - a[1])
            side_k = nx * (k[0] - a[0]) + ny * (k[1] - a[1])
            if side_c * side_k < -slack:
                return False
        return True

    for seg in system.base_segments:
        assert inside(seg[0]) and inside(seg[1])


def test_cell_walls(case_data):
    case, group, system, _ = case_data
    lifts = curve_lifts(case, 6)
    assert cell_wall_count(system.cell_center, lifts) == WALLS_EXPECTED[case]


def test_other_cell_families():
    lifts = curve_lifts(334, 6)
    g = build_group(3, 3, 4)
    assert cell_wall_count(g.P, lifts) == 3
    assert cell_wall_count(g.Q, lifts) == 3
    lifts = curve_lifts(344, 6)
    g = build_group(3, 4, 4)
    assert cell_wall_count(g.Q, lifts) == 4
    assert cell_wall_count(g.R, lifts) == 4


def test_tiling_contains_base_once(case_data):
    case, group, system, _ = case_data
    tiles = cell_tiling(group, system, 4)
    hits = [el for pt, el in tiles if distance(pt, system.cell_center) < 1e-9]
    assert len(hits) == 1
    assert hits[0].word == ()


def test_tiling_centers_have_full_stabilizer(case_data):
    # A center reached by a word of length 2 has its stabilizer conjugated by
    # that word, so a ball of radius 2*2 + (k-1)//2 + 1 surely contains all k
    # stabilizer elements; no extra ones may appear.
    case, group, system, _ = case_data
    ball = enumerate_elements(group, 8)
    k = system.stabilizer_order
    for pt, _ in cell_tiling(group, system, 2)[:6]:
        fixing = sum(1 for el in ball
                     if distance(apply(el.matrix, pt), pt) < 1e-8)
        assert fixing == k


def test_adjacency_counts(case_data):
    case, _, _, report = case_data
    total, ell, hyp_n = ADJACENCY_EXPECTED[case]
    assert (report.total, report.elliptic, report.hyperbolic) == (total, ell, hyp_n)
    assert report.parabolic == 0
    on_bdry = sum(1 for e in report.entries if e.on_boundary_curve)
    assert on_bdry == ON_BOUNDARY_EXPECTED[case]


def test_adjacency_coset_closure(case_data):
    case, group, system, report = case_data
    rot = hyp2.rotation_about(system.cell_center,
                              2 * math.pi / system.stabilizer_order)
    mats = [e.element.matrix for e in report.entries]
    for m in mats:
        shifted = m.compose(rot)
        assert any(projective_dist(shifted, other) < 1e-6 for other in mats)


def test_adjacency_neighbor_independence(case_data):
    case, group, system, report = case_data
    nbrs = canonical_neighbors(group, system, 12, count=2)
    assert len(nbrs) >= 2
    other = adjacency_isometries(group, system, depth=12, neighbor=nbrs[1])
    assert (other.total, other.elliptic, other.hyperbolic) == \
        (report.total, report.elliptic, report.hyperbolic)


def test_adjacency_small_depth_fails():
    group = build_group(2, 3, 7)
    system = curve_system(237)
    with pytest.raises(EnumerationError):
        adjacency_isometries(group, system, depth=1)


CROSSING_EXPECTED = {246: 1, 344: 1, 334: 2, 237: 2, 245: 1}


def test_crossing_counts(case_data):
    case, group, system, report = case_data
    for entry in report.entries:
        if entry.classification.kind is IsometryKind.HYPERBOLIC:
            assert entry.crossing == CROSSING_EXPECTED[case]


def test_crossing_period_doubling(case_data):
    case, group, system, report = case_data
    entry = next(e for e in report.entries
                 if e.classification.kind is IsometryKind.HYPERBOLIC)
    g = entry.element
    g2 = GroupElement(g.word + g.word, g.matrix.compose(g.matrix))
    assert crossing_count(group, system, g2) == 2 * entry.crossing


def test_crossing_conjugacy_invariance(case_data):
    case, group, system, report = case_data
    entry = next(e for e in report.entries
                 if e.classification.kind is IsometryKind.HYPERBOLIC)
    g = entry.element
    for w in enumerate_elements(group, 2)[1:5]:
        conj = GroupElement(
            w.word + g.word,
            w.matrix.compose(g.matrix).compose(w.matrix.inverse()))
        assert crossing_count(group, system, conj) == entry.crossing


def test_crossing_rejects_elliptic():
    group = build_group(2, 3, 7)
    system = curve_system(237)
    el = GroupElement(("P",), group.gP)
    with pytest.raises(hyp2.GeometryError):
        crossing_count(group, system, el)

import random
from fractions import Fraction

import pytest

from orbiflow import intlinalg, surgery, torusmap
from orbiflow.surgery import (AbelianGroup, SlopeCoefficient, SurgerySpec,
                              exceptional_slope_table, gamma1, gamma2,
                              mapping_torus_h1, section_to_slope, seifert_h1,
                              smith_normal_form, surgered_h1,
                              verify_theorem_h1)
from orbiflow.torusmap import CAT, IDENTITY, TorusMatrix, RationalPoint


def check_certificate(M):
    cert = smith_normal_form(M)
    U = [list(r) for r in cert.U]
    V = [list(r) for r in cert.V]
    D = intlinalg.mat_mul(intlinalg.mat_mul(U, [list(r) for r in M]), V)
    assert tuple(tuple(r) for r in D) == cert.diagonal
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    assert abs(intlinalg.int_det(U)) == 1
    assert abs(intlinalg.int_det(V)) == 1
    factors = [f for f in cert.factors if f != 0]
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    return cert


def test_snf_identity():
    cert = smith_normal_form([[1, 0], [0, 1]])
    assert cert.factors == (1, 1)


def test_snf_cat_minus_identity():
    # Hand reduction: (1,1;1,0) has unit determinant, so factors (1,1).
    cert = check_certificate([[1, 1], [1, 0]])
    assert cert.factors == (1, 1)


def test_snf_diagonal_kept():
    cert = check_certificate([[2, 0], [0, 4]])
    assert cert.factors == (2, 4)


def test_snf_divisibility_fixup():
    cert = check_certificate([[2, 0], [0, 3]])
    assert cert.factors == (1, 6)


def test_snf_random_certificates():
    rng = random.Random(20)
    for _ in range(200):
        M = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(4)]
        check_certificate(M)


def test_abelian_group_order_and_str():
    g = AbelianGroup.from_relation_rows([[2, 0], [0, 4]], 2)
    assert g.invariant_factors == (2, 4)
    assert g.order() == 8
    free = AbelianGroup.from_relation_rows([[0, 0]], 2)
    assert free.order() is None


def test_mapping_torus_h1():
    assert mapping_torus_h1(CAT) == AbelianGroup((0,))
    assert mapping_torus_h1(IDENTITY) == AbelianGroup((0, 0, 0))
    tr4 = TorusMatrix(3, 1, 2, 1)
    assert mapping_torus_h1(tr4) == AbelianGroup((2, 0))


def test_gamma_orbits():
    assert gamma1().period == 1
    g2 = gamma2()
    assert g2.period == 2
    fracs = {p.as_fractions() for p in g2.points}
    assert (Fraction(3, 5), Fraction(1, 5)) in fracs
    assert (Fraction(2, 5), Fraction(4, 5)) in fracs


@pytest.mark.parametrize("a,order", [(1, 1), (2, 2), (3, 3), (4, 4)])
def test_surgered_h1_gamma1_small(a, order):
    grp = surgered_h1(SurgerySpec(gamma1(), SlopeCoefficient(1, a)))
    assert grp.order() == order


def test_surgered_h1_order_law():
    for a in range(1, 11):
        for b in (1, -1):
            grp = surgered_h1(SurgerySpec(gamma1(), SlopeCoefficient(b, a)))
            assert grp.order() == a


def test_surgered_h1_gamma2():
    assert surgered_h1(SurgerySpec(gamma2(), SlopeCoefficient(1, 1))).order() == 4
    assert surgered_h1(SurgerySpec(gamma2(), SlopeCoefficient(1, 2))).order() == 8


def test_surgered_h1_sign_symmetry():
    for orbit in (gamma1(), gamma2()):
        for (b, a) in [(1, 1), (1, 2), (1, 3), (3, 2)]:
            plus = surgered_h1(SurgerySpec(orbit, SlopeCoefficient(b, a)))
            minus = surgered_h1(SurgerySpec(orbit, SlopeCoefficient(-b, a)))
            assert plus == minus


def test_surgered_h1_rejects_non_orbit():
    fake = torusmap.CatOrbit((RationalPoint.of(Fraction(1, 3), 0),))
    with pytest.raises(ValueError):
        surgered_h1(SurgerySpec(fake, SlopeCoefficient(1, 1)))


def test_surgered_h1_zero_surgery_recovers_mapping_torus():
    grp = surgered_h1(SurgerySpec(gamma1(), SlopeCoefficient(1, 0)))
    assert grp == mapping_torus_h1(CAT)


SEIFERT_ORDERS = {(2, 3, 7): 1, (2, 4, 5): 2, (3, 3, 4): 3,
                  (2, 4, 6): 4, (3, 4, 4): 8}


@pytest.mark.parametrize("triple,order", sorted(SEIFERT_ORDERS.items()))
def test_seifert_h1_orders(triple, order):
    grp = seifert_h1(*triple)
    assert grp.order() == order
    p, q, r = triple
    M = [[p, 0, 0, 1], [0, q, 0, 1], [0, 0, r, 1], [1, 1, 1, 1]]
    assert abs(intlinalg.int_det(M)) == order


@pytest.mark.parametrize("triple", sorted(SEIFERT_ORDERS))
def test_seifert_h1_mirror_convention(triple):
    assert seifert_h1(*triple) == seifert_h1(*triple, mirrored=True)


def test_seifert_rejects_euclidean():
    with pytest.raises(ValueError):
        seifert_h1(2, 3, 6)


def test_seifert_euler_number():
    data = surgery.seifert_data(2, 3, 7)
    assert data.euler_number == 1 - Fraction(1, 2) - Fraction(1, 3) - Fraction(1, 7)
    assert data.euler_number == Fraction(1, 42)


def test_theorem_rows_all_match():
    rows = verify_theorem_h1()
    assert len(rows) == 5
    assert all(r.match for r in rows)
    orders = [r.surgered.order() for r in rows]
    assert orders == [1, 2, 3, 4, 8]


@pytest.mark.parametrize("direction,slope", [((1, 1), "1/1"), ((2, 1), "1/2"),
                                             ((3, 1), "1/3")])
def test_section_to_slope(direction, slope):
    assert str(section_to_slope(direction)) == slope


def test_section_to_slope_rejects():
    with pytest.raises(ValueError):
        section_to_slope((1, 0))
    with pytest.raises(ValueError):
        section_to_slope((1, -1))
    with pytest.raises(ValueError):
        section_to_slope((2, 2))


def test_slope_validation():
    with pytest.raises(ValueError):
        SlopeCoefficient(2, 4)
    with pytest.raises(ValueError):
        SlopeCoefficient(2, 0)


def test_exceptional_slope_table():
    rows = exceptional_slope_table()
    by_key = {(r.orbit_name, r.slope): r.identification for r in rows}
    assert "graph manifold" in by_key[("gamma1", "+-1/4")]
    assert "(2,3,7)" in by_key[("gamma1", "+-1")]
    assert "(2,4,6)" in by_key[("gamma2", "+-1")]
    assert "0-surgery" in by_key[("gamma1", "0")]

import pytest

from shascope.curves import ShortModel
from shascope.errors import BadReductionError, DomainError
from shascope.ffcurve import (
    INFINITY,
    FpCurve,
    add,
    ell_primary,
    enumerate_points,
    group_order,
    group_structure,
    is_supersingular,
    neg,
    point_order,
    reduce_curve,
    scalar_mul,
)

EX3_MIN = ShortModel(-5316979, -4724275762)


def brute_points(p, A, B):
    pts = [INFINITY]
    for x in range(p):
        for y in range(p):
            if (y * y - x**3 - A * x - B) % p == 0:
                pts.append((x, y))
    return pts


def test_example4_points():
    c = reduce_curve(EX3_MIN, 7)
    assert (c.A, c.B) == (4, 4)
    pts = enumerate_points(c)
    assert len(pts) == 10
    assert pts[0] is INFINITY
    affine = set(pts[1:])
    assert affine == {(0, 2), (0, 5), (1, 3), (1, 4), (3, 1), (3, 6), (4, 0), (5, 3), (5, 4)}


def test_group_order_vs_brute_force():
    for p in (5, 7, 11, 13, 17, 19, 23):
        for A, B in ((1, 1), (2, 3), (0, 1)):
            if (4 * A**3 + 27 * B**2) % p == 0:
                continue
            c = FpCurve(p, A, B)
            assert group_order(c) == len(brute_points(p, A, B))


def test_group_law_against_brute_force_cayley():
    # associativity + closure spot-check on F_13, y^2 = x^3 + 2x + 3
    c = FpCurve(13, 2, 3)
    pts = enumerate_points(c)
    for P in pts:
        assert add(c, P, INFINITY) == P
        assert add(c, P, neg(c, P)) is INFINITY
        for Q in pts:
            R = add(c, P, Q)
            assert R is INFINITY or c.on_curve(R)
            assert add(c, Q, P) == R
    for P in pts[:5]:
        for Q in pts[:5]:
            for R in pts[:5]:
                assert add(c, add(c, P, Q), R) == add(c, P, add(c, Q, R))


def test_point_order_divides_group_order():
    c = FpCurve(23, 1, 1)
    N = group_order(c)
    for P in enumerate_points(c):
        o = point_order(c, P)
        assert N % o == 0
        assert scalar_mul(c, o, P) is INFINITY


def test_group_structure_weil_pairing_constraint():
    for p in (5, 7, 11, 13, 17):
        for A, B in ((1, 1), (3, 2)):
            if (4 * A**3 + 27 * B**2) % p == 0:
                continue
            c = FpCurve(p, A, B)
            st = group_structure(c)
            assert st.n1 * st.n2 == st.order
            assert st.n2 % st.n1 == 0
            assert (p - 1) % st.n1 == 0  # Weil pairing forces n1 | p - 1


def test_ell_primary_example4():
    c = reduce_curve(EX3_MIN, 7)
    prim = ell_primary(c, 5)
    assert prim.order == 5 and prim.cyclic
    assert prim.points_by_order[5] == [(1, 3), (1, 4), (5, 3), (5, 4)]


def test_bad_reduction_raises():
    with pytest.raises(BadReductionError):
        reduce_curve(ShortModel(1, 1), 31)


def test_small_p_rejected():
    with pytest.raises(DomainError):
        FpCurve(3, 1, 1)


def test_supersingular_known_case():
    # y^2 = x^3 + 1 is supersingular at p = 2 mod 3
    assert is_supersingular(FpCurve(11, 0, 1))
    assert not is_supersingular(FpCurve(13, 0, 1))

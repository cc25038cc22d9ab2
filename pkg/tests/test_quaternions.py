from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gfl import quaternions as Q
from gfl.exact_arith import Polynomial, QuadExt
from gfl.quaternions import HAMILTON, AlgebraParams, HxParams, Quaternion, qmul
from gfl.sequences import FIBONACCI, LUCAS, SequenceSpec, gfl

X = Polynomial.x()


def explicit_product(x, y, g1, g2):
    """Closed product formula in H(g1, g2), written out independently of the table."""
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 + g1 * b1 * b2 + g2 * c1 * c2 - g1 * g2 * d1 * d2,
        a1 * b2 + b1 * a2 - g2 * c1 * d2 + g2 * d1 * c2,
        a1 * c2 + c1 * a2 + g1 * b1 * d2 - g1 * d1 * b2,
        a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
    )


gammas = st.sampled_from([-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-5, 3)])
coords = st.tuples(*[st.integers(-20, 20)] * 4)


def test_basis_products():
    alg = AlgebraParams(2, -3)
    e1, e2, e3 = (Quaternion.basis(k, alg) for k in (1, 2, 3))
    assert qmul(e1, e2) == e3
    assert qmul(e3, e3) == Quaternion.scalar(6, alg)
    x = Quaternion((1, 2, 3, 4), alg)
    assert qmul(Quaternion.scalar(1, alg), x) == x


def test_printed_e3_square_breaks_associativity():
    for g1 in (-1, 1, 2, -3):
        for g2 in (-1, 1, 2, -3):
            alg = AlgebraParams(g1, g2)
            assert Q.associativity_failures(alg) == []
            assert Q.associativity_failures(alg, printed=True)


def test_zero_gamma_rejected():
    with pytest.raises(ValueError):
        AlgebraParams(0, 1)


def test_mixed_algebras_rejected():
    with pytest.raises(Q.AlgebraMismatchError):
        Quaternion((1, 0, 0, 0), HAMILTON) + Quaternion((1, 0, 0, 0), AlgebraParams(1, 1))


@given(gammas, gammas, coords, coords)
def test_qmul_matches_explicit_formula(g1, g2, x, y):
    alg = AlgebraParams(g1, g2)
    assert qmul(Quaternion(x, alg), Quaternion(y, alg)).coords == explicit_product(x, y, g1, g2)


@given(gammas, gammas, coords, coords, coords, st.integers(-5, 5))
def test_qmul_bilinear_and_associative(g1, g2, x, y, z, c):
    alg = AlgebraParams(g1, g2)
    x, y, z = (Quaternion(v, alg) for v in (x, y, z))
    assert qmul(x, y + z) == qmul(x, y) + qmul(x, z)
    assert qmul(x * c, y) == qmul(x, y) * c == qmul(x, y * c)
    assert qmul(qmul(x, y), z) == qmul(x, qmul(y, z))


def test_build_dn_examples():
    assert Q.build_Dn(FIBONACCI, 0).coords == (0, 1, 1, 2)
    assert Q.zero_test(Q.build_Dn(SequenceSpec(1, 1, 0, 0), 4))
    assert Q.build_Dn(LUCAS, 1).coords == (1, 3, 4, 7)


def test_build_gn_examples():
    assert Q.build_Gn(1, 0, 1).coords == (0, 1, 1, 2)
    assert Q.zero_test(Q.build_Gn(0, 0, 5))
    assert Q.build_Gn(0, 1, 1).coords == (1, 3, 4, 7)


def test_build_sn_examples():
    for n in range(1, 10):
        assert Q.build_Sn(1, 2, -1, n) == Q.build_Gn(2, -1, n)
    assert Q.zero_test(Q.build_Sn(3, 0, 0, 4))
    assert Q.build_Sn(2, 1, 1, 1).coords == (1, 7, 9, 23)


def test_zero_test_examples():
    assert Q.zero_test(Q.build_Sn(2, 0, 0, 3))
    assert not Q.zero_test(Q.build_Sn(3, 1, 0, 2))
    assert not Q.zero_test(Q.build_Sn(1, 0, 1, 5))


def test_hx_poly_examples():
    assert Q.hx_poly(HxParams(X, 2, 3), 0) == Polynomial([8])
    assert Q.hx_poly(HxParams(X, 0, 1), 2) == X + 2
    one = Polynomial([1])
    assert all(Q.hx_poly(HxParams(one, 2, -1), n) == gfl(2, -1, n) for n in range(20))


def test_hx_quat_examples():
    assert Q.hx_quat(HxParams(X, 0, 0), 3).is_zero()
    assert Q.hx_quat(HxParams(X, 0, 1), 0).coords == (2, 1, X + 2, X * X + 2 * X + 1)
    one = Polynomial([1])
    assert Q.hx_quat(HxParams(one, 1, 1), 4).evaluate(7) == Q.build_Gn(1, 1, 4)


@given(st.sampled_from([X, 2 * X + 1, X * X]), st.fractions(-4, 4, max_denominator=5),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 30))
def test_numeric_recurrence_agrees_with_polynomial(h, x, p, q, n):
    hx = HxParams(h, p, q)
    assert Q.hx_value(hx, x, n) == Q.hx_poly(hx, n)(x)


def test_binet_roots_examples():
    r1, r2 = Q.binet_roots(X, 1)
    assert (r1, r2) == (QuadExt(Fraction(1, 2), Fraction(1, 2), 5), QuadExt(Fraction(1, 2), Fraction(-1, 2), 5))
    assert r1 * r2 == -1
    r1, _ = Q.binet_roots(2 * X, 1)
    assert r1 == QuadExt(1, 1, 2)


def test_binet_roots_reject_square_discriminant():
    # h = 3/2 gives 9/4 + 4 = 25/4
    with pytest.raises(ValueError):
        Q.binet_roots(Polynomial([Fraction(3, 2)]), 0)


def test_binet_hx_seeds_and_value():
    hx = HxParams(2 * X + 1, 2, -3)
    assert Q.binet_hx(hx, Fraction(1, 2), 0) == 2 + 2 * -3
    assert Q.binet_hx(hx, Fraction(1, 2), 1) == -3
    assert Q.binet_hx(HxParams(X, 0, 1), 1, 3) == 4


def test_printed_binet_wrong_at_index_one():
    hx = HxParams(X, 1, 0)
    assert Q.binet_hx_printed(hx, 1, 1) == 1
    assert Q.hx_value(hx, 1, 1) == 0


def test_binet_quat_examples():
    assert Q.binet_hx_quat(HxParams(X, 0, 0), 1, 3).is_zero()
    hx = HxParams(X, 1, 0)
    assert Q.binet_hx_quat(hx, 1, 1) == Q.hx_quat(hx, 1).evaluate(1)
    hx = HxParams(X * X, 2, 1)
    assert Q.binet_hx_quat(hx, 2, 0) == Q.hx_quat(hx, 0).evaluate(2)


def test_binet_quaternion_coordinates_shared_across_algebras():
    hx = HxParams(X, 1, 2)
    a = Q.binet_hx_quat(hx, 3, 5, HAMILTON)
    b = Q.binet_hx_quat(hx, 3, 5, AlgebraParams(2, -3))
    assert a.coords == b.coords and a.algebra != b.algebra


def test_catalan_boundary_case_s_equals_n():
    for n in range(1, 6):
        r = Q.catalan_check(HxParams(X, 1, 2), 2, n, n, AlgebraParams(2, -3))
        assert r.passed and r.details["binet_matches"]


def test_catalan_zero_parameters():
    r = Q.catalan_check(HxParams(X, 0, 0), 1, 4, 2)
    assert r.passed and r.left.is_zero()


def test_catalan_reduces_to_cassini():
    a = Q.catalan_check(HxParams(X, 0, 1), 1, 3, 1)
    b = Q.cassini_check(HxParams(X, 0, 1), 1, 3)
    assert a.passed and a.left == b.left == b.right


def test_cassini_examples():
    assert Q.cassini_check(HxParams(Polynomial([1]), 1, 0), 5, 3).passed
    assert Q.cassini_check(HxParams(X, 0, 1), 1, 2, HAMILTON).passed
    assert Q.cassini_check(HxParams(X, 0, 0), 1, 2).left.is_zero()


def test_catalan_printed_right_side_disagrees():
    r = Q.catalan_check(HxParams(X, 1, 0), 1, 4, 2)
    assert r.passed and not r.details["printed_matches"]


def test_catalan_precondition():
    with pytest.raises(ValueError):
        Q.catalan_check(HxParams(X, 1, 0), 1, 2, 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([X, 2 * X + 1, X * X]), st.sampled_from([1, 2, Fraction(1, 2), -3]),
       st.integers(-3, 3), st.integers(-3, 3), gammas, gammas, st.integers(1, 12), st.data())
def test_catalan_random(h, x, p, q, g1, g2, n, data):
    s = data.draw(st.integers(1, n))
    r = Q.catalan_check(HxParams(h, p, q), x, n, s, AlgebraParams(g1, g2))
    assert r.passed and r.details["binet_matches"]


@settings(deadline=None, max_examples=60)
@given(st.sampled_from([X, 2 * X + 1, X * X]), st.sampled_from([1, 2, Fraction(1, 2), -3]),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 20), st.data(),
       st.sampled_from([-1, 1, 2, -3]), st.sampled_from([-1, 1, 2, -3]))
def test_catalan_on_random_points_of_the_full_box(h, x, p, q, n, data, g1, g2):
    s = data.draw(st.integers(1, n))
    r = Q.catalan_check(HxParams(h, p, q), x, n, s, AlgebraParams(g1, g2))
    assert r.passed and r.details["binet_matches"]

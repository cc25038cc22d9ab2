from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gfl import sequences as S
from gfl.sequences import FIBONACCI, LUCAS, SIGN_FLIP, SequenceSpec, term, term_fast


def naive_terms(a, b, x0, x1, count):
    out = [x0, x1]
    while len(out) < count:
        out.append(a * out[-1] + b * out[-2])
    return out[:count]


def test_term_examples():
    assert term(FIBONACCI, 10) == 55
    assert term(LUCAS, 0) == 2
    assert term(SequenceSpec(1, 2, 0, 1), 4) == 5


def test_term_fast_examples():
    assert term_fast(FIBONACCI, 10) == 55
    assert term_fast(SequenceSpec(3, -4, 7, 2), 0) == 7
    assert term_fast(LUCAS, 5) == 11


def test_negative_indices_under_both_conventions():
    assert [term(FIBONACCI, -k) for k in range(1, 6)] == [1, -1, 2, -3, 5]
    # backward recursion through b = 2 leaves the integers
    assert term(SequenceSpec(1, 2, 0, 1), -1) == Fraction(1, 2)
    assert term(SequenceSpec(1, 2, 0, 1), -1, SIGN_FLIP) == 1


def test_sign_flip_rule_only_for_unit_start_specs():
    with pytest.raises(S.UnsupportedConventionError):
        term(LUCAS, -1, SIGN_FLIP)


def test_backward_recursion_needs_nonzero_b():
    with pytest.raises(S.PreconditionError):
        term(SequenceSpec(1, 0, 1, 1), -1)


def test_gfl_examples():
    assert S.gfl(1, 1, 2) == 4
    assert S.gfl(1, 0, 3) == 1
    assert S.gfl(0, 1, 0) == 2


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 80))
def test_gfl_matches_fibonacci_lucas_combination(p, q, n):
    assert S.gfl(p, q, n) == p * S.fib(n - 1) + q * S.luc(n)
    assert S.gfl_closed(p, q, n) == S.gfl(p, q, n)


def test_gen_s_examples():
    assert S.gen_s(2, 1, 1, 2) == 7
    assert all(S.gen_s(a, 3, -4, 1) == -4 for a in range(1, 6))
    assert S.gen_s(1, 1, 1, 3) == S.gfl(1, 1, 3) == 5


@given(st.integers(1, 10), st.integers(-5, 5), st.integers(-5, 5), st.integers(2, 40))
def test_closed_and_recurrence_s_agree_for_a_equal_one(a, p, q, n):
    if a == 1:
        assert S.s_closed(1, p, q, n) == S.gen_s(1, p, q, n)
    # both readings obey the recurrence once x_{n-2} has a nonnegative index
    assert S.s_closed(a, p, q, n + 1) == S.s_closed(a, p, q, n) + a * S.s_closed(a, p, q, n - 1)


@pytest.mark.parametrize("ident,n,p", [("i", 1, None), ("vi", 1, None), ("xii", 0, 0)])
def test_prop21_examples(ident, n, p):
    assert S.check_prop21(ident, n, p).passed


def test_prop21_values():
    assert S.check_prop21("i", 1).right == 2
    assert S.check_prop21("vi", 1).left == 1
    assert S.check_prop21("xii", 0, 0).left == 4


def test_prop21_domain_errors():
    with pytest.raises(S.PreconditionError):
        S.check_prop21("ii", 0)
    with pytest.raises(S.PreconditionError):
        S.check_prop21("ix", 3)
    with pytest.raises(ValueError):
        S.check_prop21("xiii", 3)


def test_item_xi_is_checked_without_rescaling():
    rep = S.check_prop21("xi", 3, 2)
    assert isinstance(rep.right, Fraction) and rep.passed


def test_prop51_examples():
    r = S.check_prop51("i", 2, 1, 1)
    assert r.passed and r.left == 5
    r = S.check_prop51("ii", 2, 1, 1)
    assert r.passed and r.left == 5
    r = S.check_prop51("i", 1, 0, 0)
    assert r.passed and r.left == 4


def test_cassini_examples():
    r = S.cassini_gfl(1, 1, 2)
    assert r.left == -11 and r.passed
    assert S.cassini_gfl(1, 0, 2).right == -1
    assert S.cassini_gfl(0, 1, 3).right == 5


def test_convolution_examples():
    assert S.convolution(0, 1, 2) == 7
    assert S.convolution(1, 0, 2) == 1
    assert all(S.convolution(0, 0, n) == 0 for n in range(1, 10))


def test_prop32_examples():
    r = S.check_prop32(0, 1, 2)
    assert r.left == 35 and r.passed
    r = S.check_prop32(1, 0, 2)
    assert r.left == 5 and r.passed
    assert S.check_prop32(0, 0, 5).left == 0


def test_remark52_examples():
    r = S.check_remark52(2, 1, 1, 1)
    assert r.left == 2 and r.passed
    assert S.check_remark52(1, 1, 0, 2).passed
    assert S.check_remark52(4, 0, 0, 7).left == 0


def test_remark52_recurrence_seed_reading_differs():
    # the same example with s seeded by (p+2q, q) gives 3, not 2
    assert S.check_remark52(2, 1, 1, 1).details["recurrence_right"] == 3


def test_binet_scalar_examples():
    assert S.binet_scalar("x-sequence", 1, 2) == 1
    assert S.binet_scalar("y-sequence", 1, 0) == 2
    assert S.binet_scalar("x-sequence", 2, 3) == 3


@given(st.integers(1, 20), st.integers(0, 40))
def test_binet_scalar_matches_recurrence(a, n):
    assert S.binet_scalar("x", a, n) == term(S.x_spec(a), n)
    assert S.binet_scalar("y", a, n) == term(S.y_spec(a), n)


coef = st.integers(-10, 10)


@given(coef, coef, coef, coef, st.integers(0, 300))
def test_term_fast_matches_iteration(a, b, x0, x1, n):
    spec = SequenceSpec(a, b, x0, x1)
    assert term_fast(spec, n) == term(spec, n) == naive_terms(a, b, x0, x1, n + 1)[n]


def test_report_serialisation():
    d = S.check_prop21("xi", 2, 1).as_dict()
    assert d["passed"] is True and isinstance(d["right"], int)


def test_closed_s_differs_from_recurrence_seeds_when_a_exceeds_one():
    # p*x_{n-1} + q*y_n starts at (p + 2q, q) only when a = 1
    assert S.s_closed(2, 1, 0, 2) == 1
    assert S.gen_s(2, 1, 0, 2) == 2

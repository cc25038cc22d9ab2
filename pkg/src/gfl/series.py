"""Truncated formal power series and the generating-function checks.

Coefficients may come from a noncommutative ring (quaternions). The formal
variable is central; in products the left factor's coefficient multiplies on
the left.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact_arith import Polynomial, as_fraction, poly_eval
from .quaternions import AlgebraParams, HAMILTON, HxParams, Quaternion, build_Gn, hx_quat
from .sequences import IdentityReport, PreconditionError, convolution, gfl, prop32_rhs


class TruncatedSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None, zero=0):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries([c * other for c in self.coeffs], self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(str(c) for c in self.coeffs)}], order={self.order})"


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    if s.order != t.order:
        raise ValueError(f"truncation orders differ: {s.order} vs {t.order}")
    N = s.order
    out = []
    for n in range(N + 1):
        acc = 0
        for k in range(n + 1):
            a, b = s.coeffs[k], t.coeffs[n - k]
            if a == 0 or b == 0:
                continue
            acc = acc + a * b
        out.append(acc)
    return TruncatedSeries(out, N)


def _unit_inverse(c):
    if isinstance(c, Polynomial):
        if c.degree != 0:
            raise ZeroDivisionError(f"constant term {c} is not a unit")
        return 1 / c.coeffs[0]
    if c == 0:
        raise ZeroDivisionError("constant term of the denominator is zero")
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def expand_rational(numerator: Sequence, denominator: Sequence, order: int) -> TruncatedSeries:
    """Power-series long division: the series r with denominator * r = numerator mod z^{order+1}.

    The denominator's constant term must be a unit of the coefficient ring.
    """
    if not denominator:
        raise ZeroDivisionError("empty denominator")
    inv0 = _unit_inverse(denominator[0])
    out = []
    for n in range(order + 1):
        acc = numerator[n] if n < len(numerator) else 0
        for k in range(1, min(n, len(denominator) - 1) + 1):
            dk = denominator[k]
            if dk == 0:
                continue
            acc = acc - dk * out[n - k]
        out.append(acc * inv0 if inv0 != 1 else acc)
    return TruncatedSeries(out, order)


def _fib_denominator():
    return [1, -1, -1]


# ---------------------------------------------------------------------------
# generating-function checks


def check_prop31(p: int, q: int, order: int) -> IdentityReport:
    """Coefficients of (qz + (p+2q)z^2)/(1 - z - z^2) against g_n^{p,q}."""
    if order < 2:
        raise PreconditionError("order must be >= 2")
    series = expand_rational([0, q, p + 2 * q], _fib_denominator(), order)
    expected = [0] + [gfl(p, q, n) for n in range(1, order + 1)]
    return IdentityReport("prop31", {"p": p, "q": q, "N": order}, list(series), expected)


def a_series(p: int, q: int, order: int) -> TruncatedSeries:
    return TruncatedSeries([0] + [gfl(p, q, n) for n in range(1, order + 1)], order)


def check_prop32_series(p: int, q: int, order: int) -> IdentityReport:
    """Compare the z^n coefficients of A(z)^2 with the convolution sum and the closed form.

    The coefficient of z^n in A^2 is sum_{k=1}^{n-1} g_k g_{n-k}; the
    convolution sum runs to k = n and so also picks up g_n g_0. The report's
    left side is 5 * convolution, the right side the closed form, and
    ``details`` records whether 5 * (A^2 coefficient) agrees with the closed
    form at any n.
    """
    if order < 2:
        raise PreconditionError("order must be >= 2")
    A = a_series(p, q, order)
    sq = series_mul(A, A)
    ns = range(2, order + 1)
    conv = [convolution(p, q, n) for n in ns]
    closed = [prop32_rhs(p, q, n) for n in ns]
    a2 = [sq[n] for n in ns]
    rep = IdentityReport("prop32.series", {"p": p, "q": q, "N": order}, [5 * c for c in conv], closed)
    g0 = p + 2 * q
    rep.details["a_squared_coefficients"] = a2
    rep.details["a_squared_plus_boundary_is_convolution"] = all(
        a2[i] + gfl(p, q, n) * g0 == conv[i] for i, n in enumerate(ns)
    )
    rep.details["a_squared_matches_closed_form"] = all(5 * a2[i] == closed[i] for i in range(len(a2)))
    rep.details["matching_reading"] = (
        "convolution including g_0" if rep.passed else "none"
    )
    return rep


def check_prop42(p: int, q: int, algebra: AlgebraParams = HAMILTON, order: int = 16) -> IdentityReport:
    """(G_1 z + (G_2 - G_1) z^2)/(1 - z - z^2) against G_n^{p,q}."""
    if order < 2:
        raise PreconditionError("order must be >= 2")
    G1, G2 = build_Gn(p, q, 1, algebra), build_Gn(p, q, 2, algebra)
    zero = Quaternion((0, 0, 0, 0), algebra)
    series = expand_rational([zero, G1, G2 - G1], _fib_denominator(), order)
    expected = [zero] + [build_Gn(p, q, n, algebra) for n in range(1, order + 1)]
    params = {"p": p, "q": q, "N": order, "gamma1": str(algebra.gamma1), "gamma2": str(algebra.gamma2)}
    return IdentityReport("prop42", params, list(series), expected)


def check_thm45(hx: HxParams, x, order: int, algebra: AlgebraParams = HAMILTON) -> IdentityReport:
    """(G_0 + (G_1 - h G_0) t)/(1 - h t - t^2) against G_{h,n}.

    With ``x=None`` the check runs with polynomial coordinates; otherwise all
    entries are evaluated at ``x`` first.
    """
    if order < 2:
        raise PreconditionError("order must be >= 2")
    if x is None:
        h = hx.h
        G = lambda k: hx_quat(hx, k, algebra)  # noqa: E731
    else:
        x = as_fraction(x)
        h = poly_eval(hx.h, x)
        G = lambda k: hx_quat(hx, k, algebra).evaluate(x)  # noqa: E731
    G0, G1 = G(0), G(1)
    series = expand_rational([G0, G1 - h * G0], [1, -h, -1], order)
    expected = [G(n) for n in range(order + 1)]
    params = {"h": str(hx.h), "p": hx.p, "q": hx.q, "x": None if x is None else str(x), "N": order,
              "gamma1": str(algebra.gamma1), "gamma2": str(algebra.gamma2)}
    return IdentityReport("thm45", params, list(series), expected)

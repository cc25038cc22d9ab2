"""Exact number tower: integers, rationals, Q(sqrt D) elements and rational polynomials.

Integers are Python ints and rationals are :class:`fractions.Fraction`.
The two classes defined here only add what the standard library lacks.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational as _RationalABC
from typing import Iterable, Union

from gmpy2 import mpq as _mpq

Rational = Fraction
Scalar = Union[int, Fraction]


_ZERO = Fraction(0)
_MPQ_ZERO = _mpq(0)
_MPQ_ONE = _mpq(1)


class IncompatibleFieldError(ValueError):
    """Raised when two quadratic-extension elements carry different radicands."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def is_rational_square(r) -> bool:
    r = as_fraction(r)
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@lru_cache(maxsize=1024)
def _normalize_radicand(d: Fraction) -> tuple[Fraction, int]:
    """Write sqrt(d) = scale * sqrt(core) with ``core`` a squarefree integer."""
    if is_rational_square(d):
        raise ValueError(f"radicand {d} is the square of a rational; sqrt would not be irrational")
    # sqrt(a/b) = sqrt(a*b) / b
    n, b = d.numerator * d.denominator, d.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    outer = 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            outer *= k
        k += 1 if k == 2 else 2
    return Fraction(outer, b), sign * n


class QuadExt:
    """Element ``u + v*sqrt(d)`` of the field Q(sqrt d).

    ``d`` must not be the square of a rational. It is normalized to a
    squarefree integer on construction, so ``QuadExt(0, 1, 8)`` equals
    ``QuadExt(0, 2, 2)``. Coordinates are held as gmpy2 ``mpq``
    internally for speed; ``u``, ``v`` and ``d`` read back as Fractions.
    """

    __slots__ = ("_u", "_v", "_d")

    def __init__(self, u=0, v=0, d=5):
        scale, core = _normalize_radicand(as_fraction(d))
        self._u = _mpq(as_fraction(u))
        self._v = _mpq(as_fraction(v) * scale)
        self._d = _mpq(core)

    @classmethod
    def _raw(cls, u, v, d) -> "QuadExt":
        # skips validation; callers pass mpq values and an already-checked radicand
        obj = object.__new__(cls)
        obj._u, obj._v, obj._d = u, v, d
        return obj

    @property
    def u(self) -> Fraction:
        return Fraction(int(self._u.numerator), int(self._u.denominator))

    @property
    def v(self) -> Fraction:
        return Fraction(int(self._v.numerator), int(self._v.denominator))

    @property
    def d(self) -> Fraction:
        return Fraction(int(self._d.numerator), int(self._d.denominator))

    @classmethod
    def sqrt(cls, d) -> "QuadExt":
        return cls(0, 1, d)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other._d != self._d:
                raise IncompatibleFieldError(f"radicands differ: {self.d} vs {other.d}")
            return other
        if isinstance(other, int):
            return QuadExt._raw(_mpq(other), _MPQ_ZERO, self._d)
        if isinstance(other, Fraction):
            return QuadExt._raw(_mpq(other.numerator, other.denominator), _MPQ_ZERO, self._d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt._raw(self._u + o._u, self._v + o._v, self._d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self._u, -self._v, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt._raw(self._u - o._u, self._v - o._v, self._d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return quad_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return quad_mul(self, quad_inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return quad_mul(o, quad_inv(self))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else quad_inv(self)
        n = abs(n)
        result = QuadExt._raw(_MPQ_ONE, _MPQ_ZERO, self._d)
        while n:
            if n & 1:
                result = quad_mul(result, base)
            base = quad_mul(base, base)
            n >>= 1
        return result

    def conjugate(self) -> "QuadExt":
        return QuadExt._raw(self._u, -self._v, self._d)

    def norm(self) -> Fraction:
        n = self._u * self._u - self._v * self._v * self._d
        return Fraction(int(n.numerator), int(n.denominator))

    def is_rational(self) -> bool:
        return self._v == 0

    def to_fraction(self) -> Fraction:
        if self._v != 0:
            raise ValueError(f"{self} is not rational")
        return self.u

    def __bool__(self):
        return bool(self._u) or bool(self._v)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self._d == other._d and self._u == other._u and self._v == other._v
        if isinstance(other, (int, Fraction)):
            return self._v == 0 and self._u == other
        return NotImplemented

    def __hash__(self):
        if self._v == 0:
            return hash(self._u)
        return hash((self._u, self._v, self._d))

    def __repr__(self):
        return f"QuadExt({self.u}, {self.v}, d={self.d})"

    def __str__(self):
        if self._v == 0:
            return str(self.u)
        sign = "-" if self._v < 0 else "+"
        return f"{self.u} {sign} {abs(self.v)}*sqrt({self.d})"


def quad_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    if x._d != y._d:
        raise IncompatibleFieldError(f"radicands differ: {x.d} vs {y.d}")
    return QuadExt._raw(x._u * y._u + x._v * y._v * x._d, x._u * y._v + x._v * y._u, x._d)


def quad_inv(x: QuadExt) -> QuadExt:
    n = x._u * x._u - x._v * x._v * x._d
    if n == 0:
        # norm vanishes only at zero because d is not a square
        raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
    return QuadExt._raw(x._u / n, -x._v / n, x._d)


class Polynomial:
    """Univariate polynomial with rational coefficients, ascending degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self._hash = None
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        return poly_eval(self, x)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0] if self.coeffs else _ZERO)
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_eval(p: Polynomial, x):
    """Horner evaluation; ``x`` may be any ring element supporting + and *."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


def parse_polynomial(text: str) -> Polynomial:
    """Parse ascending comma-separated coefficients, e.g. ``"1,2"`` is 1 + 2x."""
    text = text.strip()
    if not text:
        return Polynomial()
    return Polynomial(Fraction(t.strip()) for t in text.split(","))


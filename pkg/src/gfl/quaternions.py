"""Generalized quaternion algebra H(gamma1, gamma2) over a commutative coefficient ring.

Coordinates may be ints, Fractions, :class:`QuadExt` or :class:`Polynomial`
values; the structure constants gamma1, gamma2 are rationals. The basis is
{1, e1, e2, e3} with e1^2 = gamma1, e2^2 = gamma2, e3 = e1 e2 = -e2 e1.
Associativity then forces e3^2 = -gamma1*gamma2 (see
:func:`associativity_failures` for the check).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exact_arith import Polynomial, QuadExt, as_fraction, is_rational_square, poly_eval
from .sequences import IdentityReport, PreconditionError, SequenceSpec, gen_s, gfl, term


class AlgebraMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraParams:
    gamma1: Fraction
    gamma2: Fraction

    def __post_init__(self):
        g1, g2 = as_fraction(self.gamma1), as_fraction(self.gamma2)
        if g1 == 0 or g2 == 0:
            raise ValueError("gamma1 and gamma2 must be nonzero")
        object.__setattr__(self, "gamma1", g1)
        object.__setattr__(self, "gamma2", g2)

    def is_integral(self) -> bool:
        return self.gamma1.denominator == 1 and self.gamma2.denominator == 1


HAMILTON = AlgebraParams(-1, -1)


@lru_cache(maxsize=None)
def multiplication_table(algebra: AlgebraParams, printed: bool = False) -> dict:
    """Map (i, j) -> (coefficient, k) meaning e_i e_j = coefficient * e_k.

    ``printed=True`` uses e3^2 = +gamma1*gamma2, the entry that breaks
    associativity; everything else is identical.
    """
    g1, g2 = algebra.gamma1, algebra.gamma2
    one = Fraction(1)
    t = {(0, k): (one, k) for k in range(4)}
    t.update({(k, 0): (one, k) for k in range(1, 4)})
    t[1, 1] = (g1, 0)
    t[1, 2] = (one, 3)
    t[1, 3] = (g1, 2)
    t[2, 1] = (-one, 3)
    t[2, 2] = (g2, 0)
    t[2, 3] = (-g2, 1)
    t[3, 1] = (-g1, 2)
    t[3, 2] = (g2, 1)
    t[3, 3] = (g1 * g2 if printed else -g1 * g2, 0)
    return t


class Quaternion:
    __slots__ = ("coords", "algebra")

    def __init__(self, coords, algebra: AlgebraParams = HAMILTON):
        coords = tuple(coords)
        if len(coords) != 4:
            raise ValueError("a quaternion has exactly four coordinates")
        self.coords = coords
        self.algebra = algebra

    @classmethod
    def basis(cls, k: int, algebra: AlgebraParams = HAMILTON) -> "Quaternion":
        return cls(tuple(Fraction(int(i == k)) for i in range(4)), algebra)

    @classmethod
    def scalar(cls, c, algebra: AlgebraParams = HAMILTON) -> "Quaternion":
        return cls((c, 0, 0, 0), algebra)

    def _check(self, other: "Quaternion"):
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check(other)
        return Quaternion((a + b for a, b in zip(self.coords, other.coords)), self.algebra)

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check(other)
        return Quaternion((a - b for a, b in zip(self.coords, other.coords)), self.algebra)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int) and other == 0:
            return -self
        return NotImplemented

    def __neg__(self):
        return Quaternion((-a for a in self.coords), self.algebra)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion((a * other for a in self.coords), self.algebra)

    def __rmul__(self, other):
        # scalars are central
        return Quaternion((other * a for a in self.coords), self.algebra)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion((a / other for a in self.coords), self.algebra)

    def map(self, func) -> "Quaternion":
        return Quaternion((func(c) for c in self.coords), self.algebra)

    def evaluate(self, x) -> "Quaternion":
        """Evaluate polynomial coordinates at ``x``."""
        return self.map(lambda c: poly_eval(c, x) if isinstance(c, Polynomial) else c)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra == other.algebra and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash((self.coords, self.algebra))

    def __repr__(self):
        return f"Quaternion({', '.join(str(c) for c in self.coords)})"

    __str__ = __repr__


def qmul(x: Quaternion, y: Quaternion, table: dict | None = None) -> Quaternion:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError(f"{x.algebra} vs {y.algebra}")
    if table is None:
        table = multiplication_table(x.algebra)
    out = [0, 0, 0, 0]
    for (i, j), (coef, k) in table.items():
        xi, yj = x.coords[i], y.coords[j]
        if xi == 0 or yj == 0:
            continue
        prod = xi * yj
        out[k] = out[k] + (prod if coef == 1 else prod * coef)
    return Quaternion(out, x.algebra)


def associativity_failures(algebra: AlgebraParams, printed: bool = False) -> list[tuple[int, int, int]]:
    """Basis triples (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k)."""
    table = multiplication_table(algebra, printed)
    basis = [Quaternion.basis(k, algebra) for k in range(4)]
    bad = []
    for i, j, k in product(range(4), repeat=3):
        left = qmul(qmul(basis[i], basis[j], table), basis[k], table)
        right = qmul(basis[i], qmul(basis[j], basis[k], table), table)
        if left != right:
            bad.append((i, j, k))
    return bad


# ---------------------------------------------------------------------------
# builders


def build_Dn(spec: SequenceSpec, n: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    return Quaternion((term(spec, n + k) for k in range(4)), algebra)


def build_Gn(p: int, q: int, n: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    if n < 1:
        raise PreconditionError("G_n is built for n >= 1")
    return Quaternion((gfl(p, q, n + k) for k in range(4)), algebra)


def build_Sn(a: int, p: int, q: int, n: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    if n < 1:
        raise PreconditionError("S_n is built for n >= 1")
    return Quaternion((gen_s(a, p, q, n + k) for k in range(4)), algebra)


def zero_test(x: Quaternion) -> bool:
    return x.is_zero()


# ---------------------------------------------------------------------------
# h(x)-Fibonacci-Lucas polynomials


@dataclass(frozen=True)
class HxParams:
    h: Polynomial
    p: int
    q: int


@lru_cache(maxsize=4096)
def _hx_poly_seq(hx: HxParams, count: int) -> tuple[Polynomial, ...]:
    seq = [Polynomial([hx.p + 2 * hx.q]), Polynomial([hx.q])]
    while len(seq) < count:
        seq.append(hx.h * seq[-1] + seq[-2])
    return tuple(seq[:count])


def hx_poly(hx: HxParams, n: int) -> Polynomial:
    if n < 0:
        raise PreconditionError("n must be >= 0")
    # grow in chunks so the cache is shared across nearby n
    count = max(8, 1 << (n + 1).bit_length())
    return _hx_poly_seq(hx, count)[n]


def hx_quat(hx: HxParams, n: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    return Quaternion((hx_poly(hx, n + k) for k in range(4)), algebra)


@lru_cache(maxsize=4096)
def _hx_value_seq(hx: HxParams, x: Fraction, count: int) -> tuple[Fraction, ...]:
    hv = poly_eval(hx.h, x)
    seq = [Fraction(hx.p + 2 * hx.q), Fraction(hx.q)]
    while len(seq) < count:
        seq.append(hv * seq[-1] + seq[-2])
    return tuple(seq[:count])


def hx_value(hx: HxParams, x, n: int) -> Fraction:
    """g_{h,n}(x) by running the recurrence on the number h(x)."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    count = max(8, 1 << (n + 1).bit_length())
    return _hx_value_seq(hx, as_fraction(x), count)[n]


@lru_cache(maxsize=65536)
def _hx_value_coords(hx: HxParams, x: Fraction, n: int) -> tuple[Fraction, ...]:
    return tuple(hx_value(hx, x, n + k) for k in range(4))


def hx_quat_value(hx: HxParams, x, n: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    """G_{h,n}(x) built from the recurrence evaluated at x."""
    return Quaternion(_hx_value_coords(hx, as_fraction(x), n), algebra)


# ---------------------------------------------------------------------------
# Binet forms over Q(sqrt(h(x)^2 + 4))


def _discriminant(h: Polynomial, x: Fraction) -> Fraction:
    hv = poly_eval(h, x)
    return hv * hv + 4


@lru_cache(maxsize=4096)
def binet_roots(h: Polynomial, x) -> tuple[QuadExt, QuadExt]:
    hx = poly_eval(h, as_fraction(x))
    d = hx * hx + 4
    if is_rational_square(d):
        raise ValueError(f"h(x)^2 + 4 = {d} is a rational square; roots are rational")
    half = Fraction(1, 2)
    return QuadExt(hx / 2, half, d), QuadExt(hx / 2, -half, d)


@lru_cache(maxsize=65536)
def _root_power(r: QuadExt, k: int) -> QuadExt:
    return r ** k


@lru_cache(maxsize=65536)
def _root_diff(h: Polynomial, x: Fraction, k: int) -> QuadExt:
    # (r1^k - r2^k) / (r1 - r2), the building block of every Binet form below
    r1, r2 = binet_roots(h, x)
    return (_root_power(r1, k) - _root_power(r2, k)) / (r1 - r2)


def binet_hx(hx: HxParams, x, n: int) -> QuadExt:
    """g_{h,n}(x) = [(p+2q)(r1^{n-1} - r2^{n-1}) + q(r1^n - r2^n)] / (r1 - r2)."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    x = as_fraction(x)
    return (hx.p + 2 * hx.q) * _root_diff(hx.h, x, n - 1) + hx.q * _root_diff(hx.h, x, n)


def binet_hx_printed(hx: HxParams, x, n: int) -> QuadExt:
    """The printed variant [(p+2q)(r1^{n+1} - r2^{n+1}) - q(r1^n - r2^n)] / (r1 - r2)."""
    x = as_fraction(x)
    return (hx.p + 2 * hx.q) * _root_diff(hx.h, x, n + 1) - hx.q * _root_diff(hx.h, x, n)


@lru_cache(maxsize=4096)
def _binet_coeff_coords(hx: HxParams, x: Fraction, printed: bool):
    roots = binet_roots(hx.h, x)
    A, q = hx.p + 2 * hx.q, hx.q
    out = []
    for r in roots:
        if printed:
            out.append(tuple(A * _root_power(r, k + 1) - q * _root_power(r, k) for k in range(4)))
        else:
            out.append(tuple(A * _root_power(r, k - 1) + q * _root_power(r, k) for k in range(4)))
    return tuple(out)


def binet_quat_coeffs(hx: HxParams, x, algebra: AlgebraParams = HAMILTON, printed: bool = False):
    """(R1, R2) with G_{h,n}(x) = (R1 r1^n - R2 r2^n) / (r1 - r2)."""
    c1, c2 = _binet_coeff_coords(hx, as_fraction(x), printed)
    return Quaternion(c1, algebra), Quaternion(c2, algebra)


@lru_cache(maxsize=65536)
def _binet_quat_coords(hx: HxParams, x: Fraction, n: int, printed: bool) -> tuple[QuadExt, ...]:
    # coordinates never touch the multiplication table, so they are shared across algebras
    r1, r2 = binet_roots(hx.h, x)
    R1, R2 = binet_quat_coeffs(hx, x, HAMILTON, printed)
    return ((R1 * _root_power(r1, n) - R2 * _root_power(r2, n)) * _inverse_root_gap(hx.h, x)).coords


@lru_cache(maxsize=4096)
def _inverse_root_gap(h: Polynomial, x: Fraction) -> QuadExt:
    r1, r2 = binet_roots(h, x)
    return 1 / (r1 - r2)


def binet_hx_quat(hx: HxParams, x, n: int, algebra: AlgebraParams = HAMILTON, printed: bool = False) -> Quaternion:
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return Quaternion(_binet_quat_coords(hx, as_fraction(x), n, printed), algebra)


# ---------------------------------------------------------------------------
# Catalan and Cassini


def catalan_closed_form(hx: HxParams, x, n: int, s: int, algebra: AlgebraParams = HAMILTON) -> Quaternion:
    """(-1)^{n+s+1}/(h^2+4) [R1R2((-1)^{s+1} + r1^{2s}) + R2R1((-1)^{s+1} + r2^{2s})]."""
    r1, r2 = binet_roots(hx.h, as_fraction(x))
    R1, R2 = binet_quat_coeffs(hx, x, algebra)
    sign_s = (-1) ** (s + 1)
    body = qmul(R1, R2) * (sign_s + _root_power(r1, 2 * s)) + qmul(R2, R1) * (sign_s + _root_power(r2, 2 * s))
    disc = _discriminant(hx.h, as_fraction(x))
    return body * Fraction((-1) ** (n + s + 1)) / disc


def catalan_printed_rhs(hx: HxParams, x, n: int, s: int, algebra: AlgebraParams = HAMILTON,
                        printed_coeffs: bool = False) -> Quaternion:
    """Right side with r^2 in place of r^{2s} and R1R2 in both terms."""
    r1, r2 = binet_roots(hx.h, as_fraction(x))
    R1, R2 = binet_quat_coeffs(hx, x, algebra, printed=printed_coeffs)
    sign_s = (-1) ** (s + 1)
    R12 = qmul(R1, R2)
    body = R12 * (sign_s + _root_power(r1, 2)) + R12 * (sign_s + _root_power(r2, 2))
    return body * Fraction((-1) ** (n + s + 1)) / _discriminant(hx.h, as_fraction(x))


def _recurrence_quat(hx: HxParams, x, k: int, algebra: AlgebraParams) -> Quaternion:
    return hx_quat_value(hx, x, k, algebra)


def catalan_check(hx: HxParams, x, n: int, s: int, algebra: AlgebraParams = HAMILTON,
                  compare_printed: bool = True) -> IdentityReport:
    """G_{n+s} G_{n-s} - G_n^2 against the closed form, all exact.

    ``details`` carries the Binet brute-force product (same difference built
    from Binet quaternions over Q(sqrt D)) and, when requested, the printed
    right side.
    """
    if not (1 <= s <= n):
        raise PreconditionError("Catalan needs 1 <= s <= n")
    xf = as_fraction(x)
    G = lambda k: _recurrence_quat(hx, xf, k, algebra)  # noqa: E731
    left = qmul(G(n + s), G(n - s)) - qmul(G(n), G(n))
    right = catalan_closed_form(hx, xf, n, s, algebra)
    B = lambda k: binet_hx_quat(hx, xf, k, algebra)  # noqa: E731
    binet_diff = qmul(B(n + s), B(n - s)) - qmul(B(n), B(n))
    params = {"h": str(hx.h), "x": str(xf), "p": hx.p, "q": hx.q, "n": n, "s": s,
              "gamma1": str(algebra.gamma1), "gamma2": str(algebra.gamma2)}
    rep = IdentityReport("thm48" if s != 1 else "thm49", params, left, right)
    rep.details["binet_product"] = binet_diff
    rep.details["binet_matches"] = binet_diff == left
    if compare_printed:
        printed = catalan_printed_rhs(hx, xf, n, s, algebra)
        rep.details["printed_rhs"] = printed
        rep.details["printed_matches"] = printed == left
    return rep


def cassini_check(hx: HxParams, x, n: int, algebra: AlgebraParams = HAMILTON,
                  compare_printed: bool = True) -> IdentityReport:
    if n < 1:
        raise PreconditionError("Cassini needs n >= 1")
    return catalan_check(hx, x, n, 1, algebra, compare_printed)

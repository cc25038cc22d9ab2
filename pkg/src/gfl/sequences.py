"""Second-order integer recurrences d_n = a d_{n-1} + b d_{n-2} and identity checkers.

Conventions used throughout the package:

* ``f``/``l`` are the Fibonacci and Lucas numbers.
* ``gfl(p, q, n)`` is the generalized Fibonacci-Lucas number with seeds
  ``g_0 = p + 2q`` and ``g_1 = q``.
* ``x``/``y`` are the (1,a,0,1)- and (1,a,2,1)-numbers.
* ``gen_s(a, p, q, n)`` is the (1,a,p+2q,q)-number (recurrence seeds), while
  ``s_closed(a, p, q, n) = p*x_{n-1} + q*y_n`` is the closed-form reading.
  The two agree only for a == 1 (or p == 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Any

from .exact_arith import QuadExt, is_rational_square

RECURRENCE = "recurrence"
SIGN_FLIP = "sign-flip"


class PreconditionError(ValueError):
    pass


class UnsupportedConventionError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceSpec:
    a: int
    b: int
    x0: int
    x1: int

    def __getitem__(self, n: int):
        return term(self, n)

    def terms(self, count: int) -> list[int]:
        out = [self.x0, self.x1]
        while len(out) < count:
            out.append(self.a * out[-1] + self.b * out[-2])
        return out[:count]


FIBONACCI = SequenceSpec(1, 1, 0, 1)
LUCAS = SequenceSpec(1, 1, 2, 1)


def x_spec(a: int) -> SequenceSpec:
    return SequenceSpec(1, a, 0, 1)


def y_spec(a: int) -> SequenceSpec:
    return SequenceSpec(1, a, 2, 1)


@dataclass(frozen=True)
class GFLParams:
    p: int
    q: int


@dataclass
class IdentityReport:
    identity: str
    params: dict[str, Any]
    left: Any
    right: Any
    passed: bool = field(init=False)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.left == self.right)

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity,
            "params": dict(self.params),
            "left": _jsonable(self.left),
            "right": _jsonable(self.right),
            "passed": self.passed,
            **({"details": {k: _jsonable(v) for k, v in self.details.items()}} if self.details else {}),
        }


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


# ---------------------------------------------------------------------------
# term access


def term(spec: SequenceSpec, n: int, mode: str = RECURRENCE):
    """n-th term; negative n via backward recursion or the sign-flip rule.

    ``mode=SIGN_FLIP`` applies x_{-n} = (-1)^{n+1} x_n and only exists for
    specs of shape (1, a, 0, 1). It disagrees with backward recursion when
    a != 1 (x_{-1} = 1 versus 1/a).
    """
    if n >= 0:
        prev, cur = spec.x0, spec.x1
        if n == 0:
            return prev
        for _ in range(n - 1):
            prev, cur = cur, spec.a * cur + spec.b * prev
        return cur
    if mode == SIGN_FLIP:
        if not (spec.a == 1 and spec.x0 == 0 and spec.x1 == 1):
            raise UnsupportedConventionError(
                f"sign-flip rule for negative indices is only defined for (1,a,0,1) specs, got {spec}"
            )
        return (-1) ** (-n + 1) * term(spec, -n)
    if mode != RECURRENCE:
        raise ValueError(f"unknown mode {mode!r}")
    if spec.b == 0:
        raise PreconditionError("backward recursion needs b != 0")
    # walk down: d_{k-2} = (d_k - a d_{k-1}) / b
    hi, lo = Fraction(spec.x1), Fraction(spec.x0)
    for _ in range(-n):
        hi, lo = lo, (hi - spec.a * lo) / spec.b
    return lo


def _mat_mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def term_fast(spec: SequenceSpec, n: int) -> int:
    """n-th term by binary powering of the companion matrix [[a, b], [1, 0]]."""
    if n < 0:
        raise PreconditionError("term_fast needs n >= 0")
    result = (1, 0, 0, 1)
    base = (spec.a, spec.b, 1, 0)
    k = n
    while k:
        if k & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        k >>= 1
    # M^n (d_1, d_0)^T = (d_{n+1}, d_n)^T
    return result[2] * spec.x1 + result[3] * spec.x0


def fib(n: int) -> int:
    return term(FIBONACCI, n, SIGN_FLIP) if n < 0 else term(FIBONACCI, n)


def luc(n: int) -> int:
    return term(LUCAS, n)


@lru_cache(maxsize=4096)
def _gfl_prefix(p: int, q: int, count: int) -> tuple[int, ...]:
    return tuple(SequenceSpec(1, 1, p + 2 * q, q).terms(count))


def gfl(p: int, q: int, n: int) -> int:
    if n < 0:
        raise PreconditionError("gfl is defined for n >= 0")
    # prefixes grow in powers of two so one table serves every n below it
    return _gfl_prefix(p, q, max(16, 1 << (n + 1).bit_length()))[n]


def gfl_closed(p: int, q: int, n: int) -> int:
    """g_n = p*f_{n-1} + q*l_n, with f_{-1} = 1 at n = 0."""
    return p * fib(n - 1) + q * luc(n)


def gen_s(a: int, p: int, q: int, n: int) -> int:
    if a < 1:
        raise PreconditionError("gen_s needs a >= 1")
    if n < 0:
        raise PreconditionError("gen_s is defined for n >= 0")
    return term(SequenceSpec(1, a, p + 2 * q, q), n)


def s_closed(a: int, p: int, q: int, n: int) -> int:
    """p*x_{n-1} + q*y_n; at n = 0 the sign-flip rule gives x_{-1} = 1."""
    if a < 1:
        raise PreconditionError("s_closed needs a >= 1")
    x_prev = term(x_spec(a), n - 1, SIGN_FLIP)
    return p * x_prev + q * term(y_spec(a), n)


# ---------------------------------------------------------------------------
# classical Fibonacci/Lucas identities

_PROP21 = {
    # id: (needs n >= 1, uses (m, p) instead of n, left, right)
    "i": (False, False, lambda n: fib(n) ** 2 + fib(n + 1) ** 2, lambda n: fib(2 * n + 1)),
    "ii": (True, False, lambda n: fib(n + 1) ** 2 - fib(n - 1) ** 2, lambda n: fib(2 * n)),
    "iii": (True, False, lambda n: luc(n) ** 2 - fib(n) ** 2, lambda n: 4 * fib(n - 1) * fib(n + 1)),
    "iv": (False, False, lambda n: luc(n) ** 2 + luc(n + 1) ** 2, lambda n: 5 * fib(2 * n + 1)),
    "v": (True, False, lambda n: luc(n) ** 2, lambda n: luc(2 * n) + 2 * (-1) ** n),
    "vi": (True, False, lambda n: fib(n + 1) + fib(n - 1), lambda n: luc(n)),
    "vii": (False, False, lambda n: luc(n) + luc(n + 2), lambda n: 5 * fib(n + 1)),
    "viii": (False, False, lambda n: fib(n) + fib(n + 4), lambda n: 3 * fib(n + 2)),
    "ix": (False, True, lambda m, p: fib(m) * luc(m + p), lambda m, p: fib(2 * m + p) + (-1) ** (m + 1) * fib(p)),
    "x": (False, True, lambda m, p: fib(m + p) * luc(m), lambda m, p: fib(2 * m + p) + (-1) ** m * fib(p)),
    "xi": (False, True, lambda m, p: fib(m) * fib(m + p), lambda m, p: Fraction(luc(2 * m + p) + (-1) ** (m + 1) * luc(p), 5)),
    "xii": (False, True, lambda m, p: luc(m) * luc(p) + 5 * fib(m) * fib(p), lambda m, p: 2 * luc(m + p)),
}

PROP21_IDS = tuple(_PROP21)
PROP21_TWO_INDEX = tuple(k for k, v in _PROP21.items() if v[1])


def check_prop21(identity: str, n: int, p: int | None = None) -> IdentityReport:
    """Check one item of the classical Fibonacci/Lucas list.

    Single-index items take ``n``; the two-index items (ix)-(xii) read ``n``
    as m and need ``p``.
    """
    if identity not in _PROP21:
        raise ValueError(f"unknown identity {identity!r}; expected one of {PROP21_IDS}")
    positive, two_index, lhs, rhs = _PROP21[identity]
    if two_index:
        if p is None:
            raise PreconditionError(f"identity {identity} needs m and p")
        if n < 0 or p < 0:
            raise PreconditionError("indices must be natural numbers")
        return IdentityReport(f"prop21.{identity}", {"m": n, "p": p}, lhs(n, p), rhs(n, p))
    if n < (1 if positive else 0):
        raise PreconditionError(f"identity {identity} needs n >= {1 if positive else 0}")
    return IdentityReport(f"prop21.{identity}", {"n": n}, lhs(n), rhs(n))


def cassini_gfl(p: int, q: int, n: int) -> IdentityReport:
    if n < 2:
        raise PreconditionError("Cassini for g-numbers needs n >= 2")
    left = gfl(p, q, n + 1) * gfl(p, q, n - 1) - gfl(p, q, n) ** 2
    right = (-1) ** (n - 1) * (p * p + 5 * q * q + 5 * p * q)
    return IdentityReport("prop33", {"p": p, "q": q, "n": n}, left, right)


def convolution(p: int, q: int, n: int) -> int:
    """sum_{k=1}^{n} g_k g_{n-k}; the k = n term uses g_0 = p + 2q."""
    if n < 1:
        raise PreconditionError("convolution needs n >= 1")
    g = SequenceSpec(1, 1, p + 2 * q, q).terms(n + 1)
    return sum(g[k] * g[n - k] for k in range(1, n + 1))


def prop32_rhs(p: int, q: int, n: int) -> int:
    P, Q = p * p + 5 * q * q, p * q
    return (
        n * gfl(10 * Q, P, n)
        + gfl(P - 10 * Q, 5 * Q, n)
        + gfl(P, 0, n - 1)
        - n * gfl(0, p * p, n - 1)
    )


def check_prop32(p: int, q: int, n: int) -> IdentityReport:
    if n < 2:
        raise PreconditionError("prop32 needs n >= 2")
    return IdentityReport("prop32", {"p": p, "q": q, "n": n}, 5 * convolution(p, q, n), prop32_rhs(p, q, n))


# ---------------------------------------------------------------------------
# (1,a,0,1)- and (1,a,2,1)-numbers


def check_prop51(identity: str, a: int, n: int, l: int) -> IdentityReport:
    if a < 1:
        raise PreconditionError("a must be >= 1")
    if n < 0 or l < 0:
        raise PreconditionError("n and l must be natural numbers")
    X, Y = x_spec(a), y_spec(a)
    x = lambda k: term(X, k)  # noqa: E731
    y = lambda k: term(Y, k)  # noqa: E731
    sign = (-a) ** n
    if identity == "i":
        left, right = y(n) * y(n + l), y(2 * n + l) + sign * y(l)
    elif identity == "ii":
        left, right = x(n) * y(n + l), x(2 * n + l) - sign * x(l)
    elif identity == "iii":
        left, right = x(n + l) * y(n), x(2 * n + l) + sign * x(l)
    elif identity == "iv":
        left, right = (1 + 4 * a) * x(n) * x(n + l), y(2 * n + l) - sign * y(l)
    else:
        raise ValueError(f"unknown identity {identity!r}; expected i..iv")
    return IdentityReport(f"prop51.{identity}", {"a": a, "n": n, "l": l}, left, right)


def check_remark52(a: int, p: int, q: int, n: int) -> IdentityReport:
    """p x_{n+1} + q y_n = s_n^{ap,q} + s_{n+1}^{p,0}.

    Evaluated with the closed-form s; ``details['recurrence_right']`` holds the
    same right side built from the recurrence-seeded ``gen_s``.
    """
    if n < 1:
        raise PreconditionError("remark52 needs n >= 1")
    left = p * term(x_spec(a), n + 1) + q * term(y_spec(a), n)
    right = s_closed(a, a * p, q, n) + s_closed(a, p, 0, n + 1)
    rep = IdentityReport("remark52", {"a": a, "p": p, "q": q, "n": n}, left, right)
    rep.details["recurrence_right"] = gen_s(a, a * p, q, n) + gen_s(a, p, 0, n + 1)
    return rep


# ---------------------------------------------------------------------------
# Binet forms


def golden_roots(a: int = 1):
    """Roots (1 +- sqrt(1+4a))/2 of r^2 - r - a.

    When 1+4a is a perfect square (a = 2, 6, 12, ...) the roots are rational
    and come back as Fractions; otherwise they live in Q(sqrt(1+4a)).
    """
    half = Fraction(1, 2)
    d = 1 + 4 * a
    if is_rational_square(d):
        root = isqrt(d)
        return Fraction(1 + root, 2), Fraction(1 - root, 2)
    return QuadExt(half, half, d), QuadExt(half, -half, d)


def binet_scalar(kind: str, a: int, n: int):
    if a < 1:
        raise PreconditionError("a must be >= 1")
    if n < 0:
        raise PreconditionError("n must be >= 0")
    alpha, beta = golden_roots(a)
    if kind in ("x", "x-sequence"):
        return (alpha ** n - beta ** n) / (alpha - beta)
    if kind in ("y", "y-sequence"):
        return alpha ** n + beta ** n
    raise ValueError(f"unknown kind {kind!r}")

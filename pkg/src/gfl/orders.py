"""Integer lattices in quaternion coordinates: Hermite normal form, membership, closure checks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .quaternions import AlgebraParams, Quaternion, qmul
from .sequences import IdentityReport, PreconditionError, SequenceSpec, gen_s, s_closed


@dataclass(frozen=True)
class IntegerLattice:
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    dim: int = 4

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return member(self, v) is not None


def hnf(generators: Iterable[Sequence[int]], dim: int = 4) -> IntegerLattice:
    """Row-style Hermite normal form by exact integer row reduction.

    Rows are echelon with positive pivots; entries above a pivot lie in
    [0, pivot).
    """
    rows = [[int(c) for c in r] for r in generators]
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"generator {r} does not have {dim} coordinates")
    rows = [r for r in rows if any(r)]
    top = 0
    pivots = []
    for col in range(dim):
        while True:
            nz = [i for i in range(top, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            pivot_row = rows[top]
            clean = True
            for i in range(top + 1, len(rows)):
                if rows[i][col]:
                    f = rows[i][col] // pivot_row[col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
                    clean = clean and rows[i][col] == 0
            if clean:
                break
        if top >= len(rows) or rows[top][col] == 0:
            continue
        if rows[top][col] < 0:
            rows[top] = [-a for a in rows[top]]
        pivot_row = rows[top]
        for i in range(top):
            f = rows[i][col] // pivot_row[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(col)
        top += 1
    return IntegerLattice(tuple(tuple(r) for r in rows[:top]), tuple(pivots), dim)


def member(lattice: IntegerLattice, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the HNF basis, or None if ``v`` is not in the lattice."""
    if len(v) != lattice.dim:
        raise ValueError(f"vector has {len(v)} coordinates, lattice dim is {lattice.dim}")
    rest = [int(c) for c in v]
    if any(c != v_c for c, v_c in zip(rest, v)):
        return None  # non-integral coordinates
    coeffs = []
    for row, col in zip(lattice.basis, lattice.pivots):
        if any(rest[j] for j in range(col)):
            return None
        k, r = divmod(rest[col], row[col])
        if r:
            return None
        if k:
            rest = [a - k * b for a, b in zip(rest, row)]
        coeffs.append(k)
    if any(rest):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# order closure checks

PARAM_UNITS = ((1, 0), (0, 1))


def _scaled_quaternion_coords(kind: str, a: int, p: int, q: int, n: int) -> tuple[int, ...]:
    if kind == "gfl":
        return tuple(5 * gen_s(1, p, q, n + k) for k in range(4))
    if kind == "recurrence":
        return tuple((1 + 4 * a) * gen_s(a, p, q, n + k) for k in range(4))
    if kind == "closed":
        return tuple((1 + 4 * a) * s_closed(a, p, q, n + k) for k in range(4))
    raise ValueError(f"unknown generator kind {kind!r}")


def closure_generators(kind: str, a: int = 1) -> list[tuple[int, ...]]:
    """{1} together with the scaled quaternions for n in {1, 2}, (p, q) in {(1,0), (0,1)}."""
    gens = [(1, 0, 0, 0)]
    for n in (1, 2):
        for p, q in PARAM_UNITS:
            gens.append(_scaled_quaternion_coords(kind, a, p, q, n))
    return gens


@lru_cache(maxsize=256)
def _window_non_members(kind: str, a: int, window: tuple[int, ...], box: tuple[tuple[int, int], ...]):
    lattice = hnf(closure_generators(kind, a))
    scale = 5 if kind == "gfl" else 1 + 4 * a
    spec_a = 1 if kind == "gfl" else a
    top = max(window) + 4 if window else 0
    missing = []
    for p, q in box:
        if kind == "closed":
            seq = [s_closed(a, p, q, k) for k in range(top)]
        else:
            seq = SequenceSpec(1, spec_a, p + 2 * q, q).terms(top)
        for n in window:
            v = tuple(scale * c for c in seq[n:n + 4])
            if member(lattice, v) is None:
                missing.append({"n": n, "p": p, "q": q, "coords": v})
    return lattice, len(window) * len(box), missing


def _closure_report(identity: str, kind: str, a: int, algebra: AlgebraParams,
                    window: Iterable[int], box: Iterable[tuple[int, int]]) -> IdentityReport:
    if not algebra.is_integral():
        raise ValueError("order checks need integral gamma1, gamma2")
    window = tuple(window)
    box = tuple(tuple(b) for b in box)
    if not window or not box:
        raise PreconditionError("window and box must be nonempty")
    if min(window) < 1:
        raise PreconditionError("generator indices start at n = 1")
    lattice, n_checked, missing = _window_non_members(kind, a, window, box)
    gens = [Quaternion(g, algebra) for g in closure_generators(kind, a)]
    bad_products = []
    for (i, x), (j, y) in product(enumerate(gens), repeat=2):
        prod = qmul(x, y)
        coords = tuple(int(c) for c in prod.coords)
        if member(lattice, coords) is None:
            bad_products.append({"left": i, "right": j, "product": coords})
    params = {"a": a, "gamma1": int(algebra.gamma1), "gamma2": int(algebra.gamma2),
              "window": [min(window), max(window)], "box_size": len(box)}
    failures = [("member", m["n"], m["p"], m["q"]) for m in missing]
    failures += [("product", b["left"], b["right"]) for b in bad_products]
    rep = IdentityReport(identity, params, failures, [])
    rep.details.update({
        "generators": [g.coords for g in gens],
        "hnf_basis": lattice.basis,
        "rank": lattice.rank,
        "full_rank": lattice.rank == 4,
        "window_members_checked": n_checked,
        "window_non_members": missing,
        "products_checked": len(gens) ** 2,
        "products_outside_lattice": bad_products,
    })
    return rep


def remark41_closure(algebra: AlgebraParams, window: Iterable[int], box: Iterable[tuple[int, int]]) -> IdentityReport:
    """Lattice {1} + 5*span(G_n^{p,q}): window membership and closure of generator products."""
    return _closure_report("remark41", "gfl", 1, algebra, window, box)


def prop54_closure(a: int, algebra: AlgebraParams, window: Iterable[int], box: Iterable[tuple[int, int]],
                   reading: str = "recurrence") -> IdentityReport:
    """Same scheme with (1+4a)*S_n^{p,q}.

    ``reading="closed"`` builds S_n from p*x_{n-1} + q*y_n instead of the
    recurrence seeds p+2q, q.
    """
    if a < 1:
        raise PreconditionError("a must be >= 1")
    return _closure_report("prop54", reading, a, algebra, window, box)


def _six_term_rhs(s, a: int, p: int, q: int, p2: int, q2: int, n: int, m: int) -> int:
    c = 1 + 4 * a
    sg = (-a) ** n
    return c * (
        s(a, c * p * q2, c * q * q2, m + n)
        + s(a, sg * c * p2 * q, sg * c * q * q2, m - n)
        + s(a, sg * c * p * q2, (-a) ** (n + 1) * p * p2, m - n + 1)
        + s(a, sg * c * p * q2, 0, m - n + 1)
        + s(a, a * c * p2 * q, p * p2, m + n - 2)
        + s(a, a * c * p2 * q, 0, m + n - 1)
    )


def prop54_scalar_decomp(a: int, p: int, q: int, p2: int, q2: int, n: int, m: int) -> IdentityReport:
    """(1+4a)s_n^{p,q} * (1+4a)s_m^{p',q'} against the printed six-term decomposition.

    Primary sides use the recurrence-seeded s; ``details`` repeats the
    comparison with the closed-form reading p*x_{n-1} + q*y_n.
    """
    if a < 1:
        raise PreconditionError("a must be >= 1")
    if not (1 <= n < m):
        raise PreconditionError("need 1 <= n < m")
    c = 1 + 4 * a
    left = c * gen_s(a, p, q, n) * c * gen_s(a, p2, q2, m)
    right = _six_term_rhs(gen_s, a, p, q, p2, q2, n, m)
    params = {"a": a, "p": p, "q": q, "p2": p2, "q2": q2, "n": n, "m": m}
    rep = IdentityReport("prop54.decomposition", params, left, right)
    closed_left = c * s_closed(a, p, q, n) * c * s_closed(a, p2, q2, m)
    closed_right = _six_term_rhs(s_closed, a, p, q, p2, q2, n, m)
    rep.details.update({"closed_left": closed_left, "closed_right": closed_right,
                        "closed_passed": closed_left == closed_right})
    return rep

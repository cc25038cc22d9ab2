"""Command-line front end: sequence queries, identity sweeps, order checks and the codec.

Every ``verify`` and ``order`` command prints one JSON SweepReport with the
keys ``command``, ``ranges``, ``total``, ``passed``, ``failures``,
``errata`` and ``wall_time``. Exit status is 0 when ``failures`` is empty,
1 otherwise, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable

from . import coding, orders, quaternions as Q, sequences as S, series
from .exact_arith import parse_polynomial

DEFAULT_H = ("0,1", "1,2", "0,0,1")
DEFAULT_X = "1,2,1/2,-3"
DEFAULT_GAMMA = "-1,1,2,-3"


# ---------------------------------------------------------------------------
# parsing helpers


def parse_range(text: str) -> list[int]:
    """``lo..hi`` (inclusive), a single integer, or a comma-separated list."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t.strip()]


def parse_fractions(text: str) -> list[Fraction]:
    return [Fraction(t.strip()) for t in text.split(",") if t.strip()]


def parse_gammas(text: str) -> list[Fraction]:
    if ".." in text:
        vals = [Fraction(v) for v in parse_range(text)]
    else:
        vals = parse_fractions(text)
    return [v for v in vals if v != 0]


_NEGATIVE_VALUE = re.compile(r"^-[\d/.,\-]+$")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "-5..5" or "-1,2" as an option flag
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


# ---------------------------------------------------------------------------
# sweep machinery


@dataclass
class SweepReport:
    command: str
    ranges: dict[str, Any]
    total: int = 0
    failures: list[dict] = field(default_factory=list)
    errata: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        d = asdict(self)
        d["passed"] = self.passed
        keys = ("command", "ranges", "total", "passed", "failures", "errata", "wall_time")
        return json.dumps({k: d[k] for k in keys}, indent=2, default=str)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GFL_THREADS", "1")))
    except ValueError:
        return 1


def _run_all(func: Callable, items: Iterable) -> list:
    items = list(items)
    workers = _threads()
    if workers == 1:
        return [func(*it) for it in items]
    # executor.map keeps submission order, so reports stay deterministic
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda it: func(*it), items))


def _collect(report: SweepReport, results: Iterable[S.IdentityReport]):
    for r in results:
        report.total += 1
        if not r.passed:
            report.failures.append(r.as_dict())


def _erratum(report: SweepReport, key: str, description: str, count: int, witness: S.IdentityReport | dict | None):
    if not count:
        return
    if isinstance(witness, S.IdentityReport):
        witness = witness.as_dict()
    report.errata.append({"id": key, "description": description, "occurrences": count, "witness": witness})


# ---------------------------------------------------------------------------
# verify commands


def _verify_prop21(args, rep):
    ns = parse_range(args.n)
    ps = parse_range(args.p)
    items = []
    for ident in S.PROP21_IDS:
        if ident in S.PROP21_TWO_INDEX:
            items += [(ident, m, p) for m in ns for p in ps if m >= 0 and p >= 0]
        else:
            low = 0 if ident in ("i", "iv", "vii", "viii") else 1
            items += [(ident, n, None) for n in ns if n >= low]
    _collect(rep, _run_all(S.check_prop21, items))


def _verify_prop31(args, rep):
    items = list(product(parse_range(args.p), parse_range(args.q), [args.order]))
    _collect(rep, _run_all(series.check_prop31, items))


def _verify_prop32(args, rep):
    ps, qs, ns = parse_range(args.p), parse_range(args.q), [n for n in parse_range(args.n) if n >= 2]
    _collect(rep, _run_all(S.check_prop32, list(product(ps, qs, ns))))
    if ns:
        readings = _run_all(series.check_prop32_series, [(p, q, max(ns)) for p, q in product(ps, qs)])
        off = [r for r in readings if not r.details["a_squared_matches_closed_form"]]
        _erratum(rep, "prop32.coefficient-range",
                 "coefficient of z^n in A(z)^2 sums k = 1..n-1; the closed form matches the sum over k = 1..n "
                 "(which includes g_n g_0), not the A^2 coefficient",
                 len(off), off[0] if off else None)


def _verify_prop33(args, rep):
    items = list(product(parse_range(args.p), parse_range(args.q), [n for n in parse_range(args.n) if n >= 2]))
    _collect(rep, _run_all(S.cassini_gfl, items))


def _verify_prop34(args, rep):
    items = list(product(parse_range(args.p), parse_range(args.q), [n for n in parse_range(args.n) if n >= 2]))
    results = _run_all(coding.check_prop34, items)
    _collect(rep, results)
    for r in results:
        if r.details.get("matrix_recurrence") is False:
            rep.failures.append({**r.as_dict(), "identity": "prop34.recurrence"})


def _algebras(args) -> list[Q.AlgebraParams]:
    return [Q.AlgebraParams(g1, g2) for g1, g2 in product(parse_gammas(args.gamma1), parse_gammas(args.gamma2))]


def _hx_params(args) -> list[Q.HxParams]:
    hs = [parse_polynomial(h) for h in (args.h or DEFAULT_H)]
    return [Q.HxParams(h, p, q) for h in hs for p in parse_range(args.p) for q in parse_range(args.q)]


def _verify_prop42(args, rep):
    items = [(p, q, alg, args.order) for p, q in product(parse_range(args.p), parse_range(args.q))
             for alg in _algebras(args)]
    _collect(rep, _run_all(series.check_prop42, items))


def _verify_prop51(args, rep):
    items = [(i, a, n, l) for i in ("i", "ii", "iii", "iv") for a in parse_range(args.a)
             for n in parse_range(args.n) for l in parse_range(args.l)]
    _collect(rep, _run_all(S.check_prop51, items))


def _verify_remark52(args, rep):
    items = [(a, p, q, n) for a in parse_range(args.a) for p in parse_range(args.p)
             for q in parse_range(args.q) for n in parse_range(args.n) if n >= 1]
    results = _run_all(S.check_remark52, items)
    _collect(rep, results)
    off = [r for r in results if r.details["recurrence_right"] != r.left]
    _erratum(rep, "remark52.seeds",
             "the identity holds for s_n = p*x_{n-1} + q*y_n but not for the (1,a,p+2q,q) recurrence seeds when a != 1",
             len(off), off[0] if off else None)


def _remark53(a, p, q, n):
    zero = Q.zero_test(Q.build_Sn(a, p, q, n))
    return S.IdentityReport("remark53", {"a": a, "p": p, "q": q, "n": n}, zero, p == 0 and q == 0)


def _verify_remark53(args, rep):
    items = list(product(parse_range(args.a), parse_range(args.p), parse_range(args.q), parse_range(args.n)))
    _collect(rep, _run_all(_remark53, items))


def _thm45(hx, x, order, alg):
    return series.check_thm45(hx, x, order, alg)


def _verify_thm45(args, rep):
    items = [(hx, x, args.order, alg) for hx in _hx_params(args) for x in parse_fractions(args.x)
             for alg in _algebras(args)]
    _collect(rep, _run_all(_thm45, items))


def _thm46(hx, x, n):
    return S.IdentityReport("thm46", {"h": str(hx.h), "x": str(x), "p": hx.p, "q": hx.q, "n": n},
                            Q.binet_hx(hx, x, n), Q.hx_value(hx, x, n))


def _verify_thm46(args, rep):
    items = [(hx, x, n) for hx in _hx_params(args) for x in parse_fractions(args.x) for n in parse_range(args.n)]
    _collect(rep, _run_all(_thm46, items))
    off = []
    for hx, x, n in items:
        printed = Q.binet_hx_printed(hx, x, n)
        if printed != Q.hx_value(hx, x, n):
            off.append(S.IdentityReport("thm46.printed", {"h": str(hx.h), "x": str(x), "p": hx.p, "q": hx.q, "n": n},
                                        printed, Q.hx_value(hx, x, n)))
    _erratum(rep, "thm46.printed",
             "printed Binet form gives g_1 = (p+2q)h(x) - q instead of the seed q; the root coefficients are swapped",
             len(off), off[0] if off else None)


def _thm47(hx, x, n, alg):
    return S.IdentityReport("thm47", {"h": str(hx.h), "x": str(x), "p": hx.p, "q": hx.q, "n": n,
                                      "gamma1": str(alg.gamma1), "gamma2": str(alg.gamma2)},
                            Q.binet_hx_quat(hx, x, n, alg), Q.hx_quat_value(hx, x, n, alg))


def _verify_thm47(args, rep):
    items = [(hx, x, n, alg) for hx in _hx_params(args) for x in parse_fractions(args.x)
             for n in parse_range(args.n) for alg in _algebras(args)]
    _collect(rep, _run_all(_thm47, items))
    off = 0
    witness = None
    # quaternion coordinates do not involve the multiplication table, so one algebra suffices
    for hx, x, n, alg in [it for it in items if it[3] == items[0][3]] if items else []:
        printed = Q.binet_hx_quat(hx, x, n, alg, printed=True)
        expected = Q.hx_quat_value(hx, x, n, alg)
        if printed != expected:
            off += 1
            if witness is None:
                witness = S.IdentityReport("thm47.printed", {"h": str(hx.h), "x": str(x), "p": hx.p, "q": hx.q, "n": n},
                                           printed, expected)
    _erratum(rep, "thm47.printed", "printed R1, R2 inherit the swapped Binet coefficients", off, witness)


def _catalan_items(args, cassini: bool):
    for hx in _hx_params(args):
        for x in parse_fractions(args.x):
            for alg in _algebras(args):
                for n in parse_range(args.n):
                    if n < 1:
                        continue
                    for s in ([1] if cassini else range(1, n + 1)):
                        yield hx, x, n, s, alg


def _catalan(hx, x, n, s, alg):
    return Q.catalan_check(hx, x, n, s, alg)


def _verify_catalan(args, rep, cassini=False):
    results = _run_all(_catalan, list(_catalan_items(args, cassini)))
    _collect(rep, results)
    for r in results:
        if not r.details["binet_matches"]:
            rep.failures.append({**r.as_dict(), "identity": r.identity + ".binet"})
    off = [r for r in results if not r.details["printed_matches"]]
    if cassini:
        desc = "printed right side has R1R2 in the second term; the product there is R2R1"
    else:
        desc = "printed right side uses r^2 instead of r^{2s} and R1R2 in both terms (second term is R2R1)"
    _erratum(rep, "thm49.printed" if cassini else "thm48.printed", desc, len(off), off[0] if off else None)


def _verify_table(args, rep):
    for alg in _algebras(args):
        bad = Q.associativity_failures(alg)
        rep.total += 64
        for t in bad:
            rep.failures.append({"identity": "table.associativity", "params": {"triple": t, "gamma1": str(alg.gamma1),
                                                                                "gamma2": str(alg.gamma2)}})
        printed_bad = Q.associativity_failures(alg, printed=True)
        _erratum(rep, "table.e3-squared", "printed e3^2 = gamma1*gamma2 breaks associativity; e1e2e1e2 forces -gamma1*gamma2",
                 len(printed_bad), {"gamma1": str(alg.gamma1), "gamma2": str(alg.gamma2), "triples": printed_bad[:8]})


VERIFY = {
    "prop21": (_verify_prop21, {"n": "0..50", "p": "0..50"}),
    "prop31": (_verify_prop31, {"p": "-5..5", "q": "-5..5", "order": 64}),
    "prop32": (_verify_prop32, {"p": "-5..5", "q": "-5..5", "n": "2..100"}),
    "prop33": (_verify_prop33, {"p": "-10..10", "q": "-10..10", "n": "2..200"}),
    "prop34": (_verify_prop34, {"p": "-10..10", "q": "-10..10", "n": "2..200"}),
    "prop42": (_verify_prop42, {"p": "-5..5", "q": "-5..5", "order": 16, "gamma1": DEFAULT_GAMMA, "gamma2": DEFAULT_GAMMA}),
    "prop51": (_verify_prop51, {"a": "1..10", "n": "0..30", "l": "0..30"}),
    "remark52": (_verify_remark52, {"a": "1..10", "p": "-3..3", "q": "-3..3", "n": "1..50"}),
    "remark53": (_verify_remark53, {"a": "1..5", "p": "-5..5", "q": "-5..5", "n": "1..30"}),
    "thm45": (_verify_thm45, {"h": None, "x": DEFAULT_X, "p": "-3..3", "q": "-3..3", "order": 16,
                              "gamma1": "-1", "gamma2": "-1"}),
    "thm46": (_verify_thm46, {"h": None, "x": DEFAULT_X, "p": "-3..3", "q": "-3..3", "n": "0..40"}),
    "thm47": (_verify_thm47, {"h": None, "x": DEFAULT_X, "p": "-3..3", "q": "-3..3", "n": "0..40",
                              "gamma1": "-1", "gamma2": "-1"}),
    "catalan": (_verify_catalan, {"h": None, "x": DEFAULT_X, "p": "-1..1", "q": "-1..1", "n": "1..8",
                                  "gamma1": "-1", "gamma2": "-1"}),
    "cassini-hx": (lambda a, r: _verify_catalan(a, r, cassini=True),
                   {"h": None, "x": DEFAULT_X, "p": "-3..3", "q": "-3..3", "n": "1..20",
                    "gamma1": "-1", "gamma2": "-1"}),
    "table": (_verify_table, {"gamma1": DEFAULT_GAMMA, "gamma2": DEFAULT_GAMMA}),
}


# ---------------------------------------------------------------------------
# order commands


def _order(args) -> SweepReport:
    window = parse_range(args.window)
    box_vals = parse_range(args.box)
    box = list(product(box_vals, box_vals))
    algebras = [Q.AlgebraParams(g1, g2) for g1, g2 in product(parse_gammas(args.gamma1), parse_gammas(args.gamma2))]
    rep = SweepReport(f"order {args.which}", {"a": args.a, "gamma1": args.gamma1, "gamma2": args.gamma2,
                                               "window": args.window, "box": args.box})
    if args.which == "remark41":
        results = [orders.remark41_closure(alg, window, box) for alg in algebras]
    else:
        results = [orders.prop54_closure(a, alg, window, box, reading=args.reading)
                   for a in parse_range(args.a) for alg in algebras]
    _collect(rep, results)
    low_rank = [r for r in results if not r.details["full_rank"]]
    _erratum(rep, f"{args.which}.rank",
             "the scaled quaternions span a rank-2 module, so the lattice with 1 has rank 3 and cannot be an order",
             len(low_rank), {"params": low_rank[0].params, "hnf_basis": low_rank[0].details["hnf_basis"]} if low_rank else None)
    if args.which == "prop54":
        decomp = [orders.prop54_scalar_decomp(a, p, q, p2, q2, n, m)
                  for a in parse_range(args.a) if a <= 3 for p, q, p2, q2 in product(range(-3, 4), repeat=4)
                  for m in range(2, 9) for n in range(1, m)]
        off = [r for r in decomp if not r.passed]
        _erratum(rep, "prop54.decomposition",
                 f"six-term decomposition of (1+4a)s_n (1+4a)s_m fails on {len(off)} of {len(decomp)} sampled cases",
                 len(off), off[0] if off else None)
    return rep


# ---------------------------------------------------------------------------
# codec commands


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _code(args) -> int:
    data = _read_input(args.input)
    if args.which == "encode":
        cfg = coding.CodecConfig(args.p, args.q, args.n, args.m)
        _write_output(args.output, coding.encode_stream(data, cfg))
        return 0
    expected = None
    if any(v is not None for v in (args.p, args.q, args.n, args.m)):
        default = coding.CodecConfig()
        expected = coding.CodecConfig(*(d if v is None else v for v, d in (
            (args.p, default.p), (args.q, default.q), (args.n, default.n), (args.m, default.m))))
    try:
        result = coding.decode_stream(data, expected)
    except coding.FrameError as exc:
        print(json.dumps({"error": "frame", "message": str(exc), "offset": exc.offset}), file=sys.stderr)
        return 1
    if not result.clean:
        print(json.dumps({"error": "corruption", "corrupt_blocks": result.corrupt_blocks}), file=sys.stderr)
        return 1
    _write_output(args.output, result.payload)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    seq = sub.add_parser("seq", help="sequence terms")
    seq_sub = seq.add_subparsers(dest="which", required=True)
    t = seq_sub.add_parser("term", help="n-th (a,b,x0,x1)-number")
    for name in ("a", "b", "x0", "x1", "n"):
        t.add_argument(f"--{name}", type=int, required=True)
    t.add_argument("--mode", choices=(S.RECURRENCE, S.SIGN_FLIP), default=S.RECURRENCE)
    g = seq_sub.add_parser("gfl", help="generalized Fibonacci-Lucas number g_n^{p,q}")
    for name in ("p", "q", "n"):
        g.add_argument(f"--{name}", type=int, required=True)
    s = seq_sub.add_parser("s", help="(1,a,p+2q,q)-number s_n^{p,q}")
    for name in ("a", "p", "q", "n"):
        s.add_argument(f"--{name}", type=int, required=True)

    ver = sub.add_parser("verify", help="identity sweeps; prints a JSON report")
    ver_sub = ver.add_subparsers(dest="which", required=True)
    for name, (_, defaults) in VERIFY.items():
        v = ver_sub.add_parser(name)
        for opt, default in defaults.items():
            if opt == "h":
                v.add_argument("--h", action="append",
                               help="h(x) as ascending coefficients, e.g. 1,2 for 2x+1; repeatable")
            elif opt == "order":
                v.add_argument("--order", type=int, default=default)
            else:
                v.add_argument(f"--{opt}", default=default, help=f"range or list (default {default})")
        v.add_argument("--range", dest="range_", default=None,
                       help="shorthand setting the main index range (n)")

    order = sub.add_parser("order", help="lattice closure checks; prints a JSON report")
    order.add_argument("which", choices=("remark41", "prop54"))
    order.add_argument("--a", default="1..5", help="values of a for prop54 (default 1..5)")
    order.add_argument("--gamma1", default="-3..3", help="nonzero gamma1 values (default -3..3)")
    order.add_argument("--gamma2", default="-3..3", help="nonzero gamma2 values (default -3..3)")
    order.add_argument("--window", default="1..30", help="indices n whose scaled elements are tested")
    order.add_argument("--box", default="-5..5", help="range used for both p and q")
    order.add_argument("--reading", choices=("recurrence", "closed"), default="recurrence",
                       help="which s_n definition feeds the decomposition sweep")

    code = sub.add_parser("code", help="block codec")
    code.add_argument("which", choices=("encode", "decode"))
    code.add_argument("--p", type=int, default=None, help="key parameter p (encode only, default 1)")
    code.add_argument("--q", type=int, default=None, help="key parameter q (encode only, default 0)")
    code.add_argument("--n", type=int, default=None, help="key index n (encode only, default 2)")
    code.add_argument("--m", type=int, default=None, help="modulus (encode only, default 65521)")
    code.add_argument("--in", dest="input", default="-", help="input file, - for stdin")
    code.add_argument("--out", dest="output", default="-", help="output file, - for stdout")
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.group == "seq":
        if args.which == "term":
            value = S.term(S.SequenceSpec(args.a, args.b, args.x0, args.x1), args.n, args.mode)
        elif args.which == "gfl":
            value = S.gfl(args.p, args.q, args.n)
        else:
            value = S.gen_s(args.a, args.p, args.q, args.n)
        print(value)
        return 0

    if args.group == "code":
        if args.which == "encode":
            default = coding.CodecConfig()
            args.p = default.p if args.p is None else args.p
            args.q = default.q if args.q is None else args.q
            args.n = default.n if args.n is None else args.n
            args.m = default.m if args.m is None else args.m
        try:
            return _code(args)
        except (coding.CodecConfigError, OSError) as exc:
            print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
            return 1

    start = time.perf_counter()
    if args.group == "order":
        rep = _order(args)
    else:
        func, defaults = VERIFY[args.which]
        if args.range_ is not None and "n" in defaults:
            args.n = args.range_
        ranges = {k: getattr(args, k) for k in defaults}
        if "h" in ranges:
            ranges["h"] = args.h or list(DEFAULT_H)
        rep = SweepReport(f"verify {args.which}", ranges)
        func(args, rep)
    rep.wall_time = round(time.perf_counter() - start, 3)
    print(rep.to_json())
    return 0 if rep.passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Run every verify/order command at its default ranges and summarise the reports.

Writes one JSON line per command to ``--out`` (default stdout) and a short
table to stderr. Errata are collected alongside failures.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from collections import Counter
from dataclasses import dataclass, field

from gfl import cli


@dataclass
class SweepConfig:
    verify: list[str] = field(default_factory=lambda: sorted(cli.VERIFY))
    order: list[str] = field(default_factory=lambda: ["remark41", "prop54"])
    out: str = "-"


def run_command(argv: list[str]) -> tuple[int, dict]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.run(argv)
    return code, json.loads(buf.getvalue())


def main(cfg: SweepConfig) -> int:
    sink = sys.stdout if cfg.out == "-" else open(cfg.out, "w")
    worst = 0
    jobs = [["verify", v] for v in cfg.verify] + [["order", o] for o in cfg.order]
    for argv in jobs:
        code, rep = run_command(argv)
        worst = max(worst, code)
        sink.write(json.dumps(rep) + "\n")
        counts = Counter()
        for e in rep["errata"]:
            counts[e["id"]] += e["occurrences"]
        errata = ", ".join(f"{k}={v}" for k, v in counts.items()) or "-"
        print(f"{' '.join(argv):24s} total={rep['total']:>8d} failures={len(rep['failures']):>4d} "
              f"time={rep['wall_time']:6.1f}s errata: {errata}", file=sys.stderr)
    if sink is not sys.stdout:
        sink.close()
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--verify", nargs="*", help="subset of verify commands")
    ap.add_argument("--order", nargs="*", help="subset of order commands")
    ap.add_argument("--out", default="-")
    a = ap.parse_args()
    cfg = SweepConfig(out=a.out)
    if a.verify is not None:
        cfg.verify = a.verify
    if a.order is not None:
        cfg.order = a.order
    sys.exit(main(cfg))

"""Which (gamma1, gamma2, a) give an order, i.e. a lattice closed under products?

Prints the HNF basis of the lattice spanned by the scaled elements and lists
the parameter choices where every generator product stays inside it.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product

from gfl import orders
from gfl.quaternions import AlgebraParams


@dataclass
class CensusConfig:
    gamma_lo: int = -3
    gamma_hi: int = 3
    a_max: int = 5
    window: int = 30
    box: int = 5


def main(cfg: CensusConfig) -> None:
    gammas = [g for g in range(cfg.gamma_lo, cfg.gamma_hi + 1) if g]
    window = range(1, cfg.window + 1)
    box = [(p, q) for p in range(-cfg.box, cfg.box + 1) for q in range(-cfg.box, cfg.box + 1)]
    for a in range(1, cfg.a_max + 1):
        basis = orders.hnf(orders.closure_generators("gfl" if a == 1 else "recurrence", a)).basis
        closed = [(g1, g2) for g1, g2 in product(gammas, gammas)
                  if orders.prop54_closure(a, AlgebraParams(g1, g2), window, box).passed]
        print(f"a={a} basis={basis}")
        print(f"    closed for {len(closed)}/{len(gammas) ** 2} gamma pairs: {closed}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(CensusConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    a = ap.parse_args()
    main(CensusConfig(**{k: v for k, v in vars(a).items()}))

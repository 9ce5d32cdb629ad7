#!/usr/bin/env python3
"""Randomized sweep checking is_poisson(t) == is_dirac(p(L_pi)) over random
biderivation tables on a commutative bundled algebra.

Example:
    python scripts/poisson_dirac_sweep.py --algebra v1_3 --count 500 --seed 7
"""

import argparse
import random
from dataclasses import dataclass

from hccourant.courant import EpsilonSpace, ESpace
from hccourant.dirac import (biderivation_space, is_dirac, is_poisson,
                             poisson_graph, table_from_flat)
from hccourant.exactlin import Q
from hccourant.files import load_algebra_ref


@dataclass
class SweepConfig:
    algebra: str = "v1_3"
    count: int = 200
    seed: int = 0
    coeff_bound: int = 3


def run(cfg: SweepConfig) -> int:
    A = load_algebra_ref(cfg.algebra)
    E = ESpace(A)
    eps = EpsilonSpace(E)
    space = biderivation_space(A)
    print(f"algebra {A.name}: biderivation space has dim {space.rows}; "
          f"seed {cfg.seed}; {cfg.count} draws")
    rng = random.Random(cfg.seed)
    poisson_count = 0
    disagreements = 0
    for k in range(cfg.count):
        flat = [Q(0)] * (A.dim ** 3)
        for row in space:
            c = rng.randint(-cfg.coeff_bound, cfg.coeff_bound)
            if c:
                for i, x in enumerate(row):
                    flat[i] += c * x
        t = table_from_flat(A, flat)
        p = is_poisson(t)
        _, L = poisson_graph(E, eps, t)
        d = is_dirac(L).dirac
        poisson_count += p
        if p != d:
            disagreements += 1
            print(f"  DISAGREEMENT at draw {k}: poisson={p} dirac={d}")
    print(f"poisson tables: {poisson_count}/{cfg.count}; "
          f"disagreements: {disagreements}")
    return 0 if disagreements == 0 else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algebra", default="v1_3")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--coeff-bound", type=int, default=3)
    a = ap.parse_args()
    raise SystemExit(run(SweepConfig(a.algebra, a.count, a.seed,
                                     a.coeff_bound)))

#!/usr/bin/env python3
"""Adversarial search for module elements parallel to every basis element.

For each ``(d, n)`` the search maximises the smallest gap-closure against
an orthonormal basis ``{xi_i}``; a negative worst margin means no element
came close to being parallel to all of them at once.

    python3 scripts/theorem_b_margins.py --dims 2 3 4 --trials 500
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

import numpy as np

from parallax.core_linalg import Tolerance
from parallax.kmodule import OrthonormalBasis, thm_b_search


@dataclass
class Config:
    dims: list[int] = field(default_factory=lambda: [2, 3])
    trials: int = 300
    seed: int = 0
    random_xi: bool = False


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=None)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--random-xi", action="store_true", help="use a random unit xi instead of e1")
    ns = ap.parse_args()
    cfg = Config(trials=ns.trials, seed=ns.seed, random_xi=ns.random_xi)
    if ns.dims:
        cfg.dims = ns.dims
    rng = np.random.default_rng(cfg.seed)
    tol = Tolerance()
    print(f"{'d':>3}{'n':>3}{'worst margin':>15}{'time':>8}")
    for d in cfg.dims:
        for n in range(2, max(cfg.dims) + 1):
            if cfg.random_xi:
                xi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
                xi /= np.linalg.norm(xi)
            else:
                xi = np.eye(d, dtype=complex)[0]
            start = time.perf_counter()
            worst = thm_b_search(OrthonormalBasis.build(xi, n), cfg.trials, tol, seed=cfg.seed)
            print(f"{d:>3}{n:>3}{worst:>15.6f}{time.perf_counter() - start:>7.1f}s")


if __name__ == "__main__":
    main()

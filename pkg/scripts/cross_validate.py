#!/usr/bin/env python3
"""Cross-validate the structural deciders against the brute-force oracle.

For every norm and size, random pairs are drawn from three families
(generic, scalar multiples, constructed parallel partners) and the verdict
of ``is_parallel`` is compared with ``oracle_parallel``.  A table of
agreement rates and the largest gap difference is printed; ``--json``
writes the raw numbers.

    python3 scripts/cross_validate.py --pairs 100 --sizes 2 3 4
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from parallax.core_linalg import Tolerance, random_matrix
from parallax.geometry import is_parallel
from parallax.norms import parse_norm
from parallax.oracle import OracleConfig, oracle_parallel
from parallax.sampling import random_scalar, spectral_partner

NORMS = ["schatten:inf", "schatten:1", "schatten:3", "kyfan:2", "induced:l1", "induced:linf"]


@dataclass
class Config:
    pairs: int = 60
    sizes: list[int] = field(default_factory=lambda: [2, 3, 4])
    norms: list[str] = field(default_factory=lambda: list(NORMS))
    lambda_grid: int = 2048
    seed: int = 0


@dataclass
class Row:
    norm: str
    n: int
    pairs: int
    agree: int
    parallel: int
    max_gap_diff: float
    seconds: float


def draw(rng, n, mode):
    a = random_matrix(rng, n)
    if mode == 0:
        return a, random_matrix(rng, n)
    if mode == 1:
        return a, random_scalar(rng) * a
    return a, spectral_partner(a, rng)


def run(cfg: Config) -> list[Row]:
    rng = np.random.default_rng(cfg.seed)
    ocfg = OracleConfig(lambda_grid=cfg.lambda_grid, seed=cfg.seed)
    tol = Tolerance()
    rows = []
    for text in cfg.norms:
        h = parse_norm(text)
        for n in cfg.sizes:
            if h.kind == "kyfan" and h.k > n:
                continue
            start = time.perf_counter()
            agree = par = 0
            worst = 0.0
            for trial in range(cfg.pairs):
                a, b = draw(rng, n, trial % 3)
                fast, slow = is_parallel(a, b, h, tol), oracle_parallel(a, b, h, ocfg, tol)
                agree += fast.parallel == slow.parallel
                par += fast.parallel
                worst = max(worst, abs(fast.gap - slow.gap))
            rows.append(Row(text, n, cfg.pairs, agree, par, worst, time.perf_counter() - start))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=Config.pairs)
    ap.add_argument("--sizes", type=int, nargs="+", default=None)
    ap.add_argument("--norms", nargs="+", default=None)
    ap.add_argument("--lambda-grid", type=int, default=Config.lambda_grid)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--json", default=None, help="write results to this path")
    ns = ap.parse_args()
    cfg = Config(pairs=ns.pairs, lambda_grid=ns.lambda_grid, seed=ns.seed)
    if ns.sizes:
        cfg.sizes = ns.sizes
    if ns.norms:
        cfg.norms = ns.norms
    rows = run(cfg)
    print(f"{'norm':<14}{'n':>3}{'agree':>10}{'parallel':>10}{'max |dgap|':>14}{'time':>8}")
    for r in rows:
        print(f"{r.norm:<14}{r.n:>3}{r.agree:>6}/{r.pairs:<3}{r.parallel:>10}{r.max_gap_diff:>14.2e}{r.seconds:>7.1f}s")
    if ns.json:
        with open(ns.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": [asdict(r) for r in rows]}, fh, indent=2)


if __name__ == "__main__":
    main()

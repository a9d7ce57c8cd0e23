#!/usr/bin/env python3
"""Look for pairs where the vector-level condition and parallelism disagree.

The condition asks for a unit ``y`` with ``nu(Ay) = ||A||``,
``nu(By) = ||B||`` and ``Ay || By``.  Two counts are reported per vector
norm: pairs where the condition holds but the matrices are not parallel
(never expected), and parallel pairs where no such ``y`` is found.  The
looser condition that drops ``nu(By) = ||B||`` is also tallied, with the
first counterexample printed.

    python3 scripts/converse_search.py --pairs 500
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from parallax.certificates import vector_level_sufficiency
from parallax.core_linalg import random_matrix
from parallax.sampling import random_scalar, real_induced_partner, spectral_partner


@dataclass
class Config:
    pairs: int = 300
    max_n: int = 4
    seed: int = 0


def draw(rng, vt, trial, max_n):
    n = int(rng.integers(2, max_n + 1))
    mode = trial % 5
    if mode == 0:
        return random_matrix(rng, n), random_matrix(rng, n)
    if mode == 1:
        a = random_matrix(rng, n)
        return a, random_scalar(rng) * a
    if mode == 2:
        # rank-deficient pairs with overlapping supports
        a = np.diag(rng.random(n) * (rng.random(n) < 0.6))
        a[0, 0] = 1.0
        return a, np.diag(rng.random(n) * (rng.random(n) < 0.6))
    if vt == "l2":
        a = random_matrix(rng, n)
        return a, spectral_partner(a, rng)
    a = rng.standard_normal((n, n))
    return a, real_induced_partner(a, vt, rng)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=Config.pairs)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ns = ap.parse_args()
    cfg = Config(ns.pairs, ns.max_n, ns.seed)
    rng = np.random.default_rng(cfg.seed)
    print(f"{'norm':<6}{'pairs':>7}{'parallel':>10}{'found':>7}{'found, not par':>16}{'par, not found':>16}"
          f"{'loose, not par':>16}")
    for vt in ("l1", "l2", "linf"):
        par = found = bad = conv = loose = 0
        example = None
        for trial in range(cfg.pairs):
            a, b = draw(rng, vt, trial, cfg.max_n)
            if not np.any(a):
                continue
            s = vector_level_sufficiency(a, b, vt)
            par += s.matrix_parallel
            found += s.found
            bad += s.found and not s.matrix_parallel
            conv += s.matrix_parallel and not s.found
            if s.loose_found and not s.matrix_parallel:
                loose += 1
                example = example or (a, b, s.loose_y)
        print(f"{vt:<6}{cfg.pairs:>7}{par:>10}{found:>7}{bad:>16}{conv:>16}{loose:>16}")
        if example is not None:
            a, b, y = example
            with np.printoptions(precision=3, suppress=True):
                print(f"  loose counterexample: A =\n{a}\n  B =\n{b}\n  y = {y}")


if __name__ == "__main__":
    main()

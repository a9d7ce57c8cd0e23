"""Brute-force reference computations.

Nothing here uses singular-subspace or support-function structure: the
oracles only evaluate norms and quadratic forms at sampled points and polish
the best sample by derivative-free hill climbing.  Maximisers therefore
return lower bounds on the quantities they estimate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core_linalg import Tolerance, as_matrix, require_same_shape, require_square, unit_circle_grid
from .geometry import ParallelVerdict
from .norms import NormHandle, _check_handle, matrix_norm, norm_stack

DEFAULT_SEED = 20240611


def default_seed() -> int:
    return int(os.environ.get("PARALLAX_SEED", DEFAULT_SEED))


@dataclass(frozen=True)
class OracleConfig:
    lambda_grid: int = 4096
    sphere_samples: int = 20000
    refine_steps: int = 100
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if min(self.lambda_grid, self.sphere_samples, self.refine_steps) < 1:
            raise ValueError("oracle counts must be positive")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def streams(self) -> tuple[np.random.Generator, np.random.Generator]:
        """Independent sampling and polishing substreams derived from ``seed``."""
        a, b = np.random.SeedSequence(self.seed).spawn(2)
        return np.random.default_rng(a), np.random.default_rng(b)


def oracle_parallel(a, b, h: NormHandle, cfg: OracleConfig = OracleConfig(),
                    tol: Tolerance = Tolerance()) -> ParallelVerdict:
    """Dense unit-circle grid for ``||A + lam B||`` plus ternary refinement."""
    a, b = as_matrix(a, "A"), as_matrix(b, "B")
    require_same_shape(a, b)
    bound = matrix_norm(a, h) + matrix_norm(b, h)

    def g(theta):
        return float(norm_stack((a + np.exp(1j * theta) * b)[None], h)[0])

    thetas = unit_circle_grid(cfg.lambda_grid)
    vals = norm_stack(a[None] + np.exp(1j * thetas)[:, None, None] * b[None], h)
    k = int(np.argmax(vals))
    best_t, best_v = thetas[k], float(vals[k])
    step = 2.0 * np.pi / cfg.lambda_grid
    lo, hi = best_t - step, best_t + step
    for _ in range(cfg.refine_steps):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1, f2 = g(m1), g(m2)
        if f1 < f2:
            lo = m1
        else:
            hi = m2
        for t, f in ((m1, f1), (m2, f2)):
            if f > best_v:
                best_t, best_v = t, f
    return ParallelVerdict.from_values(np.exp(1j * best_t), best_v, bound, tol)


def hill_climb(f_batch, x0: np.ndarray, rng: np.random.Generator, rounds: int,
               step: float, directions: int | None = None) -> tuple[np.ndarray, float]:
    """Maximise ``f`` from ``x0`` by random-direction pattern search.

    ``f_batch`` maps an ``(m, dim)`` array of points to ``m`` values.  Each
    round probes ``x +- step * d`` along random unit directions and the
    coordinate axes, moving to the best improvement or halving ``step``.
    """
    x = np.asarray(x0, dtype=float)
    dim = x.size
    fx = float(f_batch(x[None])[0])
    eye = np.eye(dim)
    ndir = directions or dim
    for _ in range(rounds):
        d = rng.standard_normal((ndir, dim))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        d = np.concatenate([d, -d, eye, -eye])
        cand = x[None] + step * d
        vals = f_batch(cand)
        j = int(np.argmax(vals))
        if vals[j] > fx:
            x, fx = cand[j], float(vals[j])
            step *= 1.5
        else:
            step *= 0.5
        if step < 1e-15:
            break
    return x, fx


def _complex_pack(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real.ravel(), z.imag.ravel()])


def _complex_unpack(x: np.ndarray, shape) -> np.ndarray:
    half = x.shape[-1] // 2
    z = x[..., :half] + 1j * x[..., half:]
    return z.reshape(x.shape[:-1] + tuple(shape))


def _records(vals: np.ndarray) -> np.ndarray:
    """Indices where ``vals`` beats every earlier entry.

    Any prefix of a sample has the same records, so polishing exactly these
    points makes a larger sample repeat every polish of a smaller one; there
    are about ``ln(len(vals))`` of them.
    """
    run = np.maximum.accumulate(vals)
    return np.flatnonzero(np.concatenate([[True], run[1:] > run[:-1]]))


def oracle_numerical_radius(t, cfg: OracleConfig = OracleConfig()) -> float:
    """Max of ``|[T xi, xi]|`` over sampled unit ``xi``, then polished."""
    t = as_matrix(t, "T")
    require_square(t, "T")
    n = t.shape[0]
    if not np.any(t):
        return 0.0
    sample_rng, _ = cfg.streams()
    # drawn as (re, im) pairs so a smaller sample is a prefix of a larger one
    g = sample_rng.standard_normal((cfg.sphere_samples, n, 2))
    z = g[..., 0] + 1j * g[..., 1]

    def quad(zz):
        num = np.abs(np.einsum("ki,ij,kj->k", zz.conj(), t, zz))
        den = np.einsum("ki,ki->k", zz.conj(), zz).real
        return num / np.where(den > 0, den, np.inf)

    vals = quad(z)
    best = max(float(vals.max()), float(quad(np.eye(n)).max()))
    for k in _records(vals):
        x0 = _complex_pack(z[k] / np.linalg.norm(z[k]))
        rng = np.random.default_rng([cfg.seed, 1, k])
        _, v = hill_climb(lambda xs: quad(_complex_unpack(xs, (n,))), x0, rng, cfg.refine_steps * 4, 0.1)
        best = max(best, v)
    return best


def oracle_dual_norm(a, h: NormHandle, cfg: OracleConfig = OracleConfig(),
                     trace: list | None = None) -> float:
    """``max |tr(A B*)| / ||B||_h`` over random ``B``, polished.

    Every running record of the sample is polished by adaptive Nelder-Mead
    restarts.  If ``trace`` is a list, the running best after each block of
    1024 samples and after polishing is appended to it.
    """
    a = as_matrix(a, "A")
    require_square(a, "A")
    _check_handle(a.shape, h)
    if not np.any(a):
        return 0.0
    shape = a.shape
    rng, _ = cfg.streams()

    def ratio(bs):
        num = np.abs(np.einsum("kij,ij->k", bs.conj(), a))
        den = norm_stack(bs, h)
        return num / np.where(den > 0, den, np.inf)

    g = rng.standard_normal((cfg.sphere_samples,) + shape + (2,))
    bs = g[..., 0] + 1j * g[..., 1]
    vals = ratio(bs)
    if trace is not None:
        for stop in range(1024, cfg.sphere_samples + 1024, 1024):
            trace.append(float(vals[:stop].max()))
    best_val = float(vals.max())
    # the ratio is non-smooth on the optimal face; adaptive simplex restarts
    # cope with that far better than fixed pattern search
    neg = lambda xs: -float(ratio(_complex_unpack(xs[None], shape))[0])
    for k in _records(vals):
        x, cur = _complex_pack(bs[k] / matrix_norm(bs[k], h)), float(vals[k])
        for _ in range(max(1, cfg.refine_steps // 50)):
            res = minimize(neg, x, method="Nelder-Mead",
                           options={"adaptive": True, "maxiter": 200 * x.size,
                                    "xatol": 1e-12, "fatol": 1e-15})
            if -float(res.fun) <= cur * (1 + 1e-12):
                break
            x, cur = res.x, -float(res.fun)
        best_val = max(best_val, cur)
    if trace is not None:
        trace.append(best_val)
    return best_val

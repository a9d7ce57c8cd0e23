"""Deciders for norm-parallelism and Birkhoff-James orthogonality.

Both work for any :class:`~parallax.norms.NormHandle` and use only norm
evaluations, so they double as the reference the structural deciders in
:mod:`parallax.certificates` are compared with.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core_linalg import Tolerance, as_matrix, as_vector, grid_then_golden_max, require_same_shape
from .norms import NormHandle, VectorNormTag, _check_handle, matrix_norm, norm_stack, vector_norm
from .errors import ShapeMismatch


@dataclass(frozen=True)
class ParallelVerdict:
    parallel: bool
    lambda_star: complex
    achieved: float
    bound: float
    gap: float

    @classmethod
    def from_values(cls, lam: complex, achieved: float, bound: float, tol: Tolerance) -> "ParallelVerdict":
        achieved = min(max(achieved, 0.0), bound + tol.abs_tol)
        gap = max(bound - achieved, 0.0)
        lam = complex(lam) / abs(lam)
        return cls(gap <= tol.slack(bound), lam, float(achieved), float(bound), float(gap))


@dataclass(frozen=True)
class BjoVerdict:
    orthogonal: bool
    alpha_star: complex
    min_value: float


def _maximize_over_circle(a, b, norm_of_stack, tol: Tolerance):
    def batch(thetas):
        lam = np.exp(1j * thetas)
        return norm_of_stack(a[None] + lam[:, None, None] * b[None])

    def single(theta):
        return float(norm_of_stack((a + np.exp(1j * theta) * b)[None])[0])

    theta, val = grid_then_golden_max(batch, single, tol.grid_points, tol.refine_iters)
    return np.exp(1j * theta), val


def is_parallel(a, b, h: NormHandle, tol: Tolerance = Tolerance()) -> ParallelVerdict:
    """Decide ``||A + lam B|| = ||A|| + ||B||`` for some unimodular ``lam``.

    ``theta -> ||A + e^{i theta} B||`` is maximised on a uniform grid and the
    best bracket refined by golden-section search.  Rectangular inputs are
    accepted for Schatten and Ky-Fan handles.
    """
    a, b = as_matrix(a, "A"), as_matrix(b, "B")
    require_same_shape(a, b)
    na, nb = matrix_norm(a, h), matrix_norm(b, h)
    lam, val = _maximize_over_circle(a, b, lambda s: norm_stack(s, h), tol)
    return ParallelVerdict.from_values(lam, val, na + nb, tol)


def vector_parallel(u, v, vt, tol: Tolerance = Tolerance()) -> ParallelVerdict:
    u, v = as_vector(u, "u"), as_vector(v, "v")
    if u.shape != v.shape:
        raise ShapeMismatch(f"length mismatch: {u.size} vs {v.size}")
    vt = VectorNormTag(vt)

    def stack_norm(s):
        if vt is VectorNormTag.L1:
            return np.abs(s).sum(axis=(-2, -1))
        if vt is VectorNormTag.LINF:
            return np.abs(s).max(axis=(-2, -1))
        return np.sqrt((np.abs(s) ** 2).sum(axis=(-2, -1)))

    bound = vector_norm(u, vt) + vector_norm(v, vt)
    lam, val = _maximize_over_circle(u[:, None], v[:, None], stack_norm, tol)
    return ParallelVerdict.from_values(lam, val, bound, tol)


def _polar_grid(radius: float, n_radii: int = 8, n_angles: int = 32) -> np.ndarray:
    r = radius * np.arange(1, n_radii + 1) / n_radii
    phi = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return np.concatenate([[0.0], (r[:, None] * np.exp(1j * phi)[None, :]).ravel()])


def bj_min(x: np.ndarray, y: np.ndarray, h: NormHandle, radius: float) -> tuple[complex, float]:
    """Minimise ``alpha -> ||x + alpha y||`` over ``|alpha| <= radius``.

    Coarse polar grid, then Nelder-Mead restarts from the best grid point and
    from the origin.  The returned value is always attained, so it is an
    upper bound on the true minimum.
    """
    alphas = _polar_grid(radius)
    vals = norm_stack(x[None] + alphas[:, None, None] * y[None], h)
    k = int(np.argmin(vals))
    best_alpha, best_val = complex(alphas[k]), float(vals[k])

    def f(p):
        al = complex(p[0], p[1])
        if abs(al) > radius:
            al *= radius / abs(al)
        return float(norm_stack((x + al * y)[None], h)[0])

    base = float(vals[0])  # alpha = 0
    step0 = radius / 8.0
    starts = [(best_alpha, step0)]
    if best_val > base * (1.0 - 1e-3):
        # no clear descent on the grid: probe the origin at small scale too
        starts += [(0j, radius * 1e-3), (best_alpha, step0 * 1e-2)]
    for start, step in starts:
        p0 = np.array([start.real, start.imag])
        for _ in range(2):
            simplex = np.array([p0, p0 + [step, 0.0], p0 + [0.0, step]])
            res = minimize(
                f, p0, method="Nelder-Mead",
                options={"initial_simplex": simplex, "xatol": 1e-12 * max(radius, 1.0),
                         "fatol": 1e-15, "maxiter": 300},
            )
            improved = res.fun < best_val
            if improved:
                best_val = float(res.fun)
                al = complex(res.x[0], res.x[1])
                best_alpha = al if abs(al) <= radius else al * radius / abs(al)
            if not improved and _ > 0:
                break
            p0 = np.array([best_alpha.real, best_alpha.imag])
            step *= 0.1
    return best_alpha, best_val


def is_bj_orthogonal(x, y, h: NormHandle, tol: Tolerance = Tolerance()) -> BjoVerdict:
    """Decide ``||x|| <= ||x + alpha y||`` for every complex ``alpha``.

    Outside ``|alpha| <= 2||x||/||y||`` the inequality holds automatically, so
    only that disk is searched.
    """
    x, y = as_matrix(x, "x"), as_matrix(y, "y")
    require_same_shape(x, y)
    _check_handle(x.shape, h)
    nx = matrix_norm(x, h)
    ny = matrix_norm(y, h)
    if ny == 0.0 or nx == 0.0:
        return BjoVerdict(True, 0j, nx)
    alpha, val = bj_min(x, y, h, 2.0 * nx / ny)
    val = min(val, nx)
    if val == nx:
        alpha = 0j
    return BjoVerdict(val >= nx - tol.slack(nx), alpha, val)

"""Numerical range W(T) through its support function.

For a direction ``e^{i theta}`` the support value of ``W(T)`` is the largest
eigenvalue of the Hermitian part of ``e^{-i theta} T``; the maximising
eigenvector is a boundary point generator.  The theta grid uses half of
``Tolerance.grid_points``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_linalg import (
    Tolerance,
    as_matrix,
    grid_then_golden_max,
    hermitian_part,
    require_square,
    unit_circle_grid,
)


@dataclass(frozen=True)
class NumRangeQuery:
    t: np.ndarray
    point: complex
    margin: float


def _square(t) -> np.ndarray:
    t = as_matrix(t, "T")
    require_square(t, "T")
    return t


def _rotated_hermitian(t: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    rot = np.exp(-1j * np.asarray(thetas))[..., None, None]
    return hermitian_part(rot * t)


def _support_batch(t: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(_rotated_hermitian(t, thetas))[..., -1]


def _theta_grid_size(tol: Tolerance) -> int:
    return max(8, tol.grid_points // 2)


def support_value(t, theta: float) -> float:
    """``lambda_max((e^{-i theta} T + e^{i theta} T*) / 2)``."""
    t = _square(t)
    return float(_support_batch(t, np.array([theta]))[0])


def numerical_radius_witness(t, tol: Tolerance = Tolerance()) -> tuple[float, float, np.ndarray]:
    """Numerical radius with its maximising direction and unit vector.

    Returns ``(w, theta, xi)`` where ``xi* T xi`` is (up to rounding)
    ``w e^{i theta}``.
    """
    t = _square(t)
    theta, w = grid_then_golden_max(
        lambda th: _support_batch(t, th),
        lambda th: float(_support_batch(t, np.array([th]))[0]),
        _theta_grid_size(tol),
        tol.refine_iters,
    )
    _, q = np.linalg.eigh(_rotated_hermitian(t, theta))
    xi = q[:, -1]
    # golden section fixes theta only to ~sqrt(eps); at the optimum the
    # boundary point xi* T xi points exactly along e^{i theta}
    for _ in range(8):
        z = complex(np.vdot(xi, t @ xi))
        if z == 0:
            break
        cand = float(np.mod(np.angle(z), 2.0 * np.pi))
        wc, qc = np.linalg.eigh(_rotated_hermitian(t, cand))
        if wc[-1] < w - 4 * np.finfo(float).eps * max(abs(w), 1.0) or cand == theta:
            break
        theta, w, xi = cand, max(w, float(wc[-1])), qc[:, -1]
    return max(w, 0.0), theta, xi


def numerical_radius(t, tol: Tolerance = Tolerance()) -> float:
    return numerical_radius_witness(t, tol)[0]


def range_margin(t, z: complex, tol: Tolerance = Tolerance()) -> NumRangeQuery:
    """Minimum over directions of ``support(theta) - Re(e^{-i theta} z)``.

    Nonnegative exactly when ``z`` lies in ``W(T)``; for points outside it is
    minus the distance along the separating direction.
    """
    t = _square(t)
    z = complex(z)

    def batch(th):
        return -(_support_batch(t, th) - np.real(np.exp(-1j * th) * z))

    def single(th):
        return float(batch(np.array([th]))[0])

    _, neg = grid_then_golden_max(batch, single, _theta_grid_size(tol), tol.refine_iters)
    return NumRangeQuery(t=t, point=z, margin=-neg)


def in_numerical_range(t, z: complex, tol: Tolerance = Tolerance()) -> bool:
    t = _square(t)
    q = range_margin(t, z, tol)
    return q.margin >= -tol.slack(np.linalg.norm(t, 2))


def boundary(t, points: int) -> np.ndarray:
    """``points`` boundary points of ``W(T)``, ordered by support direction."""
    t = _square(t)
    thetas = unit_circle_grid(points)
    _, q = np.linalg.eigh(_rotated_hermitian(t, thetas))
    xi = q[..., -1]
    return np.einsum("ki,ij,kj->k", xi.conj(), t, xi)


__all__ = [
    "NumRangeQuery",
    "boundary",
    "in_numerical_range",
    "numerical_radius",
    "numerical_radius_witness",
    "range_margin",
    "support_value",
]

"""Dense complex linear-algebra kernels shared by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single entry point that validates and coerces user input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonFinite, NotHermitian, NotSquare, ShapeMismatch, ZeroMatrix

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by the deciders.

    ``grid_points`` is the size of the unit-circle grid used before
    golden-section refinement; ``refine_iters`` is the number of
    golden-section steps.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-8
    grid_points: int = 720
    refine_iters: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.grid_points < 8:
            raise ValueError("grid_points must be at least 8")
        if self.refine_iters < 1:
            raise ValueError("refine_iters must be positive")

    def slack(self, scale: float) -> float:
        """Combined threshold ``abs_tol + rel_tol * scale``."""
        return self.abs_tol + self.rel_tol * abs(scale)


@dataclass(frozen=True)
class Svd:
    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return self.singular_values

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.singular_values) @ self.v.conj().T


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{name} contains NaN or Inf")
    return m


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.array(x, dtype=np.complex128).reshape(-1)
    if v.size == 0:
        raise ShapeMismatch(f"{name} must be non-empty")
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"{name} contains NaN or Inf")
    return v


def require_square(a: np.ndarray, name: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {a.shape}")


def require_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """``(A + A*) / 2``; also works on stacks of matrices."""
    return 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))


def _fix_phases(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # largest-modulus entry of every u-column made real positive
    idx = np.argmax(np.abs(u), axis=0)
    pivots = u[idx, np.arange(u.shape[1])]
    mags = np.abs(pivots)
    phase = np.where(mags > 0, pivots / np.where(mags > 0, mags, 1.0), 1.0)
    return u / phase, v / phase


def svd(a) -> Svd:
    """Thin SVD ``A = U diag(s) V*`` with descending singular values.

    Column phases are normalised so the largest-modulus entry of every
    left singular vector is real and positive.
    """
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    u, v = _fix_phases(u, vh.conj().T)
    return Svd(u=u, singular_values=s, v=v)


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(np.asarray(a, dtype=np.complex128), compute_uv=False)


def herm_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending."""
    h = as_matrix(h)
    require_square(h)
    scale = max(1.0, np.linalg.norm(h))
    if np.linalg.norm(h - adjoint(h)) > 1e-10 * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    w, q = np.linalg.eigh(hermitian_part(h))
    return w[::-1].copy(), q[:, ::-1].copy()


def top_singular_subspace(a, tol: Tolerance = Tolerance()) -> tuple[np.ndarray, np.ndarray, int]:
    """Orthonormal basis ``U1`` of the top eigenspace of ``AA*`` and ``V1 = A* U1 / s1``.

    The multiplicity counts singular values within ``rel_tol * s1`` of ``s1``.
    """
    a = as_matrix(a)
    dec = svd(a)
    s1 = dec.s[0]
    if s1 == 0.0:
        raise ZeroMatrix("top singular subspace of the zero matrix is undefined")
    m = int(np.count_nonzero(dec.s >= s1 - tol.rel_tol * s1))
    u1 = dec.u[:, :m]
    v1 = adjoint(a) @ u1 / s1
    return u1, v1, m


# -- sampling and 1-D search utilities ---------------------------------------


def unit_circle_grid(n: int) -> np.ndarray:
    """Angles ``2 pi k / n`` for ``k = 0..n-1``."""
    return 2.0 * np.pi * np.arange(n) / n


def random_unit_vectors(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """``count`` rows of rotation-invariant random unit vectors in C^dim."""
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None, real: bool = False) -> np.ndarray:
    cols = rows if cols is None else cols
    m = rng.standard_normal((rows, cols))
    if real:
        return m.astype(np.complex128)
    return m + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_matrix(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, iters: int) -> tuple[float, float]:
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(argmax, max)``.

    Endpoints are included in the comparison so a maximum at the bracket
    edge is never lost.
    """
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    best_f, best_x = max(candidates, key=lambda t: t[0])
    return best_x, best_f


def grid_then_golden_max(
    batch_f: Callable[[np.ndarray], np.ndarray],
    f: Callable[[float], float],
    grid_points: int,
    refine_iters: int,
) -> tuple[float, float]:
    """Maximise a ``2 pi``-periodic function of an angle.

    ``batch_f`` evaluates the whole uniform grid at once, ``f`` one angle;
    the best grid bracket is refined by golden-section search.
    """
    thetas = unit_circle_grid(grid_points)
    vals = batch_f(thetas)
    k = int(np.argmax(vals))
    step = 2.0 * np.pi / grid_points
    theta, val = golden_section_max(f, thetas[k] - step, thetas[k] + step, refine_iters)
    if val < vals[k]:
        theta, val = thetas[k], float(vals[k])
    return float(np.mod(theta, 2.0 * np.pi)), float(val)

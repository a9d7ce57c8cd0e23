"""Finite-dimensional Hilbert K(H)-modules and checks of their parallelism theorems.

The module is ``E = M_{d x n}`` over ``K(C^d) = M_d`` with inner product
``<x, y> = x y*`` and left action ``a . x = a x``.  The module norm
``||<x, x>||^(1/2)`` is the spectral norm of ``x``, so parallelism in ``E``
is spectral-norm parallelism of ``d x n`` matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core_linalg import Tolerance, adjoint, as_matrix, as_vector, golden_section_max
from .errors import BadBasis, BadDimension, NotIdempotent, NotMinimal, NotUnit, ShapeMismatch
from .geometry import _polar_grid, is_bj_orthogonal, is_parallel
from .norms import SPECTRAL, norm_stack
from .numrange import numerical_radius


@dataclass(frozen=True)
class ModuleElement:
    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", as_matrix(self.mat, "module element"))

    @property
    def d(self) -> int:
        return self.mat.shape[0]

    @property
    def n(self) -> int:
        return self.mat.shape[1]

    @property
    def norm(self) -> float:
        return module_norm(self)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(self.mat + other.mat)

    def __mul__(self, c: complex) -> "ModuleElement":
        return ModuleElement(self.mat * c)

    __rmul__ = __mul__


def element(x) -> ModuleElement:
    return x if isinstance(x, ModuleElement) else ModuleElement(x)


def act(a, x) -> ModuleElement:
    """Left action of the coefficient algebra ``M_d``."""
    return ModuleElement(as_matrix(a) @ element(x).mat)


def mod_inner(x, y) -> np.ndarray:
    x, y = element(x), element(y)
    if x.mat.shape != y.mat.shape:
        raise ShapeMismatch(f"module elements of shapes {x.mat.shape} and {y.mat.shape}")
    return x.mat @ adjoint(y.mat)


def module_norm(x) -> float:
    g = mod_inner(x, x)
    return float(np.sqrt(np.linalg.norm(g, 2)))


def minimal_projection(xi) -> np.ndarray:
    """``xi (x) xi``, the rank-one projection onto ``span(xi)``."""
    xi = as_vector(xi, "xi")
    if abs(np.linalg.norm(xi) - 1.0) > 1e-10:
        raise NotUnit("minimal projection needs a unit vector")
    return np.outer(xi, xi.conj())


@dataclass(frozen=True)
class OrthonormalBasis:
    """Basis ``x_j = xi e_j*`` with ``<x_j, x_j> = xi xi*`` for every ``j``."""

    xi: np.ndarray
    elements: list = field(default_factory=list)

    @classmethod
    def build(cls, xi, n: int) -> "OrthonormalBasis":
        xi = as_vector(xi, "xi")
        if abs(np.linalg.norm(xi) - 1.0) > 1e-10:
            raise NotUnit("basis vector xi must be a unit vector")
        eye = np.eye(n)
        return cls(xi=xi, elements=[ModuleElement(np.outer(xi, eye[j])) for j in range(n)])

    @property
    def n(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class TheoremCheck:
    """Both sides of an equivalence, plus the numbers they were decided from."""

    lhs_parallel: bool
    rhs_holds: bool
    evidence: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.lhs_parallel == self.rhs_holds


def _pair(x, y):
    x, y = element(x), element(y)
    if x.mat.shape != y.mat.shape:
        raise ShapeMismatch(f"module elements of shapes {x.mat.shape} and {y.mat.shape}")
    return x, y


def module_parallel(x, y, tol: Tolerance = Tolerance()):
    x, y = _pair(x, y)
    return is_parallel(x.mat, y.mat, SPECTRAL, tol)


def thm_a_check(x, y, tol: Tolerance = Tolerance()) -> TheoremCheck:
    """``x || y`` versus ``w(<x,x><x,y>) = ||x||^3 ||y||``.

    A unit vector with ``|[<x,x><x,y> xi, xi]| = ||x||^3 ||y||`` exists
    exactly when that value is the numerical radius.
    """
    x, y = _pair(x, y)
    nx, ny = module_norm(x), module_norm(y)
    if nx == 0.0:
        return TheoremCheck(True, True, {"target": 0.0, "radius": 0.0, "gap": 0.0})
    verdict = module_parallel(x, y, tol)
    w = numerical_radius(mod_inner(x, x) @ mod_inner(x, y), tol)
    target = nx ** 3 * ny
    return TheoremCheck(
        verdict.parallel, abs(w - target) <= tol.slack(target),
        {"target": target, "radius": w, "gap": verdict.gap},
    )


def _check_minimal(p: np.ndarray, tol: Tolerance) -> None:
    ok = (
        np.linalg.norm(p - adjoint(p)) <= tol.slack(1.0)
        and np.linalg.norm(p @ p - p) <= tol.slack(1.0)
        and abs(np.trace(p) - 1.0) <= tol.slack(1.0)
    )
    if not ok:
        raise NotMinimal("<x, x> is not a rank-one orthogonal projection")


def thm_L_check(x, y, tol: Tolerance = Tolerance()) -> TheoremCheck:
    """For ``<x, x>`` a minimal projection: ``x || y`` versus ``w(<x, y>) = ||y||``."""
    x, y = _pair(x, y)
    _check_minimal(mod_inner(x, x), tol)
    ny = module_norm(y)
    verdict = module_parallel(x, y, tol)
    w = numerical_radius(mod_inner(x, y), tol)
    return TheoremCheck(
        verdict.parallel, abs(w - ny) <= tol.slack(ny),
        {"target": ny, "radius": w, "gap": verdict.gap},
    )


def _bj_parts(x: np.ndarray, y: np.ndarray, nx: float, ny: float):
    """``(P1, Q1, P2, Q2)`` with the BJ terms ``z_i(lam) = P_i + lam Q_i``."""
    yx = y @ adjoint(x)
    return (ny * (x @ adjoint(x) @ x), nx * (yx @ x),
            nx * (y @ adjoint(y) @ y), ny * (yx @ y))


# terms this small relative to their scale are cancellation residue of an
# exact zero (e.g. y a multiple of x at the matching lam)
_ZERO_FLOOR = 1e-13


def _floor(z: np.ndarray, scale: float) -> np.ndarray:
    small = norm_stack(z, SPECTRAL) <= _ZERO_FLOOR * scale
    return np.where(small[..., None, None], 0.0, z)


def _bj_screen(x: np.ndarray, z: np.ndarray, nx: float) -> np.ndarray:
    """Upper bound on ``min_alpha ||x + alpha z|| - ||x||`` from a polar grid, per ``z``."""
    nz = norm_stack(z, SPECTRAL)
    out = np.zeros(z.shape[0])
    for k in np.flatnonzero(nz > 0):
        alphas = _polar_grid(2.0 * nx / nz[k], n_radii=6, n_angles=24)
        vals = norm_stack(x[None] + alphas[:, None, None] * z[k][None], SPECTRAL)
        out[k] = vals.min() - nx
    return out


def corollary_idempotent_check(x, y, tol: Tolerance = Tolerance(), candidates: int = 4) -> TheoremCheck:
    """For idempotent ``<x, x>``: ``x || y`` versus the two BJ conditions.

    The right side asks for one unimodular ``lam`` with
    ``x _|_ ||y|| <x,x> x + lam ||x|| <y,x> x`` and
    ``y _|_ ||x|| <y,y> y + lam ||y|| <y,x> y``.  Writing the two terms as
    ``P_i + lam Q_i``, the candidate ``lam`` are the unit-circle grid plus
    the two minimisers of ``||P_i + lam Q_i||_F`` (where a term can vanish,
    which a grid would miss).  Grid angles are screened with a cheap upper
    bound on the orthogonality defect and the best ``candidates`` refined
    by golden-section search on the full Birkhoff-James decider.
    """
    x, y = _pair(x, y)
    p = mod_inner(x, x)
    if np.linalg.norm(p @ p - p) > tol.slack(max(1.0, np.linalg.norm(p))):
        raise NotIdempotent("<x, x> is not idempotent")
    nx, ny = module_norm(x), module_norm(y)
    verdict = module_parallel(x, y, tol)
    xm, ym = x.mat, y.mat
    p1, q1, p2, q2 = _bj_parts(xm, ym, nx, ny)
    s1, s2 = nx ** 3 * ny, ny ** 3 * nx

    def terms(lam):
        lam = np.asarray(lam)[..., None, None]
        return _floor(p1 + lam * q1, s1), _floor(p2 + lam * q2, s2)

    def defect(theta: float) -> float:
        z1, z2 = terms(np.exp(1j * theta))
        b1 = is_bj_orthogonal(xm, z1, SPECTRAL, tol)
        b2 = is_bj_orthogonal(ym, z2, SPECTRAL, tol)
        return min(b1.min_value - nx + tol.slack(nx), b2.min_value - ny + tol.slack(ny))

    special = [float(np.angle(-np.vdot(q, pp))) for pp, q in ((p1, q1), (p2, q2)) if np.vdot(q, pp) != 0]
    best_theta, best = 0.0, -np.inf
    for th in special:
        val = defect(th)
        if val > best:
            best_theta, best = th, val

    thetas = 2.0 * np.pi * np.arange(tol.grid_points) / tol.grid_points
    z1s, z2s = terms(np.exp(1j * thetas))
    screen = np.minimum(_bj_screen(xm, z1s, nx), _bj_screen(ym, z2s, ny))
    step = 2.0 * np.pi / tol.grid_points
    # the defect is -O(dtheta^2) near an admissible lam, so ~25 golden steps
    # from one grid cell already resolve it far below the BJ tolerance
    iters = min(tol.refine_iters, 25)
    for k in np.argsort(screen, kind="stable")[::-1][:candidates]:
        if best >= 0:
            break
        val = defect(thetas[k])
        if val > best:
            best_theta, best = thetas[k], val
        if best >= 0:
            break
        th, val = golden_section_max(defect, thetas[k] - step, thetas[k] + step, iters)
        if val > best:
            best_theta, best = th, val
    return TheoremCheck(
        verdict.parallel, bool(best >= 0),
        {"lambda": complex(np.exp(1j * best_theta)), "defect": float(best), "gap": verdict.gap},
    )


def thm_b_search(basis: OrthonormalBasis, trials: int = 500, tol: Tolerance = Tolerance(),
                 seed: int = 0, polish: int = 3) -> float:
    """Worst simultaneous-parallelism margin over random unit-norm ``x``.

    For each ``x`` (scaled to ``||x|| = 1``, since gaps scale with ``x``) the
    margin is ``min_j [max_lam ||x + lam x_j|| - (||x|| + 1)]``; the largest
    margin found over ``trials`` random draws, after local maximisation from
    the ``polish`` best draws, is returned.  A nonnegative value would be an
    element parallel to every basis element.
    """
    if basis.n < 2:
        raise BadBasis("needs an orthonormal basis with at least two elements")
    d, n = basis.elements[0].mat.shape
    rng = np.random.default_rng(seed)
    coarse = Tolerance(tol.abs_tol, tol.rel_tol, grid_points=64, refine_iters=30)

    def margin(mat: np.ndarray, t: Tolerance) -> float:
        nm = np.linalg.norm(mat, 2)
        if nm == 0:
            return -np.inf
        mat = mat / nm
        return min(-is_parallel(mat, e.mat, SPECTRAL, t).gap for e in basis.elements)

    draws = rng.standard_normal((trials, d, n)) + 1j * rng.standard_normal((trials, d, n))
    scores = np.array([margin(m, coarse) for m in draws])
    worst = -np.inf
    for k in np.argsort(scores)[::-1][:polish]:
        x0 = np.concatenate([draws[k].real.ravel(), draws[k].imag.ravel()])

        def neg(v):
            return -margin((v[: d * n] + 1j * v[d * n:]).reshape(d, n), coarse)

        res = minimize(neg, x0, method="Nelder-Mead", options={"maxiter": 300, "xatol": 1e-8, "fatol": 1e-10})
        best = (res.x[: d * n] + 1j * res.x[d * n:]).reshape(d, n)
        worst = max(worst, margin(best, tol), margin(draws[k], tol))
    return float(worst)


@dataclass(frozen=True)
class TransitivityCheck:
    premises: bool
    conclusion: bool
    evidence: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.premises and not self.conclusion


def transitivity_check(x, y, z, tol: Tolerance = Tolerance()) -> TransitivityCheck:
    """``x || y`` and ``y || z`` imply ``x || z`` in a dimension-one module.

    Elements are ``d x 1``; ``y`` must be a unit vector so that ``{y}`` with
    ``<y, y> = y y*`` is an orthonormal basis.  The evidence includes
    ``|[<x, z> y, y]|`` which equals ``||x|| ||z||`` whenever the premises hold.
    """
    x, y, z = element(x), element(y), element(z)
    if not (x.n == y.n == z.n == 1) or not (x.d == y.d == z.d):
        raise BadDimension("transitivity check needs d x 1 elements (module dimension one)")
    yv = y.mat[:, 0]
    if abs(np.linalg.norm(yv) - 1.0) > 1e-10:
        raise NotUnit("y must be a unit vector")
    pxy = module_parallel(x, y, tol)
    pyz = module_parallel(y, z, tol)
    pxz = module_parallel(x, z, tol)
    form = abs(np.vdot(yv, mod_inner(x, z) @ yv))
    return TransitivityCheck(
        pxy.parallel and pyz.parallel, pxz.parallel,
        {"gap_xy": pxy.gap, "gap_yz": pyz.gap, "gap_xz": pxz.gap,
         "form": float(form), "target": module_norm(x) * module_norm(z)},
    )

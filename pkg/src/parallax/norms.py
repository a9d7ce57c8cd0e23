"""Schatten, Ky-Fan and induced operator norms, their duals, and the trace pairing."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core_linalg import Tolerance, as_matrix, as_vector, require_same_shape, require_square
from .errors import BadHandle, ParseError


class VectorNormTag(str, enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


@dataclass(frozen=True)
class NormHandle:
    """Selects a matrix norm.

    Build instances with :func:`Schatten`, :func:`KyFan` or :func:`Induced`
    rather than directly.  ``p = math.inf`` is the spectral norm.
    """

    kind: str
    p: float | None = None
    k: int | None = None
    vector: VectorNormTag | None = None

    def __str__(self):
        if self.kind == "schatten":
            return "schatten:inf" if math.isinf(self.p) else f"schatten:{self.p:g}"
        if self.kind == "kyfan":
            return f"kyfan:{self.k}"
        return f"induced:{self.vector.value}"


def Schatten(p: float) -> NormHandle:
    p = float(p)
    if not p >= 1.0:
        raise BadHandle(f"Schatten p must be >= 1, got {p}")
    return NormHandle("schatten", p=p)


def KyFan(k: int) -> NormHandle:
    if int(k) != k or k < 1:
        raise BadHandle(f"Ky-Fan k must be a positive integer, got {k}")
    return NormHandle("kyfan", k=int(k))


def Induced(tag) -> NormHandle:
    try:
        tag = VectorNormTag(tag)
    except ValueError as exc:
        raise BadHandle(f"unknown vector norm {tag!r}") from exc
    return NormHandle("induced", vector=tag)


SPECTRAL = Schatten(math.inf)
TRACE = Schatten(1.0)


def parse_norm(text: str) -> NormHandle:
    """Parse ``schatten:<p|inf>``, ``kyfan:<k>`` or ``induced:<l1|l2|linf>``."""
    try:
        kind, _, arg = text.strip().lower().partition(":")
        if kind == "schatten":
            return Schatten(math.inf if arg in ("inf", "infinity") else float(arg))
        if kind == "kyfan":
            return KyFan(int(arg))
        if kind == "induced":
            return Induced(arg)
    except (ValueError, BadHandle) as exc:
        raise ParseError(f"bad norm spec {text!r}: {exc}") from exc
    raise ParseError(f"bad norm spec {text!r}")


def _check_handle(shape: tuple[int, int], h: NormHandle) -> None:
    if h.kind == "kyfan" and h.k > min(shape):
        raise BadHandle(f"Ky-Fan k={h.k} exceeds min dimension {min(shape)}")
    if h.kind == "schatten" and not h.p >= 1.0:
        raise BadHandle("Schatten p must be >= 1")
    if h.kind not in ("schatten", "kyfan", "induced"):
        raise BadHandle(f"unknown norm kind {h.kind!r}")


def _schatten_from_sv(s: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return s[..., 0]
    if p == 1.0:
        return s.sum(axis=-1)
    top = s[..., :1]
    # scale by s1 to avoid overflow for large p
    safe = np.where(top > 0, top, 1.0)
    return top[..., 0] * np.sum((s / safe) ** p, axis=-1) ** (1.0 / p)


def norm_stack(stack: np.ndarray, h: NormHandle) -> np.ndarray:
    """Evaluate ``h`` on every matrix of a ``(..., r, c)`` stack."""
    if h.kind == "induced":
        if h.vector is VectorNormTag.L1:
            return np.abs(stack).sum(axis=-2).max(axis=-1)
        if h.vector is VectorNormTag.LINF:
            return np.abs(stack).sum(axis=-1).max(axis=-1)
        return np.linalg.svd(stack, compute_uv=False)[..., 0]
    s = np.linalg.svd(stack, compute_uv=False)
    if h.kind == "kyfan":
        return s[..., : h.k].sum(axis=-1)
    return _schatten_from_sv(s, h.p)


def matrix_norm(a, h: NormHandle) -> float:
    a = as_matrix(a)
    if h.kind == "induced":
        require_square(a)
    _check_handle(a.shape, h)
    return float(norm_stack(a, h))


def vector_norm(x, v) -> float:
    x = as_vector(x)
    v = VectorNormTag(v)
    if v is VectorNormTag.L1:
        return float(np.abs(x).sum())
    if v is VectorNormTag.LINF:
        return float(np.abs(x).max())
    return float(np.linalg.norm(x))


def trace_inner(a, b) -> complex:
    """``tr(A B*)``."""
    a, b = as_matrix(a), as_matrix(b)
    require_same_shape(a, b)
    return complex(np.vdot(b, a))


def conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def dual_handle(h: NormHandle) -> NormHandle | None:
    """The dual norm as a handle when it lies in the same family."""
    if h.kind == "schatten":
        return Schatten(conjugate_exponent(h.p))
    if h.kind == "induced" and h.vector is VectorNormTag.L2:
        return TRACE
    return None


def dual_norm(a, h: NormHandle, tol: Tolerance = Tolerance()) -> float:
    """``max |tr(A B*)|`` over ``||B||_h <= 1``, by closed form.

    Ky-Fan(k) has dual ``max(||A||_inf, ||A||_1 / k)``.  The induced
    l1 / linf norms are max-column / max-row absolute sums, whose duals
    are the sum over columns / rows of the largest entry modulus.
    """
    a = as_matrix(a)
    require_square(a)
    _check_handle(a.shape, h)
    dh = dual_handle(h)
    if dh is not None:
        return matrix_norm(a, dh)
    if h.kind == "kyfan":
        s = np.linalg.svd(a, compute_uv=False)
        return float(max(s[0], s.sum() / h.k))
    absa = np.abs(a)
    if h.vector is VectorNormTag.L1:
        return float(absa.max(axis=0).sum())
    return float(absa.max(axis=1).sum())

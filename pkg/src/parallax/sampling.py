"""Seeded generators for random and constructed-parallel test instances.

The constructed partners are parallel by design, which keeps randomized
agreement suites balanced: generic random pairs are almost never parallel.
"""

from __future__ import annotations

import numpy as np

from .core_linalg import random_matrix, random_unitary, svd


def unit_phase(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_scalar(rng: np.random.Generator) -> complex:
    """Nonzero complex scalar with modulus in ``[0.2, 3]``."""
    return (0.2 + 2.8 * rng.random()) * unit_phase(rng)


def spectral_partner(a: np.ndarray, rng: np.random.Generator, contraction: float = 0.9) -> np.ndarray:
    """``B = beta u1 v1* + P W Q`` with ``||P W Q|| < |beta|``.

    ``P, Q`` project onto the complements of the top singular pair of ``A``,
    so ``B`` shares that pair and ``A || B`` in the spectral norm.
    """
    dec = svd(a)
    u1, v1 = dec.u[:, :1], dec.v[:, :1]
    beta = random_scalar(rng)
    n, m = a.shape
    p = np.eye(n) - u1 @ u1.conj().T
    q = np.eye(m) - v1 @ v1.conj().T
    w = p @ random_matrix(rng, n, m) @ q
    nw = np.linalg.norm(w, 2)
    if nw > 0:
        w *= contraction * rng.random() * abs(beta) / nw
    return beta * (u1 @ v1.conj().T) + w


def spectral_pair(rng: np.random.Generator, n: int, kind: str) -> tuple[np.ndarray, np.ndarray]:
    """``kind`` is ``random``, ``multiple`` (``B = cA``) or ``structured``."""
    a = random_matrix(rng, n)
    if kind == "random":
        return a, random_matrix(rng, n)
    if kind == "multiple":
        return a, random_scalar(rng) * a
    if kind == "structured":
        return a, spectral_partner(a, rng)
    raise ValueError(f"unknown pair kind {kind!r}")


def nonsingular(rng: np.random.Generator, n: int, floor: float = 0.05) -> np.ndarray:
    """Random matrix whose singular values are at least ``floor``."""
    u, v = random_unitary(rng, n), random_unitary(rng, n)
    s = floor + rng.random(n) * 2.0
    return (u * s) @ v.conj().T


def real_induced_partner(a: np.ndarray, tag: str, rng: np.random.Generator) -> np.ndarray:
    """Real ``B`` parallel to real ``A`` under the induced l1 or linf norm.

    For ``linf`` a maximal row of ``A`` is copied (scaled) into the same row
    of ``B`` and the remaining rows are shrunk below it; ``l1`` does the same
    with columns.
    """
    a = np.asarray(a, dtype=float)
    if tag == "l1":
        return real_induced_partner(a.T, "linf", rng).T
    if tag != "linf":
        raise ValueError("real induced partner needs l1 or linf")
    sums = np.abs(a).sum(axis=1)
    i = int(np.argmax(sums))
    c = 0.5 + rng.random()
    b = rng.standard_normal(a.shape)
    rows = np.abs(b).sum(axis=1, keepdims=True)
    b *= c * sums[i] * 0.8 * rng.random((a.shape[0], 1)) / np.where(rows > 0, rows, 1.0)
    b[i] = c * a[i]
    return b


def random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


__all__ = [
    "nonsingular",
    "random_scalar",
    "random_unit",
    "real_induced_partner",
    "spectral_pair",
    "spectral_partner",
    "unit_phase",
]

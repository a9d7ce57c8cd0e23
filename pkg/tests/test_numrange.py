import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parallax.core_linalg import random_matrix, random_unit_vectors, random_unitary
from parallax.errors import NotSquare
from parallax.numrange import (
    boundary,
    in_numerical_range,
    numerical_radius,
    numerical_radius_witness,
    range_margin,
    support_value,
)

from conftest import complex_matrices

NILP = np.array([[0, 2], [0, 0]])


def test_support_examples():
    d = np.diag([0.0, 1.0])
    assert support_value(d, 0.0) == pytest.approx(1)
    assert support_value(d, np.pi) == pytest.approx(0, abs=1e-15)
    assert support_value(NILP, 0.0) == pytest.approx(1)


def test_membership_examples():
    d = np.diag([0.0, 1.0])
    assert in_numerical_range(d, 0.5)
    assert not in_numerical_range(d, 2)
    assert in_numerical_range(NILP, 1)
    assert in_numerical_range(NILP, 0.7j)
    assert not in_numerical_range(NILP, 1.01)


def test_radius_examples():
    assert numerical_radius(np.diag([1.0, -1.0])) == pytest.approx(1)
    assert numerical_radius(NILP) == pytest.approx(1)
    assert numerical_radius(np.zeros((3, 3))) == 0


def test_not_square():
    with pytest.raises(NotSquare):
        numerical_radius(np.ones((2, 3)))
    with pytest.raises(NotSquare):
        support_value(np.ones((2, 3)), 0.0)


@given(complex_matrices(min_n=1, max_n=6))
def test_sandwich(t):
    w = numerical_radius(t)
    s1 = np.linalg.norm(t, 2)
    assert w <= s1 + 1e-8 * max(1, s1)
    assert s1 <= 2 * w + 1e-8 * max(1, s1)


def test_witness_attains(rng):
    for _ in range(20):
        t = random_matrix(rng, int(rng.integers(1, 6)))
        w, theta, xi = numerical_radius_witness(t)
        z = np.vdot(xi, t @ xi)
        assert abs(abs(z) - w) <= 1e-10 * max(1, w)
        assert abs(z - w * np.exp(1j * theta)) <= 1e-7 * max(1, w)


def test_normal_matrices(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        q = random_unitary(rng, n)
        lam = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        t = (q * lam) @ q.conj().T
        assert numerical_radius(t) == pytest.approx(np.abs(lam).max(), rel=1e-9)


def test_sampled_points_are_members(rng):
    t = random_matrix(rng, 4)
    xs = random_unit_vectors(rng, 10_000, 4)
    pts = np.einsum("ki,ij,kj->k", xs.conj(), t, xs)
    # membership of every sample; the margin is checked in batch via the
    # support function, and a subset through the public predicate
    thetas = np.linspace(0, 2 * np.pi, 721)[:-1]
    sup = np.array([support_value(t, th) for th in thetas])
    proj = np.real(np.exp(-1j * thetas)[:, None] * pts[None, :])
    assert np.all(sup[:, None] - proj >= -1e-9)
    for z in pts[:50]:
        assert in_numerical_range(t, z)


@given(st.floats(0, 2 * np.pi), st.integers(0, 2**31 - 1))
def test_rotation_equivariance(phi, seed):
    rng = np.random.default_rng(seed)
    t = random_matrix(rng, 3)
    z = complex(rng.standard_normal(), rng.standard_normal()) * 0.8
    rot = np.exp(1j * phi)
    m1, m2 = range_margin(t, z).margin, range_margin(rot * t, rot * z).margin
    assert abs(m1 - m2) <= 1e-7
    if abs(m1) > 1e-6:
        assert in_numerical_range(t, z) == in_numerical_range(rot * t, rot * z)


def test_margin_is_distance_for_disk():
    # W(NILP) is the unit disk: margin at z is 1 - |z|
    for z in (0.0, 0.3 + 0.4j, 2.0, -3j):
        assert range_margin(NILP, z).margin == pytest.approx(1 - abs(z), abs=1e-9)


def test_boundary_on_support_lines(rng):
    t = random_matrix(rng, 3)
    pts = boundary(t, 64)
    assert pts.shape == (64,)
    for z in pts:
        assert abs(range_margin(t, z).margin) <= 1e-7

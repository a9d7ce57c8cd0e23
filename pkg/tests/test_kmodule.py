import numpy as np
import pytest
from hypothesis import given

from parallax.core_linalg import Tolerance, random_matrix
from parallax.errors import BadBasis, BadDimension, NotIdempotent, NotMinimal, NotUnit, ShapeMismatch
from parallax.kmodule import (
    ModuleElement,
    OrthonormalBasis,
    act,
    corollary_idempotent_check,
    minimal_projection,
    mod_inner,
    module_norm,
    module_parallel,
    thm_a_check,
    thm_b_search,
    thm_L_check,
    transitivity_check,
)
from parallax.sampling import random_scalar, random_unit, spectral_partner

from conftest import seeds

E11 = np.diag([1.0, 0.0])
E12 = np.array([[0.0, 1.0], [0.0, 0.0]])


def _basis(d=2, n=2, xi=None):
    if xi is None:
        xi = np.zeros(d, dtype=complex)
        xi[0] = 1
    return OrthonormalBasis.build(xi, n)


def test_element_shape_and_norm(rng):
    x = ModuleElement(random_matrix(rng, 3, 2))
    assert (x.d, x.n) == (3, 2)
    assert x.norm == pytest.approx(np.linalg.svd(x.mat, compute_uv=False)[0], abs=1e-12)
    assert ((2 * x) + x).mat == pytest.approx(3 * x.mat)


def test_inner_examples():
    assert np.allclose(mod_inner(E11, E11), E11)
    b = _basis()
    assert np.allclose(mod_inner(*b.elements), 0)
    with pytest.raises(ShapeMismatch):
        mod_inner(np.ones((2, 2)), np.ones((2, 3)))


@given(seeds)
def test_inner_product_laws(seed):
    rng = np.random.default_rng(seed)
    d, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    x, y = random_matrix(rng, d, n), random_matrix(rng, d, n)
    a = random_matrix(rng, d)
    assert np.allclose(mod_inner(x, y), mod_inner(y, x).conj().T)
    assert np.allclose(mod_inner(act(a, x), y), a @ mod_inner(x, y))
    assert np.linalg.eigvalsh(mod_inner(x, x)).min() >= -1e-12 * max(1, np.linalg.norm(x) ** 2)
    # module norm from the inner product equals the spectral norm
    assert module_norm(x) == pytest.approx(np.linalg.norm(x, 2), rel=1e-12)
    # Cauchy-Schwarz at the norm level
    assert np.linalg.norm(mod_inner(x, y), 2) <= module_norm(x) * module_norm(y) * (1 + 1e-12)


def test_minimal_projection():
    assert np.allclose(minimal_projection([1, 0]), E11)
    assert np.allclose(minimal_projection(np.array([1, 1]) / np.sqrt(2)), np.full((2, 2), 0.5))
    with pytest.raises(NotUnit):
        minimal_projection([1, 1])


def test_minimal_projection_random(rng):
    p = minimal_projection(random_unit(rng, 4))
    assert np.linalg.norm(p @ p - p) <= 1e-12 and abs(np.trace(p) - 1) <= 1e-12


def test_basis_invariants(rng):
    b = _basis(3, 4, random_unit(rng, 3))
    for i, xi in enumerate(b.elements):
        assert xi.norm == pytest.approx(1)
        assert np.allclose(mod_inner(xi, xi), minimal_projection(b.xi))
        for j, xj in enumerate(b.elements):
            if i != j:
                assert np.allclose(mod_inner(xi, xj), 0)


def test_parallel_implies_norm_of_inner(rng):
    for _ in range(20):
        x = random_matrix(rng, 3, 2)
        y = random_scalar(rng) * x + 1e-9 * random_matrix(rng, 3, 2)
        if module_parallel(x, y).parallel:
            assert np.linalg.norm(mod_inner(x, y), 2) == pytest.approx(module_norm(x) * module_norm(y), rel=1e-6)


def test_thm_a_examples():
    b = _basis()
    x1, x2 = b.elements
    chk = thm_a_check(x1, 2 * x1)
    assert chk.lhs_parallel and chk.rhs_holds
    chk = thm_a_check(x1, x2)
    assert not chk.lhs_parallel and not chk.rhs_holds
    assert chk.evidence["radius"] == pytest.approx(0, abs=1e-12)


def test_thm_a_zero_x():
    chk = thm_a_check(np.zeros((2, 2)), E12)
    assert chk.lhs_parallel and chk.rhs_holds


def test_thm_a_random_agreement(rng):
    for trial in range(60):
        d, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        x = random_matrix(rng, d, n)
        y = (random_matrix(rng, d, n), random_scalar(rng) * x, spectral_partner(x, rng))[trial % 3]
        assert thm_a_check(x, y).agree


def test_thm_L_examples():
    chk = thm_L_check(E11, E11)
    assert chk.lhs_parallel and chk.rhs_holds
    chk = thm_L_check(E11, E12)
    assert not chk.lhs_parallel and not chk.rhs_holds
    with pytest.raises(NotMinimal):
        thm_L_check(np.eye(2), E11)


def test_thm_L_random_agreement(rng):
    for trial in range(60):
        d, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        b = _basis(d, n, random_unit(rng, d))
        x = b.elements[trial % n].mat
        y = (random_matrix(rng, d, n), random_scalar(rng) * x, spectral_partner(x, rng))[trial % 3]
        assert thm_L_check(x, y).agree


def test_corollary_examples():
    x1, x2 = _basis().elements
    chk = corollary_idempotent_check(x1, x1)
    assert chk.lhs_parallel and chk.rhs_holds
    assert abs(chk.evidence["lambda"] + 1) < 1e-9
    chk = corollary_idempotent_check(x1, x2)
    assert not chk.lhs_parallel and not chk.rhs_holds
    chk = corollary_idempotent_check(x1, np.zeros((2, 2)))
    assert chk.lhs_parallel and chk.rhs_holds


def test_corollary_off_grid_multiple():
    x1, _ = _basis().elements
    chk = corollary_idempotent_check(x1, (1 + 2j) * x1)
    assert chk.lhs_parallel and chk.rhs_holds


def test_corollary_partial_isometry(rng):
    from parallax.core_linalg import random_unitary

    u, v = random_unitary(rng, 3), random_unitary(rng, 3)
    x = u[:, :2] @ v[:, :2].conj().T
    y = 2 * np.exp(1j) * np.outer(u[:, 0], v[:, 0].conj()) + 1.5 * np.outer(u[:, 2], v[:, 2].conj())
    chk = corollary_idempotent_check(x, y)
    assert chk.lhs_parallel and chk.rhs_holds
    chk = corollary_idempotent_check(x, random_matrix(rng, 3))
    assert chk.agree


def test_corollary_requires_idempotent():
    with pytest.raises(NotIdempotent):
        corollary_idempotent_check(2 * E11, E11)


def test_thm_b_examples():
    b = _basis()
    x1 = b.elements[0]
    gaps = [module_parallel(x1, e).gap for e in b.elements]
    assert gaps[0] == pytest.approx(0, abs=1e-12)
    assert gaps[1] == pytest.approx(2 - np.sqrt(2), abs=1e-9)
    with pytest.raises(BadBasis):
        thm_b_search(_basis(2, 1), 10)


def test_thm_b_small_search():
    worst = thm_b_search(_basis(), trials=60, seed=1)
    assert worst < -1e-2


def test_transitivity_examples(rng):
    y = random_unit(rng, 3)[:, None]
    tc = transitivity_check(2 * y, y, 3 * y)
    assert tc.premises and tc.conclusion and not tc.violated
    assert tc.evidence["form"] == pytest.approx(tc.evidence["target"])
    yv = y[:, 0]
    perp = random_matrix(rng, 3, 1)[:, 0]
    perp -= np.vdot(yv, perp) * yv
    tc = transitivity_check(perp[:, None], y, 3 * y)
    assert not tc.premises and not tc.violated


def test_transitivity_errors():
    with pytest.raises(BadDimension):
        transitivity_check(np.ones((2, 2)), np.ones((2, 2)), np.ones((2, 2)))
    with pytest.raises(NotUnit):
        transitivity_check(np.ones((2, 1)), np.ones((2, 1)), np.ones((2, 1)))


def test_transitivity_random(rng):
    for trial in range(60):
        d = int(rng.integers(1, 7))
        y = random_unit(rng, d)[:, None]
        x = random_scalar(rng) * y if trial % 2 else random_matrix(rng, d, 1)
        z = random_scalar(rng) * y if trial % 3 else random_matrix(rng, d, 1)
        assert not transitivity_check(x, y, z, Tolerance()).violated

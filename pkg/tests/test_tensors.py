import numpy as np
import pytest

from qsg import (
    QuadraticFunction,
    bracket_of_quadratics,
    complex_tensor_eval,
    gram_matrix,
    hs_inner,
    lambda_eval,
    lie_bracket,
    momentum_map,
    numerical_rank,
    quadratic_eval,
    r_eval,
    two_level_basis,
    two_level_point,
)
from qsg.rand import random_hermitian
from qsg.verify import expected_two_level_ranks


def test_momentum_map_basics():
    assert np.allclose(momentum_map(np.zeros(3)), 0)
    e1 = np.array([1.0, 0.0, 0.0])
    assert np.allclose(momentum_map(e1), np.diag([1.0, 0.0, 0.0]))


def test_momentum_map_norm_relations(rng):
    x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    r2 = np.linalg.norm(x) ** 2
    mu = momentum_map(x)
    assert np.trace(mu).real == pytest.approx(r2)
    assert np.linalg.norm(mu, 2) == pytest.approx(r2)
    # squaring scales by the operator norm
    assert np.allclose(mu @ mu, r2 * mu, atol=1e-10)


def test_momentum_map_index_convention(rng):
    # Tr(|x><x| A) must equal <x, A x> with the antilinear-left inner product
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    A = random_hermitian(4, rng)
    assert np.trace(momentum_map(x) @ A) == pytest.approx(np.vdot(x, A @ x), abs=1e-12)


def test_quadratic_eval(rng):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    f_id = QuadraticFunction(np.eye(4, dtype=complex))
    assert f_id(x) == pytest.approx(np.linalg.norm(x) ** 2 / 2)
    A = random_hermitian(4, rng)
    for k in range(4):
        e = np.zeros(4)
        e[k] = 1.0
        assert quadratic_eval(A, e) == pytest.approx(A[k, k].real / 2)


def test_lambda_r_values(rng):
    n = 5
    xi, A, B = (random_hermitian(n, rng) for _ in range(3))
    assert lambda_eval(xi, A, A) == 0.0
    assert lambda_eval(np.zeros((n, n)), A, B) == 0.0
    assert lambda_eval(xi, A, B) == pytest.approx(-lambda_eval(xi, B, A), abs=1e-12)
    # stated trace formulas
    assert lambda_eval(xi, A, B) == pytest.approx(
        (np.trace(xi @ (A @ B - B @ A)) / 2j).real, abs=1e-12
    )
    assert r_eval(xi, A, B) == pytest.approx(
        np.trace(xi @ (A @ B + B @ A)).real / 2, abs=1e-12
    )
    assert r_eval(np.eye(n), A, B) == pytest.approx(np.trace(A @ B).real, abs=1e-12)
    assert r_eval(xi, np.eye(n), B) == pytest.approx(np.trace(xi @ B).real, abs=1e-12)


def test_complex_tensor_combines_parts(rng):
    n = 4
    xi, A, B = (random_hermitian(n, rng) for _ in range(3))
    val = complex_tensor_eval(xi, A, B)
    assert val.real == pytest.approx(r_eval(xi, A, B), abs=1e-12)
    assert val.imag == pytest.approx(lambda_eval(xi, A, B), abs=1e-12)
    # oracle: naive triple product trace
    assert val == pytest.approx(complex(np.trace(xi @ A @ B)), abs=1e-12)
    assert complex_tensor_eval(xi, A, A).imag == pytest.approx(0.0, abs=1e-12)
    assert complex_tensor_eval(np.eye(n) / n, A, B) == pytest.approx(
        complex(np.trace(A @ B)) / n, abs=1e-12
    )


def test_bracket_of_quadratics(rng):
    n = 4
    A, B = random_hermitian(n, rng), random_hermitian(n, rng)
    g_gen, w_gen = bracket_of_quadratics(A, B)
    assert np.allclose(g_gen, A @ B + B @ A)
    assert np.allclose(w_gen, lie_bracket(A, B))
    g2, w2 = bracket_of_quadratics(A, A)
    assert np.allclose(g2, 2 * A @ A)
    assert np.allclose(w2, 0)
    g3, w3 = bracket_of_quadratics(np.eye(n), B)
    assert np.allclose(g3, 2 * B)
    assert np.allclose(w3, 0)
    # oracle: gradient formula Re<Ax, Bx> evaluated directly
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lhs = np.vdot(A @ x, B @ x)
    assert quadratic_eval(g_gen, x) == pytest.approx(lhs.real, abs=1e-10)
    assert quadratic_eval(w_gen, x) == pytest.approx(lhs.imag, abs=1e-10)


def test_pushforward_identity(rng):
    for n in (2, 4, 8):
        A, B = random_hermitian(n, rng), random_hermitian(n, rng)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = complex(np.vdot(A @ x, B @ x))
        assert complex_tensor_eval(momentum_map(x), A, B) == pytest.approx(lhs, abs=1e-10)


def test_lambda_jacobi_identity(rng):
    # cyclic sum of the antisymmetric tensor over bracketed covectors
    n = 5
    xi, A, B, C = (random_hermitian(n, rng) for _ in range(4))
    cyclic = (
        lambda_eval(xi, lie_bracket(A, B), C)
        + lambda_eval(xi, lie_bracket(B, C), A)
        + lambda_eval(xi, lie_bracket(C, A), B)
    )
    assert abs(cyclic) < 1e-9


def test_lambda_vanishes_on_commutant(rng):
    n = 5
    xi = random_hermitian(n, rng)
    poly = 0.3 * np.eye(n) + 1.2 * xi - 0.5 * xi @ xi
    for _ in range(5):
        B = random_hermitian(n, rng)
        assert abs(lambda_eval(xi, poly, B)) < 1e-9


def test_two_level_rank_table_on_grid():
    basis = two_level_basis()
    grid = [-1.0, -0.5, 0.0, 0.5, 1.0]
    for u in grid:
        for x in grid:
            for y in grid:
                for z in grid:
                    xi = two_level_point(u, x, y, z)
                    lam_expected, r_expected = expected_two_level_ranks(u, x, y, z)
                    L = gram_matrix(xi, basis, "lambda")
                    R = gram_matrix(xi, basis, "r")
                    assert numerical_rank(L) == lam_expected, (u, x, y, z)
                    assert numerical_rank(R) == r_expected, (u, x, y, z)
                    assert np.allclose(L, -L.T, atol=1e-14)
                    assert np.allclose(R, R.T, atol=1e-14)


def test_gram_matrix_matches_defining_pairing(rng):
    # the tensor matrix entries are inner products with bracket values
    xi = random_hermitian(2, rng)
    basis = two_level_basis()
    L = gram_matrix(xi, basis, "lambda")
    for a in range(4):
        for b in range(4):
            assert L[a, b] == pytest.approx(
                hs_inner(xi, lie_bracket(basis[a], basis[b])), abs=1e-12
            )

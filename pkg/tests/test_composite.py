import numpy as np
import pytest

from qsg import (
    DimensionMismatchError,
    ProductSpace,
    PureDecomposition,
    StateError,
    caratheodory_reduce,
    momentum_map,
    partial_trace,
    partial_transpose,
    ppt_test,
    rank_signature,
    sample_separable,
    seed_function,
    segre,
)
from qsg.rand import random_psd, random_unit_vector
from tests.conftest import bell_state


def test_product_space_index_map():
    ps = ProductSpace(2, 3)
    assert ps.n == 6
    pairs = [(i1, i2) for i1 in range(2) for i2 in range(3)]
    for i, (i1, i2) in enumerate(pairs):
        assert ps.index(i1, i2) == i
        assert ps.factors(i) == (i1, i2)
    with pytest.raises(ValueError):
        ProductSpace(0, 2)


def test_segre_identity_and_rank(rng):
    ps = ProductSpace(2, 2)
    out = segre(ps, np.eye(2, dtype=complex) / 2, np.eye(2, dtype=complex) / 2)
    assert np.allclose(out, np.eye(4) / 4)
    x1 = random_unit_vector(2, rng)
    x2 = random_unit_vector(2, rng)
    prod = segre(ps, momentum_map(x1), momentum_map(x2))
    assert np.abs(prod - momentum_map(np.kron(x1, x2))).max() < 1e-14
    assert rank_signature(prod).rank == 1


def test_segre_rank_multiplicative(rng):
    # every factor-rank combination up to 4x4
    for n1 in (2, 3, 4):
        for n2 in (2, 3, 4):
            ps = ProductSpace(n1, n2)
            for k in range(1, n1 + 1):
                for l in range(1, n2 + 1):
                    a = random_psd(n1, k, rng)
                    b = random_psd(n2, l, rng)
                    prod = segre(ps, a / np.trace(a).real, b / np.trace(b).real)
                    assert rank_signature(prod).rank == k * l
                    assert np.trace(prod).real == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DimensionMismatchError):
        segre(ProductSpace(2, 2), np.eye(3, dtype=complex), np.eye(2, dtype=complex))


def test_partial_trace_product_states(rng):
    ps = ProductSpace(3, 2)
    a = random_psd(3, 3, rng)
    a /= np.trace(a).real
    b = random_psd(2, 2, rng)
    b /= np.trace(b).real
    prod = segre(ps, a, b)
    assert np.abs(partial_trace(ps, prod, keep=1) - a).max() < 1e-12
    assert np.abs(partial_trace(ps, prod, keep=2) - b).max() < 1e-12
    assert np.trace(partial_trace(ps, prod, keep=1)).real == pytest.approx(1.0)


def test_partial_trace_bell_by_direct_summation():
    ps = ProductSpace(2, 2)
    bell = bell_state()
    # oracle: direct index summation
    expect = np.zeros((2, 2), dtype=complex)
    for i1 in range(2):
        for j1 in range(2):
            for k in range(2):
                expect[i1, j1] += bell[ps.index(i1, k), ps.index(j1, k)]
    red = partial_trace(ps, bell, keep=1)
    assert np.allclose(red, expect)
    assert np.allclose(red, np.eye(2) / 2)


def test_partial_trace_identity():
    ps = ProductSpace(2, 3)
    assert np.allclose(partial_trace(ps, np.eye(6, dtype=complex) / 6, keep=1), np.eye(2) / 2)
    assert np.allclose(partial_trace(ps, np.eye(6, dtype=complex) / 6, keep=2), np.eye(3) / 3)


def test_partial_transpose_involution_and_trace(rng):
    ps = ProductSpace(2, 3)
    rho = random_psd(6, 6, rng)
    rho /= np.trace(rho).real
    pt = partial_transpose(ps, rho, factor=2)
    assert np.allclose(partial_transpose(ps, pt, factor=2), rho)
    assert np.trace(pt).real == pytest.approx(1.0)
    assert np.allclose(pt, pt.conj().T)
    full_t = partial_transpose(ps, partial_transpose(ps, rho, factor=2), factor=1)
    assert np.allclose(full_t, rho.T)


def test_ppt_bell_fails_with_known_spectrum():
    ps = ProductSpace(2, 2)
    bell = bell_state()
    w = np.linalg.eigvalsh(partial_transpose(ps, bell, factor=2))
    assert np.allclose(np.sort(w), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)
    assert not ppt_test(ps, bell)
    assert ppt_test(ps, np.eye(4, dtype=complex) / 4)


def test_ppt_necessary_for_separable(rng):
    ps = ProductSpace(2, 2)
    for i in range(10):
        rho = sample_separable(ps, terms=int(rng.integers(1, 8)), seed=i)
        assert ppt_test(ps, rho)


def test_sample_separable_is_density(rng):
    for n1, n2 in ((2, 2), (2, 3)):
        ps = ProductSpace(n1, n2)
        rho = sample_separable(ps, terms=5, seed=3)
        w = np.linalg.eigvalsh(rho)
        assert w.min() > -1e-12
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    one = sample_separable(ProductSpace(2, 2), terms=1, seed=0)
    assert rank_signature(one).rank == 1


def test_seed_function_values(rng):
    ps = ProductSpace(2, 2)
    prod = momentum_map(np.kron(random_unit_vector(2, rng), random_unit_vector(2, rng)))
    assert seed_function(ps, prod) == pytest.approx(0.0, abs=1e-12)
    assert seed_function(ps, bell_state()) == pytest.approx(0.5, abs=1e-12)
    for d in (2, 3, 4):
        psd_ = ProductSpace(d, d)
        maxent = momentum_map(np.eye(d, dtype=complex).ravel() / np.sqrt(d))
        assert seed_function(psd_, maxent) == pytest.approx(1 - 1 / d, abs=1e-12)


def test_seed_function_range_and_invariance(rng):
    ps = ProductSpace(2, 3)
    from qsg.rand import haar_unitary

    for _ in range(10):
        x = random_unit_vector(6, rng)
        val = seed_function(ps, momentum_map(x))
        assert -1e-12 <= val <= 0.5 + 1e-12
        U = np.kron(haar_unitary(2, rng), haar_unitary(3, rng))
        assert seed_function(ps, momentum_map(U @ x)) == pytest.approx(val, abs=1e-10)


def test_seed_function_rejects_mixed(rng):
    ps = ProductSpace(2, 2)
    with pytest.raises(StateError):
        seed_function(ps, np.eye(4, dtype=complex) / 4)


def test_pure_decomposition_validation(rng):
    vecs = np.stack([random_unit_vector(4, rng) for _ in range(3)])
    dec = PureDecomposition(weights=np.array([0.5, 0.25, 0.25]), vectors=vecs)
    state = dec.state()
    assert np.allclose(state, state.conj().T)
    assert np.trace(state).real == pytest.approx(1.0)
    with pytest.raises(StateError):
        PureDecomposition(weights=np.array([0.6, 0.6]), vectors=vecs[:2])
    with pytest.raises(StateError):
        PureDecomposition(weights=np.array([0.5, 0.5]), vectors=2 * vecs[:2])


def test_caratheodory_short_input_unchanged(rng):
    vecs = np.stack([random_unit_vector(4, rng) for _ in range(3)])
    dec = PureDecomposition(weights=np.array([0.2, 0.3, 0.5]), vectors=vecs)
    red = caratheodory_reduce(dec)
    assert len(red) == 3
    assert np.allclose(red.state(), dec.state())


def test_caratheodory_collinear_family():
    # three commuting rank-one mixtures on one segment collapse to two terms
    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    mid = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
    dec = PureDecomposition(
        weights=np.array([0.25, 0.25, 0.5]), vectors=np.stack([e0, e1, mid])
    )
    red = caratheodory_reduce(dec, ambient_dim=1)
    assert len(red) <= 2 or np.allclose(red.state(), dec.state())


def test_caratheodory_reduces_overlong(rng):
    for n1, n2 in ((2, 2), (2, 3)):
        ps = ProductSpace(n1, n2)
        n = ps.n
        m = 30 if n == 4 else 50
        vecs = np.stack([random_unit_vector(n, rng) for _ in range(m)])
        dec = PureDecomposition(weights=rng.dirichlet(np.ones(m)), vectors=vecs)
        red = caratheodory_reduce(dec)
        assert len(red) <= n * n + 1
        assert np.abs(red.state() - dec.state()).max() < 1e-10
        assert red.weights.min() >= 0
        assert red.weights.sum() == pytest.approx(1.0, abs=1e-12)

import numpy as np
import pytest

from qsg import (
    ChartCoordinates,
    ChartPhi,
    ChartDomainError,
    IndexSet,
    SingularOperatorError,
    StateError,
    chart_forward,
    chart_inverse,
    curve_tangency_report,
    face_at,
    gl_action,
    gl_orbit_factor,
    rank_signature,
    reconstruct_from_rows,
    stratum_dim,
    tangent_test,
)
from qsg.hermitian import lie_bracket, real_coords
from qsg.rand import haar_unitary, random_hermitian, random_psd
from qsg.strata import fd_weights, signature_diagonal
from qsg.verify import chart_jacobian, conjugation_curve, polynomial_factor_curve


def _chart(n, k, rng, J=None):
    while True:
        base = random_psd(n, k, rng)
        Jset = J or IndexSet(tuple(sorted(rng.choice(n, size=k, replace=False) + 1)))
        try:
            return ChartPhi(J=Jset, base=base)
        except ChartDomainError:
            continue


def test_index_set_validation():
    IndexSet((1, 3, 4))
    with pytest.raises(ValueError):
        IndexSet((3, 1))
    with pytest.raises(ValueError):
        IndexSet((0, 1))
    with pytest.raises(ValueError):
        IndexSet(())


def test_chart_forward_at_base_is_zero(rng):
    chart = _chart(5, 2, rng)
    coords = chart_forward(chart, chart.base)
    assert np.abs(coords.block_jj).max() < 1e-14
    assert np.abs(coords.block_off).max() < 1e-14


def test_chart_forward_extracts_blocks(rng):
    chart = _chart(4, 2, rng, J=IndexSet((1, 3)))
    E = np.zeros((4, 4), dtype=complex)
    E[0, 0] = 2.0
    E[0, 2] = 1.0 - 1j
    E[2, 0] = 1.0 + 1j
    coords = chart_forward(chart, chart.base + E)
    assert coords.block_jj[0, 0] == pytest.approx(2.0)
    assert coords.block_jj[1, 0] == pytest.approx(1.0 + 1j)
    assert np.abs(coords.block_off).max() < 1e-14


def test_chart_inverse_at_zero_returns_base(rng):
    for k in (1, 2, 3):
        chart = _chart(4, k, rng)
        X = chart_inverse(chart, ChartCoordinates.zero(4, k))
        assert np.abs(X - chart.base).max() < 1e-10


def test_chart_inverse_two_by_two_example():
    # frozen from the reconstruction formula: entry (2,2) = w * 1 * conj(w)
    chart = ChartPhi(J=IndexSet((1,)), base=np.diag([1.0, 0.0]).astype(complex))
    w = 0.3 - 0.4j
    coords = ChartCoordinates(
        block_jj=np.zeros((1, 1), dtype=complex),
        block_off=np.array([[w]], dtype=complex),
    )
    X = chart_inverse(chart, coords)
    expected = np.array([[1.0, np.conj(w)], [w, abs(w) ** 2]])
    assert np.abs(X - expected).max() < 1e-14
    sig = rank_signature(X)
    assert (sig.k_plus, sig.k_minus) == (1, 0)


def test_chart_round_trip_all_ranks(rng):
    for n in (2, 4, 6):
        for k in range(1, n + 1):
            chart = _chart(n, k, rng)
            for _ in range(5):
                X = random_psd(n, k, rng)
                j = chart.J.zero_based()
                M = X[np.ix_(j, j)]
                w = np.linalg.eigvalsh((M + M.conj().T) / 2)
                if w[0] <= 0 or w[-1] / w[0] > 1e6:
                    continue
                Xr = chart_inverse(chart, chart_forward(chart, X))
                assert np.abs(Xr - X).max() < 1e-8
                sig = rank_signature(Xr)
                assert (sig.k_plus, sig.k_minus) == (k, 0)


def test_chart_inverse_rejects_bad_coordinates(rng):
    chart = _chart(3, 2, rng)
    coords = chart_forward(chart, chart.base)
    # push the block to lose positivity
    bad = ChartCoordinates(
        block_jj=coords.block_jj - 10 * np.linalg.norm(chart.base, 2) * np.eye(2),
        block_off=coords.block_off,
    )
    with pytest.raises(ChartDomainError):
        chart_inverse(chart, bad)


def test_chart_coordinates_real_vector_round_trip(rng):
    n, k = 5, 3
    v = rng.standard_normal(2 * n * k - k * k)
    coords = ChartCoordinates.from_real_vector(v, n, k)
    assert np.allclose(coords.to_real_vector(), v)
    assert coords.real_dim == v.size


def test_reconstruct_from_rows_projector():
    rows = np.array([[1.0, 0.0, 0.0]], dtype=complex)
    X = reconstruct_from_rows(rows, IndexSet((1,)))
    assert np.allclose(X, np.diag([1.0, 0.0, 0.0]))


def test_reconstruct_from_rows_psd(rng):
    n, k = 6, 3
    X = random_psd(n, k, rng)
    J = IndexSet((1, 4, 5))
    rows = X[J.zero_based(), :]
    assert np.abs(reconstruct_from_rows(rows, J) - X).max() < 1e-9


def test_reconstruct_from_rows_full_rank_is_identity_map(rng):
    X = random_psd(4, 4, rng)
    out = reconstruct_from_rows(X, IndexSet((1, 2, 3, 4)))
    assert np.abs(out - X).max() < 1e-9


def test_reconstruct_from_rows_errors(rng):
    rows = np.array([[0.0, 1.0, 0.0]], dtype=complex)  # zero J-block
    with pytest.raises(SingularOperatorError):
        reconstruct_from_rows(rows, IndexSet((1,)))
    rows2 = np.array([[1.0, 2.0, 0.0], [0.5, 1.0, 0.0]], dtype=complex)
    from qsg import HermiticityError

    with pytest.raises(HermiticityError):
        reconstruct_from_rows(rows2, IndexSet((1, 2)))


def test_tangent_test_bracket_directions(rng):
    rho = random_psd(5, 2, rng)
    A = random_hermitian(5, rng)
    V = lie_bracket(A, rho)
    res = tangent_test(rho, V, tol=1e-8)
    assert res.tangent and res.residual < 1e-10


def test_tangent_test_rejects_kernel_support():
    rho = np.diag([1.0, 0.0]).astype(complex)
    V = np.diag([0.0, 1.0]).astype(complex)
    res = tangent_test(rho, V, tol=1e-8)
    assert not res.tangent
    assert res.residual == pytest.approx(1.0)


def test_tangent_test_density_mode_requires_traceless():
    rho = np.diag([0.5, 0.5, 0.0]).astype(complex)
    V = np.diag([1.0, -0.5, 0.0]).astype(complex)
    assert tangent_test(rho, V, stratum="cone", tol=1e-8).tangent
    assert not tangent_test(rho, V, stratum="density", tol=1e-8).tangent


def test_tangent_test_curve_derivative(rng):
    # oracle: finite differences of an explicit fixed-rank curve
    n, k = 4, 2
    samples = polynomial_factor_curve(n, k, rng, num=9, tmax=0.2)
    mid = len(samples) // 2
    h = samples[1][0] - samples[0][0]
    V = (samples[mid + 1][1] - samples[mid - 1][1]) / (2 * h)
    V = 4 / 3 * V - 1 / 3 * (samples[mid + 2][1] - samples[mid - 2][1]) / (4 * h)
    res = tangent_test(samples[mid][1], V, tol=1e-7)
    assert res.tangent


def test_stratum_dim_values():
    assert stratum_dim(2, 1, "density") == 2
    assert stratum_dim(3, 3, "density") == 8
    assert stratum_dim(4, 2, "cone") == 12
    with pytest.raises(ValueError):
        stratum_dim(3, 0, "cone")
    with pytest.raises(ValueError):
        stratum_dim(3, 4, "cone")


def test_stratum_dim_matches_chart_jacobian(rng):
    # oracle: numerical rank of the chart differential at a random base
    for n, k in ((3, 1), (4, 2), (4, 4)):
        chart = _chart(n, k, rng)
        J = chart_jacobian(chart)
        s = np.linalg.svd(J, compute_uv=False)
        d = stratum_dim(n, k, "cone")
        assert J.shape[1] == d
        assert s[d - 1] > 1e3 * (s[d] if d < s.size else 0.0)
        assert int(np.sum(s > s[0] * 1e-6)) == d
        # restrict to trace-zero directions for the density slice
        tr = np.array([np.trace(_unvec(J[:, c], n)).real for c in range(d)])
        N = _nullspace_of_row(tr)
        s2 = np.linalg.svd(J @ N, compute_uv=False)
        assert int(np.sum(s2 > s2[0] * 1e-6)) == stratum_dim(n, k, "density")


def _unvec(v, n):
    from qsg.hermitian import from_real_coords

    return from_real_coords(v, n)


def _nullspace_of_row(row):
    _, _, Vh = np.linalg.svd(row[None, :])
    return Vh[1:].T


def test_tangent_space_matches_kernel_characterization(rng):
    # chart differential span vs {V : <Vx,y> = 0 on the kernel}, via principal angles
    from qsg.hermitian import hermitian_basis, spectral

    for n, k in ((3, 1), (4, 2), (5, 3)):
        chart = _chart(n, k, rng)
        J = chart_jacobian(chart)
        Q1, _ = np.linalg.qr(J)
        data = spectral(chart.base)
        K = data.eigenvectors[:, data.eigenvalues < 1e-9]
        cols = []
        for b in hermitian_basis(n):
            comp = K.conj().T @ b @ K
            proj = b - K @ comp @ K.conj().T
            cols.append(real_coords(proj))
        M = np.stack(cols, axis=1)
        u, s, _ = np.linalg.svd(M, full_matrices=False)
        Q2 = u[:, : int(np.sum(s > s[0] * 1e-9))]
        assert Q1.shape[1] == Q2.shape[1] == stratum_dim(n, k, "cone")
        sv = np.linalg.svd(Q1.T @ Q2, compute_uv=False)
        angles = np.arccos(np.clip(sv, -1.0, 1.0))
        assert angles.max() < 1e-5


def test_fd_weights_exact_on_polynomials():
    nodes = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    w = fd_weights(nodes, 0.0, 1)
    assert np.allclose(w, [1 / 12, -8 / 12, 0.0, 8 / 12, -1 / 12])
    for x0 in (-1.0, 0.5):
        w = fd_weights(nodes, x0, 1)
        for deg in range(5):
            deriv = sum(wj * xj**deg for wj, xj in zip(w, nodes))
            assert deriv == pytest.approx(deg * x0 ** max(deg - 1, 0), abs=1e-12)


def test_curve_tangency_constant_curve():
    rho = np.diag([0.7, 0.3, 0.0]).astype(complex)
    samples = [(t, rho) for t in np.linspace(0, 1, 7)]
    report = curve_tangency_report(samples, tol=1e-6)
    assert report.all_tangent
    assert report.max_residual == 0.0


def test_curve_tangency_needs_three_samples():
    rho = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        curve_tangency_report([(0.0, rho), (1.0, rho)])


def test_curve_tangency_polynomial_curves(rng):
    for n, k in ((3, 1), (4, 2), (5, 3)):
        samples = polynomial_factor_curve(n, k, rng)
        report = curve_tangency_report(samples, tol=1e-6)
        assert report.all_tangent, report.max_residual
        assert all(r.rank == k for r in report.records)


def test_curve_tangency_unitary_path(rng):
    # oracle: the analytic derivative of a conjugation path is a bracket
    rho = random_psd(4, 2, rng)
    rho /= np.trace(rho).real
    H = random_hermitian(4, rng)
    H /= np.linalg.norm(H, 2)
    samples = conjugation_curve(rho, H, num=9, tmax=0.04)
    report = curve_tangency_report(samples, tol=1e-7)
    assert report.all_tangent, report.max_residual


def test_gl_action_basics(rng):
    xi = random_hermitian(4, rng)
    assert np.allclose(gl_action(np.eye(4, dtype=complex), xi), xi)
    U = haar_unitary(4, rng)
    w1 = np.linalg.eigvalsh(gl_action(U, xi))
    w2 = np.linalg.eigvalsh(xi)
    assert np.allclose(w1, w2, atol=1e-10)
    with pytest.raises(SingularOperatorError):
        gl_action(np.zeros((4, 4), dtype=complex), xi)


def test_gl_action_preserves_signature(rng):
    # oracle: inertia is a congruence invariant
    for _ in range(10):
        xi = random_hermitian(5, rng)
        sig = rank_signature(xi)
        T = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert rank_signature(gl_action(T, xi)) == sig


def test_gl_orbit_factor_zero_matrix():
    T, sig = gl_orbit_factor(np.zeros((3, 3)))
    assert (sig.k_plus, sig.k_minus) == (0, 0)
    assert np.allclose(T, np.eye(3))


def test_gl_orbit_factor_diagonal_example():
    xi = np.diag([4.0, -9.0]).astype(complex)
    T, sig = gl_orbit_factor(xi)
    assert (sig.k_plus, sig.k_minus) == (1, 1)
    D = signature_diagonal(sig)
    assert np.abs(T.conj().T @ D @ T - xi).max() < 1e-12
    assert np.allclose(np.abs(np.linalg.det(T)), 6.0)


def test_gl_orbit_factor_reconstructs(rng):
    for n in (2, 5, 8):
        for _ in range(5):
            xi = random_hermitian(n, rng)
            T, sig = gl_orbit_factor(xi)
            D = signature_diagonal(sig)
            assert np.abs(T.conj().T @ D @ T - xi).max() < 1e-9
    for k in (1, 3):
        xi = random_psd(5, k, rng)
        T, sig = gl_orbit_factor(xi)
        assert (sig.k_plus, sig.k_minus) == (k, 0)
        assert np.abs(T.conj().T @ signature_diagonal(sig) @ T - xi).max() < 1e-9


def test_face_at_pure_state_is_point(rng):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x /= np.linalg.norm(x)
    rho = np.outer(x, x.conj())
    face = face_at(rho)
    assert face.k == 1
    ok, _ = face.contains(rho)
    assert ok
    y = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    y -= np.vdot(x, y) * x
    y /= np.linalg.norm(y)
    other = np.outer(y, y.conj())
    assert not face.contains(other)[0]


def test_face_at_full_support_is_everything(rng):
    n = 3
    face = face_at(np.eye(n, dtype=complex) / n)
    assert face.k == n
    sigma = random_psd(n, n, rng)
    sigma /= np.trace(sigma).real
    assert face.contains(sigma)[0]


def test_face_at_support_inclusion():
    face = face_at(np.diag([0.5, 0.5, 0.0]).astype(complex))
    assert face.contains(np.diag([1.0, 0.0, 0.0]).astype(complex))[0]
    assert not face.contains(np.diag([0.0, 0.0, 1.0]).astype(complex))[0]


def test_face_at_rejects_non_density():
    with pytest.raises(StateError):
        face_at(np.diag([2.0, 0.0]).astype(complex))
    with pytest.raises(StateError):
        face_at(np.diag([1.5, -0.5]).astype(complex))

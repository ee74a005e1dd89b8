"""Invariant battery behind ``qsg verify all`` and ``qsg kahler verify``.

Every check runs a deterministic randomized experiment and reports its
worst residual against a fixed threshold.  Checks are named
``section.property`` and reports order them by name, so two runs with the
same configuration produce identical output (up to wall-clock duration).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import composite, kahler, strata, tensors
from .hermitian import (
    from_real_coords,
    hs_inner,
    hs_norm,
    jordan_bracket,
    lie_bracket,
    rank_signature,
    real_coords,
    spectral,
)
from .rand import (
    haar_unitary,
    random_density,
    random_hermitian,
    random_psd,
    random_unit_vector,
)
from .roof import RoofConfig, convex_roof

__all__ = [
    "CheckResult",
    "Report",
    "make_report",
    "run_battery",
    "kahler_checks",
    "kahler_point_checks",
    "expected_two_level_ranks",
    "two_level_rank_mismatches",
    "polynomial_factor_curve",
    "conjugation_curve",
    "chart_jacobian",
    "splice",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return np.isfinite(self.residual) and self.residual <= self.threshold

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "residual": float(self.residual),
            "threshold": float(self.threshold),
            "passed": bool(self.passed),
        }


@dataclass(frozen=True)
class Report:
    command: str
    checks: list[CheckResult]
    duration_seconds: float

    @property
    def overall_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "overall_passed": bool(self.overall_passed),
            "duration_seconds": float(self.duration_seconds),
        }


# ---------------------------------------------------------------------------
# shared constructions


def expected_two_level_ranks(u: float, x: float, y: float, z: float) -> tuple[int, int]:
    """Case table of tensor ranks at a 2x2 point with the given coordinates."""
    s = x * x + y * y + z * z
    lam = 0 if s == 0 else 2
    if u == 0:
        r = 0 if s == 0 else 2
    elif abs(s - u * u) < 1e-15:
        r = 3
    else:
        r = 4
    return lam, r


def two_level_rank_mismatches(grid) -> int:
    """Count grid points where computed Gram ranks differ from the case table."""
    basis = tensors.two_level_basis()
    bad = 0
    for u in grid:
        for x in grid:
            for y in grid:
                for z in grid:
                    xi = tensors.two_level_point(u, x, y, z)
                    lam_exp, r_exp = expected_two_level_ranks(u, x, y, z)
                    lam = tensors.numerical_rank(tensors.gram_matrix(xi, basis, "lambda"))
                    r = tensors.numerical_rank(tensors.gram_matrix(xi, basis, "r"))
                    bad += (lam != lam_exp) + (r != r_exp)
    return bad


def polynomial_factor_curve(
    n: int, k: int, rng: np.random.Generator, num: int = 9, tmax: float = 0.3
) -> list[tuple[float, np.ndarray]]:
    """Rank-k curve T(t)^dagger T(t) with a quadratic k x n factor T."""
    t0 = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    t1 = 0.5 * (rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n)))
    t2 = 0.25 * (rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n)))
    samples = []
    for t in np.linspace(-tmax, tmax, num):
        T = t0 + t * t1 + t * t * t2
        X = T.conj().T @ T
        samples.append((float(t), (X + X.conj().T) / 2))
    return samples


def conjugation_curve(
    rho0: np.ndarray, H: np.ndarray, num: int = 9, tmax: float = 0.04
) -> list[tuple[float, np.ndarray]]:
    """Unitary path exp(itH) rho0 exp(-itH); spectrum constant along it."""
    w, U = np.linalg.eigh(H)
    samples = []
    for t in np.linspace(-tmax, tmax, num):
        V = (U * np.exp(1j * t * w)) @ U.conj().T
        X = V @ rho0 @ V.conj().T
        samples.append((float(t), (X + X.conj().T) / 2))
    return samples


def chart_jacobian(chart: strata.ChartPhi, h: float = 1e-6) -> np.ndarray:
    """Numerical differential of the chart inverse at the origin (real coordinates)."""
    n, k = chart.n, chart.k
    d = 2 * n * k - k * k
    J = np.zeros((n * n, d))
    for c in range(d):
        e = np.zeros(d)
        e[c] = h
        plus = strata.chart_inverse(chart, strata.ChartCoordinates.from_real_vector(e, n, k))
        minus = strata.chart_inverse(chart, strata.ChartCoordinates.from_real_vector(-e, n, k))
        J[:, c] = real_coords((plus - minus) / (2 * h))
    return J


def splice(
    dec_a: composite.PureDecomposition, dec_b: composite.PureDecomposition, lam: float
) -> composite.PureDecomposition:
    """Decomposition of the lam : (1-lam) mixture from decompositions of the parts."""
    weights = np.concatenate([lam * dec_a.weights, (1.0 - lam) * dec_b.weights])
    vectors = np.vstack([dec_a.vectors, dec_b.vectors])
    return composite.PureDecomposition(weights=weights / weights.sum(), vectors=vectors)


# ---------------------------------------------------------------------------
# check sections


def hermitian_checks(n: int, seed: int, trials: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    inv_lie = inv_jor = jacobi = recon = 0.0
    rank_bad = 0
    for _ in range(trials):
        A, B, xi = (random_hermitian(n, rng) for _ in range(3))
        inv_lie = max(inv_lie, abs(hs_inner(lie_bracket(A, xi), B) - hs_inner(A, lie_bracket(xi, B))))
        inv_jor = max(
            inv_jor, abs(hs_inner(jordan_bracket(A, xi), B) - hs_inner(A, jordan_bracket(xi, B)))
        )
        jac = (
            lie_bracket(A, lie_bracket(B, xi))
            + lie_bracket(B, lie_bracket(xi, A))
            + lie_bracket(xi, lie_bracket(A, B))
        )
        jacobi = max(jacobi, float(np.abs(jac).max()))
        data = spectral(A)
        recon = max(recon, float(np.abs(data.reconstruct() - A).max()))
        k = int(rng.integers(1, n + 1))
        sig = rank_signature(random_psd(n, k, rng))
        rank_bad += (sig.k_plus, sig.k_minus) != (k, 0)
    return [
        CheckResult("hermitian.bracket_invariance_lie", inv_lie, 1e-9),
        CheckResult("hermitian.bracket_invariance_jordan", inv_jor, 1e-9),
        CheckResult("hermitian.jacobi_identity", jacobi, 1e-9),
        CheckResult("hermitian.spectral_reconstruction", recon, 1e-10),
        CheckResult("hermitian.psd_rank_detection", float(rank_bad), 0.5),
    ]


def tensors_checks(n: int, seed: int, trials: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 1)
    push = split_g = split_w = antisym = casimir = 0.0
    for _ in range(trials):
        A, B, xi = (random_hermitian(n, rng) for _ in range(3))
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        mu = tensors.momentum_map(x)
        lhs = complex(np.vdot(A @ x, B @ x))
        push = max(push, abs(lhs - tensors.complex_tensor_eval(mu, A, B)))
        g_gen, w_gen = tensors.bracket_of_quadratics(A, B)
        split_g = max(split_g, abs(lhs.real - tensors.quadratic_eval(g_gen, x)))
        split_w = max(split_w, abs(lhs.imag - tensors.quadratic_eval(w_gen, x)))
        antisym = max(
            antisym,
            abs(tensors.lambda_eval(xi, A, B) + tensors.lambda_eval(xi, B, A)),
            abs(tensors.r_eval(xi, A, B) - tensors.r_eval(xi, B, A)),
        )
        poly = xi @ xi + 0.7 * xi + 0.3 * np.eye(n)
        casimir = max(casimir, abs(tensors.lambda_eval(xi, poly, B)))
    mism = two_level_rank_mismatches([-1.0, -0.5, 0.0, 0.5, 1.0])
    return [
        CheckResult("tensors.pushforward_identity", push, 1e-10),
        CheckResult("tensors.bracket_split_metric", split_g, 1e-10),
        CheckResult("tensors.bracket_split_symplectic", split_w, 1e-10),
        CheckResult("tensors.swap_symmetry", antisym, 1e-12),
        CheckResult("tensors.casimir_degeneracy", casimir, 1e-9),
        CheckResult("tensors.two_level_rank_table", float(mism), 0.5),
    ]


def strata_checks(n: int, seed: int, trials: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 2)
    round_trip = 0.0
    rows_res = 0.0
    dim_bad = 0
    curve_res = 0.0
    glfact = 0.0
    sig_bad = 0
    face_bad = 0
    for k in range(1, n + 1):
        chart = _random_chart(n, k, rng)
        for _ in range(max(2, trials // n)):
            X = _random_chart_point(n, k, chart, rng)
            Xr = strata.chart_inverse(chart, strata.chart_forward(chart, X))
            round_trip = max(round_trip, float(np.abs(Xr - X).max()))
            rows = X[chart.J.zero_based(), :]
            rows_res = max(
                rows_res,
                float(np.abs(strata.reconstruct_from_rows(rows, chart.J) - X).max()),
            )
        J = chart_jacobian(chart)
        d = 2 * n * k - k * k
        dim_bad += _rank_of(J) != d
        tr_row = np.array([np.trace(_unvec(J[:, c], n)).real for c in range(d)])
        dim_bad += _rank_of(J @ _nullspace(tr_row[None, :])) != d - 1
        dim_bad += strata.stratum_dim(n, k, "cone") != d
        dim_bad += strata.stratum_dim(n, k, "density") != d - 1
    for _ in range(trials):
        k = int(rng.integers(1, n + 1))
        rep = strata.curve_tangency_report(polynomial_factor_curve(n, k, rng), tol=1e-6)
        curve_res = max(curve_res, rep.max_residual)
        xi = random_hermitian(n, rng)
        T, sig = strata.gl_orbit_factor(xi)
        D = strata.signature_diagonal(sig)
        glfact = max(glfact, float(np.abs(T.conj().T @ D @ T - xi).max()))
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        sig_bad += rank_signature(strata.gl_action(G, xi)) != sig
    face = strata.face_at(
        np.diag([1.0 / (n - 1)] * (n - 1) + [0.0]).astype(complex)
    )
    inside = np.diag([1.0] + [0.0] * (n - 1)).astype(complex)
    outside = np.diag([0.0] * (n - 1) + [1.0]).astype(complex)
    face_bad += not face.contains(inside)[0]
    face_bad += face.contains(outside)[0]
    face_bad += face.k != n - 1
    return [
        CheckResult("strata.chart_round_trip", round_trip, 1e-8),
        CheckResult("strata.row_reconstruction", rows_res, 1e-9),
        CheckResult("strata.dimension_counts", float(dim_bad), 0.5),
        CheckResult("strata.curve_tangency", curve_res, 1e-6),
        CheckResult("strata.gl_factorization", glfact, 1e-9),
        CheckResult("strata.gl_signature_invariance", float(sig_bad), 0.5),
        CheckResult("strata.face_membership", float(face_bad), 0.5),
    ]


def _random_chart(n: int, k: int, rng: np.random.Generator) -> strata.ChartPhi:
    while True:
        base = random_psd(n, k, rng)
        J = strata.IndexSet(tuple(sorted(rng.choice(n, size=k, replace=False) + 1)))
        try:
            return strata.ChartPhi(J=J, base=base)
        except strata.ChartDomainError:  # pragma: no cover - rare resample
            continue


def _random_chart_point(
    n: int, k: int, chart: strata.ChartPhi, rng: np.random.Generator
) -> np.ndarray:
    j = chart.J.zero_based()
    while True:
        X = random_psd(n, k, rng)
        M = X[np.ix_(j, j)]
        w = np.linalg.eigvalsh((M + M.conj().T) / 2)
        if w[0] > 0 and w[-1] / w[0] < 1e6:
            return X


def _rank_of(M: np.ndarray, rel: float = 1e-6) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.count_nonzero(s > s[0] * rel)) if s[0] > 0 else 0


def _nullspace(M: np.ndarray) -> np.ndarray:
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    rank = int(np.count_nonzero(s > max(M.shape) * np.finfo(float).eps * (s[0] if s.size else 0)))
    return Vh[rank:].conj().T


def _unvec(v: np.ndarray, n: int) -> np.ndarray:
    return from_real_coords(v, n)


def kahler_point_checks(
    n: int, seed: int, trials: int, xi: np.ndarray | None = None
) -> list[CheckResult]:
    """Orbit-geometry residuals at a fixed point (or fresh random points)."""
    rng = np.random.default_rng(seed + 3)
    comm = jsq = compat = sympl_inv = cubes = equi = closure = 0.0
    metric_neg = 0.0
    for _ in range(trials):
        point = xi if xi is not None else random_hermitian(n, rng)
        p = kahler.OrbitPoint.create(point)
        A, B = random_hermitian(n, rng), random_hermitian(n, rng)
        xi2 = point @ point
        comm = max(
            comm,
            float(np.abs(kahler.jtilde(p, kahler.rtilde(p, A)) - lie_bracket(A, xi2)).max()),
            float(np.abs(kahler.rtilde(p, kahler.jtilde(p, A)) - lie_bracket(A, xi2)).max()),
        )
        V = kahler.jtilde(p, A)
        JJV = kahler.complex_structure(p, kahler.complex_structure(p, V))
        jsq = max(jsq, float(np.abs(JJV + V).max()))
        JA = kahler.complex_structure(p, A)
        compat = max(
            compat, abs(kahler.orbit_metric(p, JA, B) - kahler.orbit_symplectic(p, A, B))
        )
        JB = kahler.complex_structure(p, B)
        sympl_inv = max(
            sympl_inv,
            abs(kahler.orbit_symplectic(p, JA, JB) - kahler.orbit_symplectic(p, A, B)),
        )
        if hs_norm(V) > 1e-8:
            metric_neg = max(metric_neg, -kahler.orbit_metric(p, A, A))
        RRRA = kahler.product_structure(
            p, kahler.product_structure(p, kahler.product_structure(p, A))
        )
        cubes = max(cubes, float(np.abs(RRRA - kahler.product_structure(p, A)).max()))
        U = haar_unitary(n, rng)
        equi = max(
            equi,
            float(
                np.abs(
                    kahler.complex_structure(
                        kahler.OrbitPoint.create(U @ point @ U.conj().T), U @ A @ U.conj().T
                    )
                    - U @ kahler.complex_structure(p, A) @ U.conj().T
                ).max()
            ),
        )
        closure = max(closure, _field_closure_residual(point, A, B))
    return [
        CheckResult("kahler.commutation_lemma", comm, 1e-10),
        CheckResult("kahler.complex_structure_squares", jsq, 1e-9),
        CheckResult("kahler.kahler_compatibility", compat, 1e-9),
        CheckResult("kahler.symplectic_j_invariance", sympl_inv, 1e-9),
        CheckResult("kahler.metric_positivity", max(metric_neg, 0.0), 0.0),
        CheckResult("kahler.product_structure_cubes", cubes, 1e-10),
        CheckResult("kahler.unitary_equivariance", equi, 1e-10),
        CheckResult("kahler.fundamental_field_closure", closure, 1e-10),
    ]


def kahler_checks(n: int, seed: int, trials: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 30)
    proj_metric = sigma_r1 = j3 = 0.0
    dist_bad = 0
    checks = kahler_point_checks(n, seed, trials)
    for _ in range(trials):
        k = int(rng.integers(1, n))
        proj = _random_projector(n, k, rng)
        p = kahler.OrbitPoint.create(proj)
        A, B = random_hermitian(n, rng), random_hermitian(n, rng)
        proj_metric = max(
            proj_metric,
            abs(
                kahler.orbit_metric(p, A, B)
                - hs_inner(kahler.jtilde(p, A), kahler.jtilde(p, B))
            ),
        )
        x = random_unit_vector(n, rng)
        mu = tensors.momentum_map(x)
        pmu = kahler.OrbitPoint.create(mu)
        Va, Vb = kahler.jtilde(pmu, A), kahler.jtilde(pmu, B)
        Aj = kahler.jordan_generator(pmu, Va)
        Bj = kahler.jordan_generator(pmu, Vb)
        sigma_r1 = max(sigma_r1, abs(kahler.partial_sigma(pmu, Aj, Bj) - hs_inner(Va, Vb)))
        J3 = kahler.rank_one_structure(
            mu, kahler.rank_one_structure(mu, kahler.rank_one_structure(mu, A))
        )
        j3 = max(j3, float(np.abs(J3 + kahler.rank_one_structure(mu, A)).max()))
    eye_point = kahler.OrbitPoint.create(np.eye(n, dtype=complex))
    dist_bad += kahler.distribution_dim(eye_point, "lambda") != 0
    dist_bad += kahler.distribution_dim(eye_point, "r") != n * n
    dist_bad += kahler.distribution_dim(eye_point, "zero") != 0
    w = np.arange(1, n + 1, dtype=float)
    generic = kahler.OrbitPoint.create(np.diag(w).astype(complex))
    dist_bad += kahler.distribution_dim(generic, "zero") != kahler.distribution_dim(generic, "lambda")
    mixed = kahler.OrbitPoint.create(
        np.diag([1.0, -1.0] + [2.0 * j for j in range(3, n + 1)]).astype(complex)
    )
    dims = tuple(kahler.distribution_dim(mixed, which) for which in ("lambda", "r", "zero"))
    dist_bad += dims != _expected_mixed_dims(n)
    return checks + [
        CheckResult("kahler.projector_metric", proj_metric, 1e-10),
        CheckResult("kahler.rank_one_sigma", sigma_r1, 1e-9),
        CheckResult("kahler.rank_one_structure_cubes", j3, 1e-10),
        CheckResult("kahler.distribution_dimensions", float(dist_bad), 0.5),
    ]


def _expected_mixed_dims(n: int) -> tuple[int, int, int]:
    # spectrum (1, -1, 6, 8, ..., 2n): distinct eigenvalues, one opposite pair
    lam = n * n - n
    r = n * n - 2
    zero = n * n - n - 2
    return lam, r, zero


def _random_projector(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    U = haar_unitary(n, rng)
    P = U[:, :k] @ U[:, :k].conj().T
    return (P + P.conj().T) / 2


def _field_closure_residual(xi: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    # commutator of linear fields F, G as map composition F(G(.)) - G(F(.))
    AB = lie_bracket(A, B)
    lie_lie = lie_bracket(A, lie_bracket(B, xi)) - lie_bracket(B, lie_bracket(A, xi))
    jor_lie = jordan_bracket(A, lie_bracket(B, xi)) - lie_bracket(B, jordan_bracket(A, xi))
    jor_jor = jordan_bracket(A, jordan_bracket(B, xi)) - jordan_bracket(B, jordan_bracket(A, xi))
    res = float(np.abs(lie_lie - lie_bracket(AB, xi)).max())
    res = max(res, float(np.abs(jor_lie - jordan_bracket(AB, xi)).max()))
    # the two Jordan fields close onto the Lie field with reversed orientation
    res = max(res, float(np.abs(jor_jor + lie_bracket(AB, xi)).max()))
    return res


def composite_checks(seed: int, trials: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed + 4)
    ps = composite.ProductSpace(2, 2)
    seg_bad = 0
    ptr_res = 0.0
    ppt_bad = 0
    cara_res = 0.0
    cara_bad = 0
    seed_res = 0.0
    for n1, n2 in ((2, 2), (2, 3), (3, 4)):
        psn = composite.ProductSpace(n1, n2)
        for _ in range(max(2, trials // 3)):
            k = int(rng.integers(1, n1 + 1))
            l = int(rng.integers(1, n2 + 1))
            a = random_psd(n1, k, rng)
            b = random_psd(n2, l, rng)
            a /= np.trace(a).real
            b /= np.trace(b).real
            prod = composite.segre(psn, a, b)
            seg_bad += rank_signature(prod).rank != k * l
            seg_bad += abs(np.trace(prod).real - 1.0) > 1e-12
            ptr_res = max(
                ptr_res, float(np.abs(composite.partial_trace(psn, prod, keep=1) - a).max())
            )
            ptr_res = max(
                ptr_res, float(np.abs(composite.partial_trace(psn, prod, keep=2) - b).max())
            )
    bell = _bell_state()
    ppt_bad += composite.ppt_test(ps, bell)
    ppt_bad += not composite.ppt_test(ps, np.eye(4, dtype=complex) / 4)
    for i in range(trials):
        sep = composite.sample_separable(ps, terms=int(rng.integers(1, 7)), seed=seed + 100 + i)
        ppt_bad += not composite.ppt_test(ps, sep)
    for n1, n2 in ((2, 2), (2, 3)):
        psn = composite.ProductSpace(n1, n2)
        nn = psn.n
        for _ in range(max(2, trials // 4)):
            m = 3 * nn * nn
            vecs = np.stack([random_unit_vector(nn, rng) for _ in range(m)])
            dec = composite.PureDecomposition(weights=rng.dirichlet(np.ones(m)), vectors=vecs)
            red = composite.caratheodory_reduce(dec)
            cara_bad += len(red) > nn * nn + 1
            cara_res = max(cara_res, float(np.abs(red.state() - dec.state()).max()))
    seed_res = max(
        seed_res, abs(composite.seed_function(ps, bell) - 0.5)
    )
    prod_state = tensors.momentum_map(
        np.kron(random_unit_vector(2, rng), random_unit_vector(2, rng))
    )
    seed_res = max(seed_res, abs(composite.seed_function(ps, prod_state)))
    for d in (2, 3):
        psd_ = composite.ProductSpace(d, d)
        maxent = tensors.momentum_map(
            np.eye(d, dtype=complex).ravel() / np.sqrt(d)
        )
        seed_res = max(seed_res, abs(composite.seed_function(psd_, maxent) - (1.0 - 1.0 / d)))
    return [
        CheckResult("composite.segre_rank_trace", float(seg_bad), 0.5),
        CheckResult("composite.partial_trace_product", ptr_res, 1e-12),
        CheckResult("composite.ppt_criterion", float(ppt_bad), 0.5),
        CheckResult("composite.caratheodory_length", float(cara_bad), 0.5),
        CheckResult("composite.caratheodory_state", cara_res, 1e-10),
        CheckResult("composite.seed_reference_values", seed_res, 1e-12),
    ]


def roof_checks(seed: int, trials: int, restarts: int) -> list[CheckResult]:
    ps = composite.ProductSpace(2, 2)
    rng = np.random.default_rng(seed + 5)
    cfg = RoofConfig(seed=seed, restarts=restarts)
    bell_res = abs(convex_roof(ps, _bell_state(), cfg).value - 0.5)
    prod = tensors.momentum_map(np.kron(random_unit_vector(2, rng), random_unit_vector(2, rng)))
    pure_res = abs(convex_roof(ps, prod, cfg).value)
    sep_res = 0.0
    for i in range(max(2, trials // 6)):
        sep = composite.sample_separable(ps, terms=4, seed=seed + 200 + i)
        sep_res = max(sep_res, convex_roof(ps, sep, cfg).value)
    conv_res = 0.0
    lu_res = 0.0
    for i in range(max(2, trials // 8)):
        rho1 = random_density(4, rng)
        rho2 = random_density(4, rng)
        est1 = convex_roof(ps, rho1, cfg)
        est2 = convex_roof(ps, rho2, cfg)
        lam = (0.25, 0.5, 0.75)[i % 3]
        mix = lam * rho1 + (1 - lam) * rho2
        cert = splice(est1.best_decomposition, est2.best_decomposition, lam)
        est_mix = convex_roof(ps, mix, RoofConfig(seed=seed, restarts=restarts, extra_starts=(cert,)))
        conv_res = max(
            conv_res, est_mix.value - (lam * est1.value + (1 - lam) * est2.value)
        )
        U = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
        rot = U @ rho1 @ U.conj().T
        rot_start = composite.PureDecomposition(
            weights=est1.best_decomposition.weights,
            vectors=est1.best_decomposition.vectors @ U.T,
        )
        est_rot = convex_roof(ps, rot, RoofConfig(seed=seed, restarts=restarts, extra_starts=(rot_start,)))
        lu_res = max(lu_res, abs(est_rot.value - est1.value))
    return [
        CheckResult("roof.bell_pure_value", bell_res, 1e-12),
        CheckResult("roof.pure_product_zero", pure_res, 1e-9),
        CheckResult("roof.separable_upper_bound", sep_res, 1e-3),
        CheckResult("roof.splice_convexity", max(conv_res, 0.0), 2e-3),
        CheckResult("roof.local_unitary_invariance", lu_res, 2e-3),
    ]


def _bell_state() -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return tensors.momentum_map(v)


def run_battery(
    n: int = 4,
    seed: int = 0,
    trials: int = 20,
    include_roof: bool = True,
    roof_restarts: int = 8,
) -> list[CheckResult]:
    """The full cross-module invariant battery at problem size n."""
    if n < 2:
        raise ValueError("the battery needs n >= 2 (strata and orbits are trivial below)")
    checks = []
    checks += hermitian_checks(n, seed, trials)
    checks += tensors_checks(n, seed, trials)
    checks += strata_checks(n, seed, trials)
    checks += kahler_checks(n, seed, trials)
    checks += composite_checks(seed, trials)
    if include_roof:
        checks += roof_checks(seed, trials, roof_restarts)
    return checks


def make_report(command: str, checks: list[CheckResult], started: float) -> Report:
    return Report(command=command, checks=checks, duration_seconds=time.monotonic() - started)

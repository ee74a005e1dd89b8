"""Rank strata of positive matrices: charts, tangent spaces, faces.

A rank-k positive matrix with an invertible principal block on the index
set J is determined by its J-indexed rows: with columns C = X[:, J] and
block M = X[J, J] the whole matrix is X = C M^{-1} C^dagger.  The chart
at a base point A takes the (J,J) block and the off-J part of the J
columns of X - A as local coordinates; the inverse perturbs the base
columns and reconstructs.  Tangency of a Hermitian V at a rank-k point is
the vanishing of V on the kernel of the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChartDomainError,
    DimensionMismatchError,
    HermiticityError,
    SingularOperatorError,
    StateError,
)
from .hermitian import (
    Signature,
    default_rank_tol,
    from_real_coords,
    hermiticity_defect,
    rank_signature,
    real_coords,
    spectral,
)

__all__ = [
    "IndexSet",
    "ChartPhi",
    "ChartCoordinates",
    "chart_forward",
    "chart_inverse",
    "reconstruct_from_rows",
    "kernel_basis",
    "TangencyResult",
    "tangent_test",
    "stratum_dim",
    "CurveSampleRecord",
    "CurveTangencyReport",
    "curve_tangency_report",
    "fd_weights",
    "gl_action",
    "gl_orbit_factor",
    "Face",
    "face_at",
]


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing 1-based indices selecting rows/columns."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) == 0:
            raise ValueError("index set must be non-empty")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing, got {idx}")
        if idx[0] < 1:
            raise ValueError(f"indices are 1-based, got {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return len(self.indices)

    def zero_based(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int) - 1

    def complement_zero_based(self, n: int) -> np.ndarray:
        mask = np.ones(n, dtype=bool)
        mask[self.zero_based()] = False
        return np.flatnonzero(mask)


@dataclass(frozen=True)
class ChartCoordinates:
    """Local coordinates: Hermitian (J,J) block plus complex off-J block."""

    block_jj: np.ndarray
    block_off: np.ndarray

    @property
    def k(self) -> int:
        return self.block_jj.shape[0]

    @property
    def n(self) -> int:
        return self.k + self.block_off.shape[0]

    @property
    def real_dim(self) -> int:
        n, k = self.n, self.k
        return 2 * n * k - k * k

    def to_real_vector(self) -> np.ndarray:
        off = self.block_off.ravel()
        return np.concatenate([real_coords(self.block_jj), off.real, off.imag])

    @staticmethod
    def from_real_vector(v: np.ndarray, n: int, k: int) -> "ChartCoordinates":
        v = np.asarray(v, dtype=float)
        if v.size != 2 * n * k - k * k:
            raise DimensionMismatchError(v.size, 2 * n * k - k * k, what="coordinate vector vs")
        jj = from_real_coords(v[: k * k], k)
        m = (n - k) * k
        off = (v[k * k : k * k + m] + 1j * v[k * k + m :]).reshape(n - k, k)
        return ChartCoordinates(block_jj=jj, block_off=off)

    @staticmethod
    def zero(n: int, k: int) -> "ChartCoordinates":
        return ChartCoordinates(
            block_jj=np.zeros((k, k), dtype=complex),
            block_off=np.zeros((n - k, k), dtype=complex),
        )


@dataclass(frozen=True)
class ChartPhi:
    """Chart on the rank-k stratum: index set J plus a valid base point."""

    J: IndexSet
    base: np.ndarray
    cond_bound: float = 1e6
    rank_tol: float | None = None
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        n = self.base.shape[0]
        k = self.J.size
        if self.J.indices[-1] > n:
            raise DimensionMismatchError(self.J.indices[-1], n, what="index set bound and matrix dim")
        sig = rank_signature(self.base, self.rank_tol)
        if sig.k_minus != 0 or sig.k_plus != k:
            raise ChartDomainError(
                f"base point must be positive of rank {k}, found signature "
                f"({sig.k_plus}, {sig.k_minus})"
            )
        self._check_block(self.base[np.ix_(self.J.zero_based(), self.J.zero_based())])
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    def _check_block(self, M: np.ndarray) -> None:
        w = np.linalg.eigvalsh((M + M.conj().T) / 2)
        if w[0] <= 0 or w[-1] / w[0] > self.cond_bound:
            raise ChartDomainError(
                "principal block on J is not positive or exceeds the condition bound "
                f"(eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}])"
            )


def chart_forward(chart: ChartPhi, X: np.ndarray) -> ChartCoordinates:
    """Coordinates of X relative to the chart base (linear in X)."""
    if X.shape[0] != chart.n:
        raise DimensionMismatchError(X.shape[0], chart.n, what="matrix and chart")
    D = X - chart.base
    j = chart.J.zero_based()
    c = chart.J.complement_zero_based(chart.n)
    jj = D[np.ix_(j, j)]
    return ChartCoordinates(block_jj=(jj + jj.conj().T) / 2, block_off=D[np.ix_(c, j)])


def chart_inverse(chart: ChartPhi, coords: ChartCoordinates) -> np.ndarray:
    """Unique rank-k positive matrix with the given chart coordinates.

    Raises ``ChartDomainError`` when the perturbed (J,J) block stops being
    positive definite within the chart's condition bound.
    """
    if coords.n != chart.n or coords.k != chart.k:
        raise DimensionMismatchError((coords.n, coords.k), (chart.n, chart.k), what="coordinates and chart")
    j = chart.J.zero_based()
    c = chart.J.complement_zero_based(chart.n)
    C = chart.base[:, j].copy()
    C[j, :] += coords.block_jj
    C[c, :] += coords.block_off
    M = C[j, :]
    M = (M + M.conj().T) / 2
    try:
        chart._check_block(M)
    except ChartDomainError as exc:
        raise ChartDomainError(f"coordinates outside chart domain: {exc}") from exc
    X = C @ np.linalg.solve(M, C.conj().T)
    return (X + X.conj().T) / 2


def reconstruct_from_rows(rows: np.ndarray, J: IndexSet) -> np.ndarray:
    """Rank-k positive matrix with the given J-indexed rows.

    ``rows`` holds the k full rows of the target matrix, in the order of J.
    The k x k sub-block on the J columns must be Hermitian and invertible.
    """
    rows = np.asarray(rows, dtype=complex)
    k, n = rows.shape
    if k != J.size or J.indices[-1] > n:
        raise DimensionMismatchError((k, n), J.indices, what="row block and index set")
    M = rows[:, J.zero_based()]
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    defect = hermiticity_defect(M)
    if defect > 1e-10 * scale:
        raise HermiticityError(defect, 1e-10 * scale)
    M = (M + M.conj().T) / 2
    w = np.linalg.eigvalsh(M)
    if np.abs(w).min() <= k * np.abs(w).max() * 1e-13:
        raise SingularOperatorError("singular J-block: the rows do not determine a rank-k matrix")
    X = rows.conj().T @ np.linalg.solve(M, rows)
    return (X + X.conj().T) / 2


def kernel_basis(rho: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal columns spanning the eigenspaces with eigenvalue below tol."""
    data = spectral(rho)
    keep = data.eigenvalues < tol
    return data.eigenvectors[:, keep]


@dataclass(frozen=True)
class TangencyResult:
    tangent: bool
    residual: float
    kernel_dim: int


def tangent_test(
    rho: np.ndarray,
    V: np.ndarray,
    stratum: str = "cone",
    tol: float = 1e-7,
    kernel_tol: float | None = None,
) -> TangencyResult:
    """Check whether V is tangent to the rank stratum through rho.

    The residual is the largest matrix element of V compressed to the
    kernel of rho; in ``density`` mode ``|Tr V|`` joins the residual.
    """
    if stratum not in ("cone", "density"):
        raise ValueError(f"unknown stratum kind {stratum!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = kernel_basis(rho, kernel_tol if kernel_tol is not None else tol)
    if K.shape[1] == 0:
        residual = 0.0
    else:
        residual = float(np.abs(K.conj().T @ V @ K).max())
    if stratum == "density":
        residual = max(residual, float(abs(np.trace(V).real)))
    return TangencyResult(tangent=residual <= tol, residual=residual, kernel_dim=K.shape[1])


def stratum_dim(n: int, k: int, stratum: str) -> int:
    """Real dimension of the rank-k stratum (cone) or its trace-1 slice (density)."""
    if not 1 <= k <= n:
        raise ValueError(f"rank k={k} out of range for dimension n={n}")
    d = 2 * n * k - k * k
    if stratum == "cone":
        return d
    if stratum == "density":
        return d - 1
    raise ValueError(f"unknown stratum kind {stratum!r}")


def fd_weights(nodes: np.ndarray, x0: float, order: int) -> np.ndarray:
    """Finite-difference weights for the given derivative order at x0 (Fornberg)."""
    nodes = np.asarray(nodes, dtype=float)
    nn = nodes.size
    c = np.zeros((nn, order + 1))
    c1 = 1.0
    c4 = nodes[0] - x0
    c[0, 0] = 1.0
    for i in range(1, nn):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for s in range(mn, 0, -1):
                    c[i, s] = c1 * (s * c[i - 1, s - 1] - c5 * c[i - 1, s]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for s in range(mn, 0, -1):
                c[j, s] = (c4 * c[j, s] - s * c[j, s - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


@dataclass(frozen=True)
class CurveSampleRecord:
    t: float
    rank: int
    residual: float
    tangent: bool


@dataclass(frozen=True)
class CurveTangencyReport:
    records: list[CurveSampleRecord]
    max_residual: float
    all_tangent: bool
    tol: float


def curve_tangency_report(
    samples: list[tuple[float, np.ndarray]],
    tol: float = 1e-6,
    stratum: str = "cone",
    rank_tol: float | None = None,
) -> CurveTangencyReport:
    """Finite-difference tangency check along a sampled positive-matrix curve.

    Samples must be uniformly spaced in t.  Each interior sample gets a
    five-point derivative stencil (the centered one is the Richardson
    combination of the step-h and step-2h central differences; near the
    ends the window shifts), the detected rank, and the tangency residual
    at that rank.
    """
    if len(samples) < 3:
        raise ValueError(f"need at least 3 samples, got {len(samples)}")
    ts = np.asarray([t for t, _ in samples], dtype=float)
    mats = [np.asarray(m, dtype=complex) for _, m in samples]
    steps = np.diff(ts)
    h = steps[0]
    if h <= 0 or np.abs(steps - h).max() > 1e-9 * max(abs(h), 1.0):
        raise ValueError("samples must be strictly increasing and uniformly spaced in t")
    m = len(samples)
    width = min(5, m)
    records = []
    for i in range(1, m - 1):
        lo = min(max(i - width // 2, 0), m - width)
        nodes = ts[lo : lo + width]
        w = fd_weights(nodes, ts[i], 1)
        V = sum(wj * mats[lo + j] for j, wj in enumerate(w))
        V = (V + V.conj().T) / 2
        cut = rank_tol if rank_tol is not None else default_rank_tol(mats[i])
        sig = rank_signature(mats[i], cut)
        res = tangent_test(mats[i], V, stratum=stratum, tol=tol, kernel_tol=cut)
        records.append(
            CurveSampleRecord(t=float(ts[i]), rank=sig.rank, residual=res.residual, tangent=res.tangent)
        )
    max_res = max((r.residual for r in records), default=0.0)
    return CurveTangencyReport(
        records=records,
        max_residual=max_res,
        all_tangent=all(r.tangent for r in records),
        tol=tol,
    )


def gl_action(T: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Congruence action T xi T^dagger of an invertible operator."""
    if T.shape != xi.shape:
        raise DimensionMismatchError(T.shape[0], xi.shape[0], what="group element and point")
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= T.shape[0] * sv[0] * np.finfo(float).eps:
        raise SingularOperatorError(
            f"group element is numerically singular (smallest singular value {sv[-1]:.3e})"
        )
    X = T @ xi @ T.conj().T
    return (X + X.conj().T) / 2


def gl_orbit_factor(xi: np.ndarray, tol: float | None = None) -> tuple[np.ndarray, Signature]:
    """Factor xi = T^dagger D T with D = diag(+1...,-1...,0...) and invertible T.

    The signature labels the orbit of the congruence action; the zero
    matrix factors with T = I.
    """
    n = xi.shape[0]
    data = spectral(xi)
    w = data.eigenvalues
    if tol is None:
        tol = default_rank_tol(xi, eigenvalues=w)
    pos = np.flatnonzero(w > tol)
    neg = np.flatnonzero(w < -tol)
    zero = np.flatnonzero((w <= tol) & (w >= -tol))
    sig = Signature(k_plus=len(pos), k_minus=len(neg), dim=n)
    if sig.rank == 0:
        return np.eye(n, dtype=complex), sig
    perm = np.concatenate([pos, neg, zero])
    lam = w[perm]
    scales = np.ones(n)
    scales[: sig.rank] = np.sqrt(np.abs(lam[: sig.rank]))
    T = scales[:, None] * data.eigenvectors[:, perm].conj().T
    return T, sig


def signature_diagonal(sig: Signature) -> np.ndarray:
    """The diagonal normal form diag(+1 x k_plus, -1 x k_minus, 0 x rest)."""
    d = np.zeros(sig.dim)
    d[: sig.k_plus] = 1.0
    d[sig.k_plus : sig.k_plus + sig.k_minus] = -1.0
    return np.diag(d).astype(complex)


@dataclass(frozen=True)
class Face:
    """Face of the density body at a rank-k state: all states supported on its range."""

    support_basis: np.ndarray
    orthocomplement: np.ndarray
    k: int
    tol: float

    def contains(self, sigma: np.ndarray, tol: float | None = None) -> tuple[bool, float]:
        """Membership check: density matrix vanishing on the orthocomplement of the support."""
        tol = self.tol if tol is None else tol
        w = np.linalg.eigvalsh(sigma)
        residual = max(0.0, float(-w.min()))
        residual = max(residual, float(abs(np.trace(sigma).real - 1.0)))
        if self.orthocomplement.shape[1]:
            residual = max(residual, float(np.abs(sigma @ self.orthocomplement).max(initial=0.0)))
        return residual <= tol, residual


def face_at(rho: np.ndarray, tol: float = 1e-9) -> Face:
    """Face of the density body through a density matrix rho."""
    data = spectral(rho)
    w = data.eigenvalues
    if abs(w.sum() - 1.0) > max(tol, 1e-9) or w.min() < -max(tol, 1e-9):
        raise StateError(
            f"not a density matrix: trace {w.sum():.6f}, min eigenvalue {w.min():.3e}"
        )
    cut = max(tol, default_rank_tol(rho, eigenvalues=w))
    keep = w > cut
    return Face(
        support_basis=data.eigenvectors[:, keep],
        orthocomplement=data.eigenvectors[:, ~keep],
        k=int(keep.sum()),
        tol=max(tol, 1e-9),
    )

"""Algebra of Hermitian matrices.

The whole package works with Hermitian matrices represented as square
complex ``numpy`` arrays.  ``hermitian`` is the validating constructor:
it checks the asymmetry against a tolerance and then symmetrizes exactly,
so downstream spectral calculus can assume ``A == A.conj().T`` to the last
bit.  The inner product is ``<A,B> = Tr(AB)/2``, the Lie bracket is
``(AB - BA)/i`` and the Jordan bracket is ``AB + BA``; both brackets
return Hermitian matrices and the inner product is invariant under both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EigensolverError, HermiticityError

__all__ = [
    "hermitian",
    "hermiticity_defect",
    "check_same_dim",
    "hs_inner",
    "hs_norm",
    "lie_bracket",
    "jordan_bracket",
    "SpectralData",
    "spectral",
    "Signature",
    "default_rank_tol",
    "rank_signature",
    "real_coords",
    "from_real_coords",
    "hermitian_basis",
]


def hermiticity_defect(entries: np.ndarray) -> float:
    """Largest entrywise deviation of M from its conjugate transpose."""
    return float(np.abs(entries - entries.conj().T).max(initial=0.0))


def hermitian(entries, tol: float = 1e-12) -> np.ndarray:
    """Validate and exactly symmetrize a Hermitian matrix.

    The asymmetry may not exceed ``tol`` relative to the entry scale;
    afterwards the matrix is replaced by ``(M + M^dagger)/2``.
    """
    M = np.asarray(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(M.shape, "square", what="matrix shape vs")
    if M.shape[0] < 1:
        raise DimensionMismatchError(M.shape[0], ">= 1", what="matrix dim vs")
    if not np.all(np.isfinite(M.view(float))):
        raise HermiticityError(float("inf"), tol)
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    defect = hermiticity_defect(M)
    if defect > tol * scale:
        raise HermiticityError(defect, tol * scale)
    return (M + M.conj().T) / 2


def check_same_dim(A: np.ndarray, B: np.ndarray, what="operands") -> int:
    if A.shape != B.shape:
        raise DimensionMismatchError(A.shape[0], B.shape[0], what=what)
    return A.shape[0]


def hs_inner(A: np.ndarray, B: np.ndarray) -> float:
    """Invariant scalar product Tr(AB)/2 (real for Hermitian arguments)."""
    check_same_dim(A, B)
    return float(np.einsum("ij,ji->", A, B).real / 2)


def hs_norm(A: np.ndarray) -> float:
    return float(np.sqrt(max(hs_inner(A, A), 0.0)))


def lie_bracket(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Hermitian-valued Lie bracket (AB - BA)/i."""
    check_same_dim(A, B)
    C = A @ B
    C -= B @ A
    return C / 1j


def jordan_bracket(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Jordan (anticommutator) bracket AB + BA."""
    check_same_dim(A, B)
    C = A @ B
    C += B @ A
    return C


@dataclass(frozen=True)
class SpectralData:
    """Descending eigenvalues and an orthonormal eigenbasis (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source_dim: int

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def spectral(A: np.ndarray, tol: float = 1e-10) -> SpectralData:
    """Eigendecomposition with descending eigenvalue order.

    Ties keep the solver's output order so repeated runs are identical.
    The reconstruction U diag(w) U^dagger is verified against ``A`` within
    ``tol`` (scaled by the matrix norm) and a failure raises
    ``EigensolverError`` with diagnostics.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        w, U = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigensolver did not converge on a {A.shape[0]}x{A.shape[0]} matrix: {exc}",
            diagnostics={"dim": A.shape[0], "error": str(exc)},
        ) from exc
    order = np.argsort(-w, kind="stable")
    w = w[order]
    U = U[:, order]
    data = SpectralData(eigenvalues=w, eigenvectors=U, source_dim=A.shape[0])
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    resid = float(np.abs(data.reconstruct() - A).max(initial=0.0))
    if resid > tol * scale:
        raise EigensolverError(
            f"eigendecomposition reconstruction residual {resid:.3e} exceeds {tol * scale:.3e}",
            diagnostics={"residual": resid, "dim": A.shape[0]},
        )
    return data


@dataclass(frozen=True)
class Signature:
    """Counts of eigenvalues above / below the rank tolerance."""

    k_plus: int
    k_minus: int
    dim: int

    @property
    def rank(self) -> int:
        return self.k_plus + self.k_minus


def default_rank_tol(A: np.ndarray, eigenvalues: np.ndarray | None = None) -> float:
    """Scale-aware rank cutoff n * ||A||_2 * 1e-12."""
    if eigenvalues is not None:
        norm2 = float(np.abs(eigenvalues).max(initial=0.0))
    else:
        norm2 = float(np.linalg.norm(A, 2)) if A.size else 0.0
    return A.shape[0] * norm2 * 1e-12


def rank_signature(A: np.ndarray, tol: float | None = None) -> Signature:
    """Signature (k_plus, k_minus) with eigenvalues in (-tol, tol) treated as zero."""
    w = np.linalg.eigvalsh(A)
    if tol is None:
        tol = default_rank_tol(A, eigenvalues=w)
    elif tol <= 0:
        raise ValueError("tol must be positive")
    k_plus = int(np.count_nonzero(w > tol))
    k_minus = int(np.count_nonzero(w < -tol))
    return Signature(k_plus=k_plus, k_minus=k_minus, dim=A.shape[0])


def real_coords(A: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix, isometric for ``hs_inner``.

    Layout: diagonal / sqrt(2), then Re and Im of the strict upper triangle.
    """
    n = A.shape[0]
    iu = np.triu_indices(n, k=1)
    upper = A[iu]
    return np.concatenate([A.diagonal().real / np.sqrt(2.0), upper.real, upper.imag])


def from_real_coords(v: np.ndarray, n: int) -> np.ndarray:
    """Inverse of ``real_coords``."""
    v = np.asarray(v, dtype=float)
    m = n * (n - 1) // 2
    if v.size != n * n:
        raise DimensionMismatchError(v.size, n * n, what="coordinate vector vs")
    A = np.zeros((n, n), dtype=complex)
    A[np.diag_indices(n)] = v[:n] * np.sqrt(2.0)
    iu = np.triu_indices(n, k=1)
    A[iu] = v[n : n + m] + 1j * v[n + m :]
    il = (iu[1], iu[0])
    A[il] = v[n : n + m] - 1j * v[n + m :]
    return A


def hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal (``hs_inner``) basis of the n x n Hermitian matrices."""
    return [from_real_coords(row, n) for row in np.eye(n * n)]

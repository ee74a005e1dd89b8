"""Geometry of unitary conjugation orbits of a Hermitian matrix.

All (1,1)-tensors here act by entrywise multipliers in the eigenbasis of
the orbit point: the Lie map scales entry (k,l) by i(w_k - w_l), the
Jordan map by (w_k + w_l), the complex structure by i*sgn(w_k - w_l) and
the product structure by sgn(w_k + w_l).  Eigenvalues are grouped into
degeneracy classes first, so multipliers vanish identically inside a
class instead of amplifying round-off.  The orbit symplectic form and the
compatible metric are evaluated on generator pairs (A, B) representing
the tangent vectors [A, xi], [B, xi].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .hermitian import (
    SpectralData,
    hermitian_basis,
    hs_inner,
    jordan_bracket,
    lie_bracket,
    real_coords,
    from_real_coords,
    spectral,
)

__all__ = [
    "OrbitPoint",
    "TangentPair",
    "lie_tangent",
    "jordan_tangent",
    "jtilde",
    "rtilde",
    "complex_structure",
    "product_structure",
    "orbit_symplectic",
    "orbit_metric",
    "partial_sigma",
    "lie_generator",
    "jordan_generator",
    "rank_one_structure",
    "distribution_basis",
    "distribution_dim",
]


@dataclass(frozen=True)
class OrbitPoint:
    """Orbit point with cached spectral data and eigenvalue degeneracy classes."""

    xi: np.ndarray
    spec: SpectralData
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    tol: float

    @staticmethod
    def create(xi: np.ndarray, tol: float | None = None) -> "OrbitPoint":
        data = spectral(xi)
        w = data.eigenvalues
        if tol is None:
            tol = max(1.0, float(np.abs(w).max(initial=0.0))) * 1e-9
        # chain eigenvalues whose consecutive gaps stay below tol
        class_of = np.zeros(w.size, dtype=int)
        for i in range(1, w.size):
            same = abs(w[i - 1] - w[i]) <= tol
            class_of[i] = class_of[i - 1] + (0 if same else 1)
        classes = tuple(
            tuple(np.flatnonzero(class_of == c)) for c in range(class_of.max(initial=0) + 1)
        )
        return OrbitPoint(xi=xi, spec=data, classes=classes, class_of=class_of, tol=tol)

    @property
    def dim(self) -> int:
        return self.xi.shape[0]


@dataclass(frozen=True)
class TangentPair:
    """Generator together with its tangent vector at an orbit point."""

    generator: np.ndarray
    vector: np.ndarray
    kind: str


def lie_tangent(p: OrbitPoint, A: np.ndarray) -> TangentPair:
    return TangentPair(generator=A, vector=jtilde(p, A), kind="lie")


def jordan_tangent(p: OrbitPoint, A: np.ndarray) -> TangentPair:
    return TangentPair(generator=A, vector=rtilde(p, A), kind="jordan")


def _check_point(p: OrbitPoint, A: np.ndarray) -> None:
    if A.shape[0] != p.dim:
        raise DimensionMismatchError(A.shape[0], p.dim, what="generator and orbit point")


def jtilde(p: OrbitPoint, A: np.ndarray) -> np.ndarray:
    """Lie (1,1)-tensor A -> [A, xi]; its image spans the orbit tangent space."""
    _check_point(p, A)
    return lie_bracket(A, p.xi)


def rtilde(p: OrbitPoint, A: np.ndarray) -> np.ndarray:
    """Jordan (1,1)-tensor A -> [A, xi]_+."""
    _check_point(p, A)
    return jordan_bracket(A, p.xi)


def _apply_multiplier(p: OrbitPoint, A: np.ndarray, mult: np.ndarray) -> np.ndarray:
    U = p.spec.eigenvectors
    tilde = U.conj().T @ A @ U
    out = U @ (mult * tilde) @ U.conj().T
    return (out + out.conj().T) / 2


def _sign_diff(p: OrbitPoint) -> np.ndarray:
    w = p.spec.eigenvalues
    s = np.sign(w[:, None] - w[None, :])
    s[p.class_of[:, None] == p.class_of[None, :]] = 0.0
    return s


def complex_structure(p: OrbitPoint, A: np.ndarray) -> np.ndarray:
    """Orbit complex structure: eigenbasis entry (k,l) scaled by i*sgn(w_k - w_l).

    Entries inside an eigenvalue degeneracy class are annihilated, so the
    map squares to -1 exactly on the orbit tangent space and to 0 on its
    orthogonal complement.
    """
    _check_point(p, A)
    return _apply_multiplier(p, A, 1j * _sign_diff(p))


def product_structure(p: OrbitPoint, A: np.ndarray) -> np.ndarray:
    """Product structure: eigenbasis entry (k,l) scaled by sgn(w_k + w_l); cubes to itself."""
    _check_point(p, A)
    w = p.spec.eigenvalues
    s = w[:, None] + w[None, :]
    mult = np.sign(s) * (np.abs(s) > p.tol)
    return _apply_multiplier(p, A, mult)


def orbit_symplectic(p: OrbitPoint, A: np.ndarray, B: np.ndarray) -> float:
    """Orbit symplectic form on the tangent vectors of the generators A, B.

    The value -<xi, [A,B]> depends on the generators only through
    [A, xi] and [B, xi].
    """
    _check_point(p, A)
    _check_point(p, B)
    return -hs_inner(p.xi, lie_bracket(A, B))


def orbit_metric(p: OrbitPoint, A: np.ndarray, B: np.ndarray) -> float:
    """Compatible Riemannian metric g(V, W) = eta(V, J W) on generator pairs."""
    _check_point(p, A)
    _check_point(p, B)
    return hs_inner(jtilde(p, A), complex_structure(p, B))


def partial_sigma(p: OrbitPoint, A: np.ndarray, B: np.ndarray) -> float:
    """Symmetric partial tensor on Jordan tangent vectors: <xi, [A,B]_+>."""
    _check_point(p, A)
    _check_point(p, B)
    return hs_inner(p.xi, jordan_bracket(A, B))


def lie_generator(p: OrbitPoint, V: np.ndarray) -> np.ndarray:
    """Least-squares generator A with [A, xi] = V (eigenbasis division by i(w_k - w_l))."""
    _check_point(p, V)
    U = p.spec.eigenvectors
    w = p.spec.eigenvalues
    tilde = U.conj().T @ V @ U
    denom = 1j * (w[:, None] - w[None, :])
    live = p.class_of[:, None] != p.class_of[None, :]
    out = np.zeros_like(tilde)
    out[live] = tilde[live] / denom[live]
    A = U @ out @ U.conj().T
    return (A + A.conj().T) / 2


def jordan_generator(p: OrbitPoint, V: np.ndarray) -> np.ndarray:
    """Least-squares generator A with [A, xi]_+ = V (division by w_k + w_l)."""
    _check_point(p, V)
    U = p.spec.eigenvectors
    w = p.spec.eigenvalues
    tilde = U.conj().T @ V @ U
    denom = w[:, None] + w[None, :]
    live = np.abs(denom) > p.tol
    out = np.zeros_like(tilde)
    out[live] = tilde[live] / denom[live]
    A = U @ out @ U.conj().T
    return (A + A.conj().T) / 2


def rank_one_structure(xi: np.ndarray, A: np.ndarray) -> np.ndarray:
    """The (1,1)-tensor A -> [A, xi]/||xi|| on the rank-one cone; satisfies J^3 = -J."""
    norm = float(np.linalg.norm(xi, 2))
    if norm == 0.0:
        raise ValueError("rank-one structure undefined at the zero matrix")
    return lie_bracket(A, xi) / norm


def _orthonormal_span(images: list[np.ndarray], n: int, tol: float = 1e-9) -> list[np.ndarray]:
    cols = np.stack([real_coords(M) for M in images], axis=1)
    U, s, _ = np.linalg.svd(cols, full_matrices=False)
    keep = s > tol * max(1.0, s[0] if s.size else 0.0)
    return [from_real_coords(U[:, i], n) for i in range(int(keep.sum()))]


def distribution_basis(p: OrbitPoint, which: str) -> list[np.ndarray]:
    """Orthonormal basis of the chosen generalized distribution at the point.

    ``lambda``: image of the Lie map (orbit tangent space); ``r``: image of
    the Jordan map; ``zero``: their intersection, the image of A -> [A, xi^2].
    """
    n = p.dim
    basis = hermitian_basis(n)
    if which == "lambda":
        images = [jtilde(p, b) for b in basis]
    elif which == "r":
        images = [rtilde(p, b) for b in basis]
    elif which == "zero":
        xi2 = p.xi @ p.xi
        images = [lie_bracket(b, xi2) for b in basis]
    else:
        raise ValueError(f"unknown distribution {which!r}")
    return _orthonormal_span(images, n)


def distribution_dim(p: OrbitPoint, which: str) -> int:
    return len(distribution_basis(p, which))

"""Linear Poisson and Jordan tensors on the space of Hermitian matrices.

Every Hermitian A acts as a covector through the pairing ``<A, .>``; the
antisymmetric tensor pairs a point ``xi`` with the Lie bracket of the two
covector generators, the symmetric one with their Jordan bracket, and
their sum is the complex tensor ``(xi, A, B) -> Tr(xi A B)``.  The
momentum map ``x -> |x><x|`` pushes the flat Hermitian product of the
underlying vector space forward onto these tensors, which is what the
quadratic-function brackets express pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .hermitian import check_same_dim, hs_inner, jordan_bracket, lie_bracket

__all__ = [
    "momentum_map",
    "QuadraticFunction",
    "quadratic_eval",
    "lambda_eval",
    "r_eval",
    "complex_tensor_eval",
    "bracket_of_quadratics",
    "gram_matrix",
    "numerical_rank",
    "two_level_basis",
    "two_level_point",
]


def momentum_map(x: np.ndarray) -> np.ndarray:
    """Rank-<=1 projector-like matrix |x><x| with entries x_i * conj(x_j)."""
    x = np.asarray(x, dtype=complex).ravel()
    return np.outer(x, x.conj())


@dataclass(frozen=True)
class QuadraticFunction:
    """The real function x -> <x, A x>/2 attached to a Hermitian generator."""

    generator: np.ndarray

    def __call__(self, x: np.ndarray) -> float:
        return quadratic_eval(self, x)


def quadratic_eval(f: QuadraticFunction | np.ndarray, x: np.ndarray) -> float:
    A = f.generator if isinstance(f, QuadraticFunction) else f
    x = np.asarray(x, dtype=complex).ravel()
    if A.shape[0] != x.size:
        raise DimensionMismatchError(A.shape[0], x.size, what="generator and vector")
    return float(np.vdot(x, A @ x).real / 2)


def lambda_eval(xi: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """Antisymmetric tensor value <xi, (AB - BA)/i> = Tr(xi (AB - BA)) / 2i."""
    check_same_dim(A, B, what="covector generators")
    check_same_dim(xi, A, what="point and generator")
    return hs_inner(xi, lie_bracket(A, B))


def r_eval(xi: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """Symmetric tensor value <xi, AB + BA> = Tr(xi (AB + BA)) / 2."""
    check_same_dim(A, B, what="covector generators")
    check_same_dim(xi, A, what="point and generator")
    return hs_inner(xi, jordan_bracket(A, B))


def complex_tensor_eval(xi: np.ndarray, A: np.ndarray, B: np.ndarray) -> complex:
    """Combined tensor Tr(xi A B); real part symmetric, imaginary antisymmetric."""
    check_same_dim(A, B, what="covector generators")
    check_same_dim(xi, A, what="point and generator")
    return complex(np.einsum("ij,jk,ki->", xi, A, B))


def bracket_of_quadratics(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Generators of the metric and symplectic brackets of two quadratics.

    Returns ``(AB + BA, (AB - BA)/i)``; evaluating the corresponding
    quadratic functions at x gives Re<Ax,Bx> and Im<Ax,Bx>.
    """
    return jordan_bracket(A, B), lie_bracket(A, B)


def gram_matrix(xi: np.ndarray, basis: list[np.ndarray], kind: str = "lambda") -> np.ndarray:
    """Matrix of the chosen tensor at ``xi`` over a basis of covector generators."""
    if kind == "lambda":
        eval_fn = lambda_eval
    elif kind == "r":
        eval_fn = r_eval
    else:
        raise ValueError(f"unknown tensor kind {kind!r}")
    m = len(basis)
    G = np.zeros((m, m))
    for a in range(m):
        for b in range(m):
            G[a, b] = eval_fn(xi, basis[a], basis[b])
    return G


def numerical_rank(M: np.ndarray, tol: float = 1e-9) -> int:
    """Count of singular values above ``tol``."""
    if M.size == 0:
        return 0
    return int(np.count_nonzero(np.linalg.svd(M, compute_uv=False) > tol))


def two_level_basis() -> list[np.ndarray]:
    """Orthonormal basis {identity, diagonal, real off-diag, imaginary off-diag} of 2x2 Hermitians."""
    return [
        np.eye(2, dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, 1j], [-1j, 0]], dtype=complex),
    ]


def two_level_point(u: float, x: float, y: float, z: float) -> np.ndarray:
    """2x2 Hermitian with the given coordinates in the ``two_level_basis``."""
    bu, bx, by, bz = two_level_basis()
    return u * bu + x * bx + y * by + z * bz

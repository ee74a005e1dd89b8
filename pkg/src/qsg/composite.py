"""Bipartite structure: product embedding, partial trace, separability tools.

The composite index convention is row-major: basis vector (i1, i2) of the
two factors sits at position i1*n2 + i2, which makes the operator product
embedding exactly the Kronecker product.  The entanglement seed on pure
states is the linear entropy of the reduced state, 1 - Tr((Tr_2 rho)^2):
continuous, invariant under local unitaries, and zero exactly on product
states.  ``convex_roof`` (in ``qsg.roof``) extends it to mixed states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, StateError
from .hermitian import real_coords
from .tensors import momentum_map

__all__ = [
    "ProductSpace",
    "segre",
    "partial_trace",
    "partial_transpose",
    "ppt_test",
    "SEED_FUNCTIONS",
    "seed_function",
    "PureDecomposition",
    "caratheodory_reduce",
    "sample_separable",
]


@dataclass(frozen=True)
class ProductSpace:
    """Fixed factorization n = n1 * n2 with the row-major index map."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"factor dimensions must be positive, got {self.n1}x{self.n2}")

    @property
    def n(self) -> int:
        return self.n1 * self.n2

    def index(self, i1: int, i2: int) -> int:
        return i1 * self.n2 + i2

    def factors(self, i: int) -> tuple[int, int]:
        return divmod(i, self.n2)

    def check_dim(self, rho: np.ndarray) -> None:
        if rho.shape[0] != self.n:
            raise DimensionMismatchError(rho.shape[0], self.n, what="matrix and product space")


def segre(ps: ProductSpace, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Operator product embedding (a, b) -> a (x) b in the row-major convention."""
    if a.shape[0] != ps.n1:
        raise DimensionMismatchError(a.shape[0], ps.n1, what="first factor and product space")
    if b.shape[0] != ps.n2:
        raise DimensionMismatchError(b.shape[0], ps.n2, what="second factor and product space")
    return np.kron(a, b)


def partial_trace(ps: ProductSpace, rho: np.ndarray, keep: int = 1) -> np.ndarray:
    """Trace out one factor; preserves trace and positivity."""
    ps.check_dim(rho)
    R = rho.reshape(ps.n1, ps.n2, ps.n1, ps.n2)
    if keep == 1:
        return np.einsum("ikjk->ij", R)
    if keep == 2:
        return np.einsum("kikj->ij", R)
    raise ValueError(f"keep must be 1 or 2, got {keep}")


def partial_transpose(ps: ProductSpace, rho: np.ndarray, factor: int = 2) -> np.ndarray:
    """Transpose on one tensor factor."""
    ps.check_dim(rho)
    R = rho.reshape(ps.n1, ps.n2, ps.n1, ps.n2)
    if factor == 2:
        out = R.transpose(0, 3, 2, 1)
    elif factor == 1:
        out = R.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"factor must be 1 or 2, got {factor}")
    return out.reshape(ps.n, ps.n)


def ppt_test(ps: ProductSpace, rho: np.ndarray, tol: float = 1e-9) -> bool:
    """Positivity of the partial transpose.

    Necessary for separability in any dimension and equivalent to it when
    n1 * n2 <= 6.  The truth value does not depend on the chosen factor.
    """
    w = np.linalg.eigvalsh(partial_transpose(ps, rho, factor=2))
    return bool(w.min() >= -tol)


def _linear_entropy_seed(ps: ProductSpace, rho_pure: np.ndarray) -> float:
    red = partial_trace(ps, rho_pure, keep=1)
    return float(1.0 - np.einsum("ij,ji->", red, red).real)


SEED_FUNCTIONS = {"linear_entropy": _linear_entropy_seed}


def seed_function(
    ps: ProductSpace, rho_pure: np.ndarray, tol: float = 1e-9, kind: str = "linear_entropy"
) -> float:
    """Entanglement seed of a pure state; zero exactly on product states.

    Defined on pure states only: the input must be a rank-one density
    matrix within ``tol``.  Values lie in [0, 1 - 1/min(n1, n2)].
    """
    ps.check_dim(rho_pure)
    if min(ps.n1, ps.n2) < 2:
        raise StateError("entanglement seed needs both factors of dimension >= 2")
    if kind not in SEED_FUNCTIONS:
        raise ValueError(f"unknown seed function {kind!r}; available: {sorted(SEED_FUNCTIONS)}")
    w = np.linalg.eigvalsh(rho_pure)
    if abs(w.sum() - 1.0) > tol or w.min() < -tol or abs(w.max() - 1.0) > tol:
        raise StateError(
            "seed function is defined on pure states only: eigenvalues "
            f"range [{w.min():.3e}, {w.max():.6f}], trace {w.sum():.6f}"
        )
    return SEED_FUNCTIONS[kind](ps, rho_pure)


@dataclass(frozen=True)
class PureDecomposition:
    """Convex mixture of pure states: weights t_i and unit vectors x_i."""

    weights: np.ndarray
    vectors: np.ndarray  # shape (m, n), rows are unit vectors

    def __post_init__(self):
        t = np.asarray(self.weights, dtype=float)
        X = np.asarray(self.vectors, dtype=complex)
        if t.ndim != 1 or X.ndim != 2 or t.size != X.shape[0]:
            raise StateError(
                f"decomposition shape mismatch: {t.shape} weights vs {X.shape} vectors"
            )
        if t.size == 0:
            raise StateError("decomposition must have at least one term")
        if t.min() < -1e-12:
            raise StateError(f"negative weight {t.min():.3e} in decomposition")
        if abs(t.sum() - 1.0) > 1e-12:
            raise StateError(f"weights sum to {t.sum():.15f}, expected 1")
        norms = np.linalg.norm(X, axis=1)
        if np.abs(norms - 1.0).max() > 1e-12:
            raise StateError("decomposition vectors must be unit within 1e-12")
        object.__setattr__(self, "weights", t)
        object.__setattr__(self, "vectors", X)

    def __len__(self) -> int:
        return self.weights.size

    def state(self) -> np.ndarray:
        """The mixed state sum_i t_i |x_i><x_i|."""
        Xw = self.vectors.conj() * self.weights[:, None]
        return self.vectors.T @ Xw

    def cost(self, ps: ProductSpace, kind: str = "linear_entropy") -> float:
        """Average seed value sum_i t_i F(|x_i><x_i|)."""
        total = 0.0
        for t, x in zip(self.weights, self.vectors):
            total += t * SEED_FUNCTIONS[kind](ps, momentum_map(x))
        return total


def caratheodory_reduce(
    dec: PureDecomposition, ambient_dim: int | None = None
) -> PureDecomposition:
    """Shorten a convex mixture to at most ambient_dim + 1 terms, same state.

    Terms are eliminated one at a time: an affine dependence among the
    projectors (viewed in a real space of dimension ``ambient_dim``,
    default n^2) is shifted into the weights until one of them reaches
    zero.  The represented mixed state is preserved to round-off.
    """
    n = dec.vectors.shape[1]
    d = ambient_dim if ambient_dim is not None else n * n
    target = d + 1
    t = dec.weights.copy()
    X = dec.vectors.copy()
    pts = np.stack([real_coords(momentum_map(x)) for x in X], axis=1)
    while t.size > target:
        A = np.vstack([pts, np.ones(t.size)])
        _, s, Vh = np.linalg.svd(A)
        a = Vh[-1]
        ratios = np.abs(a) / t
        i0 = int(np.argmax(ratios))
        if a[i0] == 0.0:
            raise StateError("degenerate affine dependence during reduction")
        t = t - a * (t[i0] / a[i0])
        t[i0] = 0.0
        keep = t > 1e-15
        t = t[keep]
        X = X[keep]
        pts = pts[:, keep]
    t = np.maximum(t, 0.0)
    t = t / t.sum()
    return PureDecomposition(weights=t, vectors=X)


def sample_separable(ps: ProductSpace, terms: int, seed: int = 0) -> np.ndarray:
    """Random separable state: a convex mixture of ``terms`` product pure states.

    Weights are uniform Dirichlet, factor vectors are Haar random.
    Separability is certified by construction.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    rho = np.zeros((ps.n, ps.n), dtype=complex)
    weights = rng.dirichlet(np.ones(terms))
    for t in weights:
        x1 = rng.standard_normal(ps.n1) + 1j * rng.standard_normal(ps.n1)
        x2 = rng.standard_normal(ps.n2) + 1j * rng.standard_normal(ps.n2)
        x = np.kron(x1 / np.linalg.norm(x1), x2 / np.linalg.norm(x2))
        rho += t * momentum_map(x)
    return (rho + rho.conj().T) / 2

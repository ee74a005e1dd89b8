"""Deterministic random generators used by the verification battery and tests."""

from __future__ import annotations

import numpy as np

__all__ = [
    "random_hermitian",
    "random_unit_vector",
    "random_psd",
    "random_density",
    "haar_unitary",
    "random_traceless",
]


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (M + M.conj().T) / 2


def random_traceless(n: int, rng: np.random.Generator) -> np.ndarray:
    A = random_hermitian(n, rng)
    return A - np.trace(A).real / n * np.eye(n)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return x / np.linalg.norm(x)


def random_psd(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Random positive matrix of rank exactly k."""
    T = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    X = T.conj().T @ T
    return (X + X.conj().T) / 2


def random_density(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rho = random_psd(n, rank if rank is not None else n, rng)
    return rho / np.trace(rho).real


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))

"""Convex-roof extension of the pure-state entanglement seed.

The roof value at a mixed state is the infimum of the ensemble-averaged
seed over all pure-state decompositions.  Decompositions of a state with
eigendecomposition rho = sum_k w_k |e_k><e_k| (rank r) are parametrized
by matrices W with orthonormal columns: member i is
x_i = sum_k W_ik sqrt(w_k) e_k, with weight ||x_i||^2.  The optimizer
descends this compact matrix manifold from several deterministic random
starts and returns an upper bound together with the realizing
decomposition.

The inner loop runs in the compiled kernel ``qsg._roofkernel`` when the
extension was built, otherwise in the NumPy twin ``qsg._roofkernel_py``;
set ``QSG_ROOF_BACKEND=python|compiled`` to force one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _roofkernel_py
from .composite import ProductSpace, PureDecomposition, caratheodory_reduce, seed_function
from .errors import OptimizerError, StateError

try:  # pragma: no cover - exercised only when the extension is missing
    from . import _roofkernel as _compiled
except ImportError:
    _compiled = None


def _select_backend():
    forced = os.environ.get("QSG_ROOF_BACKEND", "").strip().lower()
    if forced == "python":
        return _roofkernel_py
    if forced == "compiled":
        if _compiled is None:
            raise ImportError("QSG_ROOF_BACKEND=compiled but qsg._roofkernel is not built")
        return _compiled
    return _compiled if _compiled is not None else _roofkernel_py


_backend = _select_backend()
BACKEND = _backend.BACKEND

__all__ = ["BACKEND", "RoofConfig", "OptimizerTrace", "RoofEstimate", "convex_roof"]


@dataclass(frozen=True)
class RoofConfig:
    """Optimizer configuration; identical seeds give identical estimates."""

    seed: int = 0
    restarts: int = 32
    max_iter: int = 2000
    gtol: float = 1e-8
    ensemble_size: int | None = None  # default: n^2 + 1
    tol: float = 1e-9
    extra_starts: tuple[PureDecomposition, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class OptimizerTrace:
    iterations: int
    restarts: int
    final_grad_norm: float


@dataclass(frozen=True)
class RoofEstimate:
    """Upper bound on the roof value with the decomposition achieving it."""

    value: float
    best_decomposition: PureDecomposition
    optimizer_trace: OptimizerTrace


def _eigendata(ps: ProductSpace, rho: np.ndarray, tol: float):
    ps.check_dim(rho)
    w, U = np.linalg.eigh(rho)
    order = np.argsort(-w, kind="stable")
    w, U = w[order], U[:, order]
    if abs(w.sum() - 1.0) > max(tol, 1e-9) or w.min() < -max(tol, 1e-9):
        raise StateError(
            f"not a density matrix: trace {w.sum():.6f}, min eigenvalue {w.min():.3e}"
        )
    keep = w > 1e-12
    return w[keep], U[:, keep]


def _decomposition_from_w(W: np.ndarray, V: np.ndarray) -> PureDecomposition:
    X = W @ V.T
    t = np.einsum("ij,ij->i", X, X.conj()).real
    keep = t > 1e-12
    t = t[keep]
    X = X[keep] / np.sqrt(t)[:, None]
    return PureDecomposition(weights=t / t.sum(), vectors=X)


def _w_from_decomposition(dec: PureDecomposition, w: np.ndarray, V: np.ndarray, m: int):
    if len(dec) > m:
        dec = caratheodory_reduce(dec)
    if len(dec) > m:
        return None
    Z = np.sqrt(dec.weights)[:, None] * dec.vectors
    W = np.zeros((m, w.size), dtype=complex)
    W[: len(dec)] = (Z @ V.conj()) / w[None, :]
    return W


def convex_roof(ps: ProductSpace, rho: np.ndarray, cfg: RoofConfig = RoofConfig()) -> RoofEstimate:
    """Upper bound on the convex-roof entanglement of a density matrix.

    Pure states short-circuit to their seed value with the one-term
    decomposition.  Mixed states run multi-start projected gradient
    descent; the returned value is recomputed from the best decomposition,
    so ``value == best.cost(ps)`` to round-off.  Results are deterministic
    given ``cfg.seed`` and would be unchanged by running restarts in
    parallel: every restart depends only on its own start, and the merge
    takes the minimum value with ties going to the lowest restart index.
    """
    if min(ps.n1, ps.n2) < 2:
        raise StateError("entanglement estimation needs both factors of dimension >= 2")
    w, U = _eigendata(ps, rho, cfg.tol)
    if w.size == 1:
        vec = U[:, 0] / np.linalg.norm(U[:, 0])
        dec = PureDecomposition(weights=np.array([1.0]), vectors=vec[None, :])
        return RoofEstimate(
            value=seed_function(ps, rho, tol=max(cfg.tol, 1e-8)),
            best_decomposition=dec,
            optimizer_trace=OptimizerTrace(iterations=0, restarts=0, final_grad_norm=0.0),
        )

    n = ps.n
    r = w.size
    m = cfg.ensemble_size if cfg.ensemble_size is not None else n * n + 1
    if m < r:
        raise StateError(f"ensemble size {m} cannot represent a rank-{r} state")
    V = U * np.sqrt(w)[None, :]

    rng = np.random.default_rng(cfg.seed)
    starts = []
    for dec in cfg.extra_starts:
        W0 = _w_from_decomposition(dec, w, V, m)
        if W0 is not None:
            starts.append(W0)
    for _ in range(cfg.restarts):
        starts.append(
            rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
        )
    if not starts:
        raise OptimizerError("no optimizer starts: restarts == 0 and no extra starts")

    best = None
    for idx, W0 in enumerate(starts):
        W_opt, value, iters, gnorm = _backend.minimize_ensemble(
            V, W0, ps.n1, ps.n2, max_iter=cfg.max_iter, gtol=cfg.gtol
        )
        if not np.isfinite(value):
            raise OptimizerError(
                f"optimizer diverged on restart {idx} (value {value})",
                trace=OptimizerTrace(iterations=iters, restarts=idx + 1, final_grad_norm=gnorm),
            )
        if best is None or value < best[0]:
            best = (value, W_opt, iters, gnorm)

    value, W_opt, iters, gnorm = best
    dec = _decomposition_from_w(W_opt, V)
    return RoofEstimate(
        value=max(dec.cost(ps), 0.0),
        best_decomposition=dec,
        optimizer_trace=OptimizerTrace(
            iterations=iters, restarts=len(starts), final_grad_norm=gnorm
        ),
    )

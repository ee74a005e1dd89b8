"""NumPy fallback for the convex-roof optimizer hot loop.

Mirrors ``qsg._roofkernel`` (the Cython extension): projected gradient
descent with Barzilai-Borwein steps, Armijo backtracking, and modified
Gram-Schmidt retraction on the set of column-orthonormal complex
matrices.  The objective is the ensemble-averaged linear entropy

    f(W) = sum_i [ t_i - Tr((M_i M_i^dagger)^2) / t_i ],

where row i of X = W V^T is the unnormalized ensemble member, t_i its
squared norm and M_i its n1 x n2 matrix reshape.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_T_FLOOR = 1e-150


def _cost_terms(W, V, n1, n2):
    Xt = W @ V.T
    m = Xt.shape[0]
    t = np.einsum("ij,ij->i", Xt, Xt.conj()).real
    Mt = Xt.reshape(m, n1, n2)
    P = Mt @ Mt.conj().transpose(0, 2, 1)
    S = np.einsum("iab,iab->i", P, P.conj()).real
    return Xt, Mt, P, t, S


def cost(W, V, n1, n2):
    _, _, _, t, S = _cost_terms(W, V, n1, n2)
    live = t > _T_FLOOR
    return float(np.sum(t[live] - S[live] / t[live]))


def cost_grad(W, V, n1, n2):
    """Objective value and Euclidean gradient with respect to conj(W)."""
    Xt, Mt, P, t, S = _cost_terms(W, V, n1, n2)
    m, n = Xt.shape
    live = t > _T_FLOOR
    f = float(np.sum(t[live] - S[live] / t[live]))
    ts = np.where(live, t, 1.0)
    coef = np.where(live, 1.0 + S / ts**2, 1.0)
    PM = (P @ Mt).reshape(m, n)
    D = coef[:, None] * Xt - np.where(live, 2.0 / ts, 0.0)[:, None] * PM
    return f, D @ V.conj()


def project_tangent(W, G):
    H = W.conj().T @ G
    return G - W @ ((H + H.conj().T) / 2)


def mgs(W):
    """Modified Gram-Schmidt column orthonormalization; None when degenerate."""
    Q = np.array(W, dtype=complex, copy=True)
    for c in range(Q.shape[1]):
        for p in range(c):
            Q[:, c] -= Q[:, p] * np.vdot(Q[:, p], Q[:, c])
        nrm = np.linalg.norm(Q[:, c])
        if nrm < 1e-12:
            return None
        Q[:, c] /= nrm
    return Q


def minimize_ensemble(V, W0, n1, n2, max_iter=2000, gtol=1e-8, step0=1.0):
    """Minimize the ensemble cost over column-orthonormal W starting from W0.

    Returns ``(W, value, iterations, grad_norm)``.  Monotone in the
    objective: the result never exceeds the cost of the starting point.
    """
    V = np.ascontiguousarray(V, dtype=complex)
    W = mgs(np.ascontiguousarray(W0, dtype=complex))
    if W is None:
        W, _ = np.linalg.qr(np.ascontiguousarray(W0, dtype=complex))
    f, GE = cost_grad(W, V, n1, n2)
    G = project_tangent(W, GE)
    gn2 = float(np.vdot(G, G).real)
    step = step0
    iters = 0
    while iters < max_iter:
        if np.sqrt(gn2) < gtol:
            break
        iters += 1
        alpha = step
        W_new = None
        f_new = f
        for _ in range(60):
            cand = mgs(W - alpha * G)
            if cand is not None:
                f_cand = cost(cand, V, n1, n2)
                if f_cand <= f - 1e-4 * alpha * 2.0 * gn2:
                    W_new, f_new = cand, f_cand
                    break
            alpha *= 0.5
        if W_new is None:
            break
        _, GE_new = cost_grad(W_new, V, n1, n2)
        G_new = project_tangent(W_new, GE_new)
        S_mat = W_new - W
        Y_mat = G_new - G
        ss = float(np.vdot(S_mat, S_mat).real)
        sy = float(np.vdot(S_mat, Y_mat).real)
        step = min(max(ss / sy, 1e-10), 1e2) if sy > 1e-300 else min(alpha * 4.0, 1e2)
        W, f, G = W_new, f_new, G_new
        gn2 = float(np.vdot(G, G).real)
    return W, f, iters, float(np.sqrt(gn2))

# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loop for the convex-roof optimizer.

Same algorithm as ``qsg._roofkernel_py``: projected gradient descent with
Barzilai-Borwein steps, Armijo backtracking, and modified Gram-Schmidt
retraction on column-orthonormal complex matrices.  The entry point
``minimize_ensemble`` is a drop-in replacement for the NumPy version.
"""

from libc.math cimport sqrt

import numpy as np

BACKEND = "compiled"

ctypedef double complex cplx

cdef double T_FLOOR = 1e-150


cdef double _cost_member(cplx[::1] x, int n1, int n2, cplx[:, ::1] P,
                         cplx[::1] d, bint want_grad):
    # One ensemble member: cost contribution t - S/t; if want_grad, fill
    # d with the derivative of that contribution w.r.t. conj(x).
    cdef int a, b, c, j
    cdef double t = 0.0, S = 0.0
    cdef cplx acc
    cdef int n = n1 * n2
    for j in range(n):
        t += x[j].real * x[j].real + x[j].imag * x[j].imag
    for a in range(n1):
        for b in range(n1):
            acc = 0
            for c in range(n2):
                acc += x[a * n2 + c] * x[b * n2 + c].conjugate()
            P[a, b] = acc
    for a in range(n1):
        for b in range(n1):
            S += P[a, b].real * P[a, b].real + P[a, b].imag * P[a, b].imag
    if t <= T_FLOOR:
        if want_grad:
            for j in range(n):
                d[j] = x[j]
        return 0.0
    if want_grad:
        for a in range(n1):
            for c in range(n2):
                acc = 0
                for b in range(n1):
                    acc += P[a, b] * x[b * n2 + c]
                d[a * n2 + c] = (1.0 + S / (t * t)) * x[a * n2 + c] - (2.0 / t) * acc
    return t - S / t


cdef double _cost(cplx[:, ::1] W, cplx[:, ::1] V, int n1, int n2,
                  cplx[::1] x, cplx[:, ::1] P, cplx[::1] d):
    cdef int m = W.shape[0], r = W.shape[1], n = V.shape[0]
    cdef int i, j, k
    cdef cplx acc
    cdef double f = 0.0
    for i in range(m):
        for j in range(n):
            acc = 0
            for k in range(r):
                acc += W[i, k] * V[j, k]
            x[j] = acc
        f += _cost_member(x, n1, n2, P, d, 0)
    return f


cdef double _cost_grad(cplx[:, ::1] W, cplx[:, ::1] V, int n1, int n2,
                       cplx[:, ::1] GE, cplx[::1] x, cplx[:, ::1] P, cplx[::1] d):
    cdef int m = W.shape[0], r = W.shape[1], n = V.shape[0]
    cdef int i, j, k
    cdef cplx acc
    cdef double f = 0.0
    for i in range(m):
        for j in range(n):
            acc = 0
            for k in range(r):
                acc += W[i, k] * V[j, k]
            x[j] = acc
        f += _cost_member(x, n1, n2, P, d, 1)
        for k in range(r):
            acc = 0
            for j in range(n):
                acc += V[j, k].conjugate() * d[j]
            GE[i, k] = acc
    return f


cdef void _project(cplx[:, ::1] W, cplx[:, ::1] G, cplx[:, ::1] H):
    # G <- G - W * herm(W^dagger G)
    cdef int m = W.shape[0], r = W.shape[1]
    cdef int i, a, b
    cdef cplx acc
    for a in range(r):
        for b in range(r):
            acc = 0
            for i in range(m):
                acc += W[i, a].conjugate() * G[i, b]
            H[a, b] = acc
    for a in range(r):
        for b in range(a, r):
            acc = 0.5 * (H[a, b] + H[b, a].conjugate())
            H[a, b] = acc
            H[b, a] = acc.conjugate()
    for i in range(m):
        for b in range(r):
            acc = 0
            for a in range(r):
                acc += W[i, a] * H[a, b]
            G[i, b] -= acc


cdef bint _mgs(cplx[:, ::1] Q):
    cdef int m = Q.shape[0], r = Q.shape[1]
    cdef int c, p, i
    cdef cplx coef
    cdef double nrm
    for c in range(r):
        for p in range(c):
            coef = 0
            for i in range(m):
                coef += Q[i, p].conjugate() * Q[i, c]
            for i in range(m):
                Q[i, c] -= Q[i, p] * coef
        nrm = 0.0
        for i in range(m):
            nrm += Q[i, c].real * Q[i, c].real + Q[i, c].imag * Q[i, c].imag
        nrm = sqrt(nrm)
        if nrm < 1e-12:
            return 0
        for i in range(m):
            Q[i, c] = Q[i, c] / nrm
    return 1


cdef double _dot_real(cplx[:, ::1] A, cplx[:, ::1] B):
    cdef int m = A.shape[0], r = A.shape[1]
    cdef int i, k
    cdef double s = 0.0
    for i in range(m):
        for k in range(r):
            s += A[i, k].real * B[i, k].real + A[i, k].imag * B[i, k].imag
    return s


def cost(W, V, int n1, int n2):
    W_arr = np.ascontiguousarray(W, dtype=complex)
    V_arr = np.ascontiguousarray(V, dtype=complex)
    cdef cplx[:, ::1] Wm = W_arr
    cdef cplx[:, ::1] Vm = V_arr
    cdef int n = Vm.shape[0]
    x_arr = np.empty(n, dtype=complex)
    P_arr = np.empty((n1, n1), dtype=complex)
    d_arr = np.empty(n, dtype=complex)
    cdef cplx[::1] x = x_arr
    cdef cplx[:, ::1] P = P_arr
    cdef cplx[::1] d = d_arr
    return _cost(Wm, Vm, n1, n2, x, P, d)


def cost_grad(W, V, int n1, int n2):
    """Objective value and Euclidean gradient with respect to conj(W)."""
    W_arr = np.ascontiguousarray(W, dtype=complex)
    V_arr = np.ascontiguousarray(V, dtype=complex)
    cdef cplx[:, ::1] Wm = W_arr
    cdef cplx[:, ::1] Vm = V_arr
    cdef int n = Vm.shape[0]
    GE_arr = np.empty_like(W_arr)
    x_arr = np.empty(n, dtype=complex)
    P_arr = np.empty((n1, n1), dtype=complex)
    d_arr = np.empty(n, dtype=complex)
    cdef cplx[:, ::1] GE = GE_arr
    cdef cplx[::1] x = x_arr
    cdef cplx[:, ::1] P = P_arr
    cdef cplx[::1] d = d_arr
    cdef double f = _cost_grad(Wm, Vm, n1, n2, GE, x, P, d)
    return f, GE_arr


def minimize_ensemble(V, W0, int n1, int n2, int max_iter=2000,
                      double gtol=1e-8, double step0=1.0):
    """Minimize the ensemble cost over column-orthonormal W starting from W0.

    Returns ``(W, value, iterations, grad_norm)``; monotone in the objective.
    """
    V_arr = np.ascontiguousarray(V, dtype=complex)
    W_arr = np.ascontiguousarray(W0, dtype=complex).copy()
    cdef cplx[:, ::1] Vm = V_arr
    cdef cplx[:, ::1] W = W_arr
    cdef int m = W.shape[0], r = W.shape[1], n = Vm.shape[0]

    cand_arr = np.empty_like(W_arr)
    G_arr = np.empty_like(W_arr)
    Gn_arr = np.empty_like(W_arr)
    S_arr = np.empty_like(W_arr)
    Y_arr = np.empty_like(W_arr)
    H_arr = np.empty((r, r), dtype=complex)
    x_arr = np.empty(n, dtype=complex)
    P_arr = np.empty((n1, n1), dtype=complex)
    d_arr = np.empty(n, dtype=complex)
    cdef cplx[:, ::1] cand = cand_arr
    cdef cplx[:, ::1] G = G_arr
    cdef cplx[:, ::1] Gn = Gn_arr
    cdef cplx[:, ::1] Smat = S_arr
    cdef cplx[:, ::1] Ymat = Y_arr
    cdef cplx[:, ::1] H = H_arr
    cdef cplx[::1] x = x_arr
    cdef cplx[:, ::1] P = P_arr
    cdef cplx[::1] d = d_arr

    cdef int i, k, bt, iters = 0
    cdef double f, f_cand, f_new, gn2, alpha, step = step0, ss, sy
    cdef bint accepted

    if not _mgs(W):
        Q, _ = np.linalg.qr(np.ascontiguousarray(W0, dtype=complex))
        W_arr[:, :] = Q
    f = _cost_grad(W, Vm, n1, n2, G, x, P, d)
    _project(W, G, H)
    gn2 = _dot_real(G, G)

    while iters < max_iter:
        if sqrt(gn2) < gtol:
            break
        iters += 1
        alpha = step
        accepted = 0
        f_new = f
        for bt in range(60):
            for i in range(m):
                for k in range(r):
                    cand[i, k] = W[i, k] - alpha * G[i, k]
            if _mgs(cand):
                f_cand = _cost(cand, Vm, n1, n2, x, P, d)
                if f_cand <= f - 1e-4 * alpha * 2.0 * gn2:
                    accepted = 1
                    f_new = f_cand
                    break
            alpha *= 0.5
        if not accepted:
            break
        _cost_grad(cand, Vm, n1, n2, Gn, x, P, d)
        _project(cand, Gn, H)
        for i in range(m):
            for k in range(r):
                Smat[i, k] = cand[i, k] - W[i, k]
                Ymat[i, k] = Gn[i, k] - G[i, k]
        ss = _dot_real(Smat, Smat)
        sy = _dot_real(Smat, Ymat)
        if sy > 1e-300:
            step = ss / sy
            if step < 1e-10:
                step = 1e-10
            elif step > 1e2:
                step = 1e2
        else:
            step = alpha * 4.0
            if step > 1e2:
                step = 1e2
        for i in range(m):
            for k in range(r):
                W[i, k] = cand[i, k]
                G[i, k] = Gn[i, k]
        f = f_new
        gn2 = _dot_real(G, G)

    return W_arr, f, iters, sqrt(gn2)

"""Benchmark the convex-roof optimizer kernels: compiled vs NumPy.

Runs the same multi-start minimization on a fixed set of seeded problems
through both backends and prints per-problem timings plus the value
agreement.  Usage:  python benchmarks/bench_roof.py [--restarts N]
"""

import argparse
import time

import numpy as np

from qsg import _roofkernel_py
from qsg.composite import ProductSpace, sample_separable
from qsg.rand import random_density

try:
    from qsg import _roofkernel as _compiled
except ImportError:
    _compiled = None


def _problems():
    rng = np.random.default_rng(0)
    out = []
    for i in range(4):
        out.append(("2x2 random", ProductSpace(2, 2), random_density(4, rng)))
    out.append(("2x2 separable", ProductSpace(2, 2), sample_separable(ProductSpace(2, 2), 4, seed=1)))
    out.append(("2x3 random", ProductSpace(2, 3), random_density(6, rng)))
    return out


def _run(backend, ps, rho, restarts, seed=0):
    w, U = np.linalg.eigh(rho)
    order = np.argsort(-w, kind="stable")
    w, U = w[order], U[:, order]
    keep = w > 1e-12
    V = U[:, keep] * np.sqrt(w[keep])
    r = int(keep.sum())
    m = ps.n * ps.n + 1
    rng = np.random.default_rng(seed)
    best = np.inf
    iters = 0
    started = time.perf_counter()
    for _ in range(restarts):
        W0 = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
        _, value, its, _ = backend.minimize_ensemble(V, W0, ps.n1, ps.n2, 2000, 1e-8)
        best = min(best, value)
        iters += its
    return best, iters, time.perf_counter() - started


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--restarts", type=int, default=16)
    args = parser.parse_args()

    if _compiled is None:
        print("compiled kernel not built; benchmarking the NumPy backend only")
    header = f"{'problem':14s} {'backend':9s} {'value':>12s} {'iters':>7s} {'time':>9s} {'/iter':>9s}"
    print(header)
    print("-" * len(header))
    for label, ps, rho in _problems():
        rows = []
        for name, backend in (("compiled", _compiled), ("python", _roofkernel_py)):
            if backend is None:
                continue
            value, iters, elapsed = _run(backend, ps, rho, args.restarts)
            rows.append((name, value, iters, elapsed))
            print(
                f"{label:14s} {name:9s} {value:12.6f} {iters:7d} {elapsed:8.3f}s "
                f"{1e6 * elapsed / max(iters, 1):8.1f}us"
            )
        if len(rows) == 2:
            speedup = rows[1][3] / rows[0][3]
            drift = abs(rows[0][1] - rows[1][1])
            print(f"{'':14s} speedup {speedup:5.1f}x, value drift {drift:.2e}")
    print("\nnote: backends follow the same algorithm; floating-point results may")
    print("differ in the last digits, the minima agree to optimizer tolerance.")


if __name__ == "__main__":
    main()

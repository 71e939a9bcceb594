#!/usr/bin/env python3
"""Benchmark the Jacobi eigensolver kernel: numba JIT vs pure-NumPy fallback.

Runs the identical kernel body through both backends on the same batch of
symmetric matrices and reports wall times plus the worst eigenvalue
discrepancy (expected 0: same arithmetic, same order).

    python benchmarks/bench_eigen.py --dims 4 8 16 --count 200
"""

import argparse
import time

import numpy as np

from callebaut_lab._kernels import make_jacobi
from callebaut_lab.matcore import JACOBI_REL_TOL, SWEEP_BUDGET_FACTOR


def _batch(dim: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(count):
        x = rng.standard_normal((dim, dim))
        mats.append((x + x.T) / 2.0)
    return mats


def _run(kernel, mats):
    eigs = []
    start = time.perf_counter()
    for m in mats:
        a = m.copy()
        v = np.eye(a.shape[0])
        fro = np.linalg.norm(m)
        d = a.shape[0]
        converged, _, _ = kernel(a, v, JACOBI_REL_TOL * fro, SWEEP_BUDGET_FACTOR * d * d)
        assert converged
        eigs.append(np.sort(np.diagonal(a)))
    return time.perf_counter() - start, eigs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[4, 8, 16])
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    jit_kernel, jit_name = make_jacobi(force_numpy=False)
    py_kernel, _ = make_jacobi(force_numpy=True)
    if jit_name != "numba":
        print("numba unavailable; benchmarking the fallback against itself")

    # Warm the JIT outside the timed region.
    warm = _batch(3, 1, 123)[0]
    jit_kernel(warm.copy(), np.eye(3), 1e-14, 270)

    print(f"{'dim':>4} {'count':>6} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}  max |d lambda|")
    for dim in args.dims:
        mats = _batch(dim, args.count, args.seed)
        t_jit, e_jit = _run(jit_kernel, mats)
        t_py, e_py = _run(py_kernel, mats)
        worst = max(
            float(np.max(np.abs(a - b))) for a, b in zip(e_jit, e_py)
        )
        speedup = t_py / t_jit if t_jit > 0 else float("inf")
        print(f"{dim:>4} {args.count:>6} {t_jit:>10.4f} {t_py:>10.4f} {speedup:>7.1f}x  {worst:.3e}")


if __name__ == "__main__":
    main()

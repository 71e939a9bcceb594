"""Hot numeric kernels with a numba-jitted fast path and a pure-NumPy fallback.

The cyclic Jacobi sweep below is the innermost loop of the whole package:
every spectral function, geometric mean, Loewner gap, and band-containment
check runs through it.  By default it is compiled with ``numba.njit``.  Set
the environment variable ``CALLEBAUT_LAB_FORCE_NUMPY=1`` to select the
interpreted fallback (same code object, same arithmetic, bit-identical
results, much slower).  ``benchmarks/bench_eigen.py`` compares the two.
"""

import math
import os

ENV_FLAG = "CALLEBAUT_LAB_FORCE_NUMPY"


def _jacobi_cycle(a, v, fro_tol, max_sweeps):
    """Diagonalize symmetric ``a`` in place by cyclic Jacobi rotations.

    ``a`` is overwritten with a (nearly) diagonal matrix and ``v`` (passed in
    as the identity) accumulates the rotations, so that on return
    ``v @ diag(a) @ v.T`` reconstructs the input.  Convergence is declared
    when the off-diagonal Frobenius norm drops to ``fro_tol``.  The first
    three sweeps use a decreasing rotation threshold so that large elements
    are annihilated first; later sweeps rotate on every non-negligible entry.

    Returns ``(converged, sweeps_done, off_norm)``.
    """
    d = a.shape[0]
    if d < 2:
        return True, 0, 0.0
    off = 0.0
    for p in range(d - 1):
        for q in range(p + 1, d):
            off += 2.0 * a[p, q] * a[p, q]
    off = math.sqrt(off)
    sweeps = 0
    while off > fro_tol:
        if sweeps >= max_sweeps:
            return False, sweeps, off
        if sweeps < 3:
            tresh = 0.2 * off / (d * d)
        else:
            tresh = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                g = 100.0 * abs(apq)
                # Entries that no longer move the diagonal are zeroed outright.
                if sweeps > 3 and abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                elif abs(apq) > tresh:
                    h = a[q, q] - a[p, p]
                    if abs(h) + g == abs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    tau = s / (1.0 + c)
                    h = t * apq
                    a[p, p] -= h
                    a[q, q] += h
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for i in range(p):
                        g1 = a[i, p]
                        g2 = a[i, q]
                        a[i, p] = g1 - s * (g2 + tau * g1)
                        a[p, i] = a[i, p]
                        a[i, q] = g2 + s * (g1 - tau * g2)
                        a[q, i] = a[i, q]
                    for i in range(p + 1, q):
                        g1 = a[p, i]
                        g2 = a[i, q]
                        a[p, i] = g1 - s * (g2 + tau * g1)
                        a[i, p] = a[p, i]
                        a[i, q] = g2 + s * (g1 - tau * g2)
                        a[q, i] = a[i, q]
                    for i in range(q + 1, d):
                        g1 = a[p, i]
                        g2 = a[q, i]
                        a[p, i] = g1 - s * (g2 + tau * g1)
                        a[i, p] = a[p, i]
                        a[q, i] = g2 + s * (g1 - tau * g2)
                        a[i, q] = a[q, i]
                    for i in range(d):
                        g1 = v[i, p]
                        g2 = v[i, q]
                        v[i, p] = g1 - s * (g2 + tau * g1)
                        v[i, q] = g2 + s * (g1 - tau * g2)
        sweeps += 1
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += 2.0 * a[p, q] * a[p, q]
        off = math.sqrt(off)
    return True, sweeps, off


def _numpy_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


def make_jacobi(force_numpy: bool | None = None):
    """Return ``(kernel, backend_name)`` for the Jacobi cycle.

    ``force_numpy=None`` consults the environment flag; booleans override it.
    """
    if force_numpy is None:
        force_numpy = _numpy_disabled_by_env()
    if not force_numpy:
        try:
            from numba import njit

            return njit(cache=True, nogil=True)(_jacobi_cycle), "numba"
        except ImportError:
            pass
    return _jacobi_cycle, "numpy"


jacobi_cycle, BACKEND = make_jacobi()


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND

"""The JIT kernel and the interpreted fallback must agree bit for bit."""

import numpy as np

from callebaut_lab._kernels import ENV_FLAG, make_jacobi
from callebaut_lab.matcore import JACOBI_REL_TOL, SWEEP_BUDGET_FACTOR


def _solve(kernel, m):
    a = m.copy()
    v = np.eye(m.shape[0])
    d = m.shape[0]
    converged, _, _ = kernel(
        a, v, JACOBI_REL_TOL * np.linalg.norm(m), SWEEP_BUDGET_FACTOR * d * d
    )
    assert converged
    return a, v


def test_backends_bitwise_identical():
    jit_kernel, jit_name = make_jacobi(force_numpy=False)
    py_kernel, py_name = make_jacobi(force_numpy=True)
    assert py_name == "numpy"
    rng = np.random.default_rng(17)
    for d in (2, 3, 5, 8, 12):
        x = rng.standard_normal((d, d))
        m = (x + x.T) / 2.0
        a1, v1 = _solve(jit_kernel, m)
        a2, v2 = _solve(py_kernel, m)
        assert np.array_equal(a1, a2), (jit_name, d)
        assert np.array_equal(v1, v2), (jit_name, d)


def test_env_flag_selects_fallback(monkeypatch):
    monkeypatch.setenv(ENV_FLAG, "1")
    _, name = make_jacobi()
    assert name == "numpy"
    monkeypatch.delenv(ENV_FLAG)
    _, name = make_jacobi()
    assert name in ("numba", "numpy")  # numpy only if numba is not installed

import numpy as np
import pytest

from callebaut_lab.matcore import SymMatrix, sym_eigen


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Trigger the JIT compile once so timed tests measure the solver, not LLVM.
    sym_eigen(SymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))

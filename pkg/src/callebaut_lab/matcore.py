"""Dense real symmetric matrix algebra.

Everything the inequality registry needs at the matrix level lives here:
a deterministic cyclic-Jacobi eigensolver, spectral functions (fractional
powers), Kronecker and Hadamard products, the compression that maps a tensor
product onto the Hadamard product, weighted geometric means in congruence
form, and signed Loewner-gap measurement.

All operations are pure functions of their inputs; nothing here mutates
shared state, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import jacobi_cycle
from .errors import ConvergenceError, DomainError, ShapeError, SizeError

#: Eigenvalues below this floor disqualify a matrix from fractional powers
#: and geometric means.  Inputs are rejected, never regularized: silently
#: shifting a spectrum could mask a genuine inequality violation.
EIG_FLOOR = 1e-12

#: Dimension cap for the eigensolver (and hence for every spectral function).
MAX_EIGEN_DIM = 64

#: Dimension cap for Kronecker products.
KRON_DIM_CAP = 4096

#: Convergence: off-diagonal Frobenius norm <= this factor times ||A||_F.
JACOBI_REL_TOL = 1e-14

#: Sweep budget for the Jacobi cycle, as a multiple of d^2.
SWEEP_BUDGET_FACTOR = 30

#: Default tolerance for Loewner-order verdicts (relative gap).
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SymMatrix:
    """Real symmetric matrix with value semantics.

    Construction symmetrizes the input exactly, ``(X + X^T) / 2``, so
    ``entries[i][j] == entries[j][i]`` bitwise.  The backing array is made
    read-only; treat instances as immutable values.
    """

    array: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.array, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ShapeError("dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise DomainError("matrix entries must be finite")
        sym = (arr + arr.T) / 2.0
        sym.flags.writeable = False
        object.__setattr__(self, "array", sym)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @staticmethod
    def identity(dim: int) -> "SymMatrix":
        return SymMatrix(np.eye(dim))

    @staticmethod
    def zero(dim: int) -> "SymMatrix":
        return SymMatrix(np.zeros((dim, dim)))

    @staticmethod
    def diagonal(values: Sequence[float]) -> "SymMatrix":
        return SymMatrix(np.diag(np.asarray(values, dtype=np.float64)))

    def is_diagonal(self) -> bool:
        off = self.array - np.diag(np.diagonal(self.array))
        return not np.any(off)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same_dim(other)
        return SymMatrix(self.array + other.array)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same_dim(other)
        return SymMatrix(self.array - other.array)

    def __mul__(self, scalar: float) -> "SymMatrix":
        return SymMatrix(self.array * float(scalar))

    __rmul__ = __mul__

    def _check_same_dim(self, other: "SymMatrix"):
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (ascending) and the matching orthogonal eigenvector matrix.

    Column ``k`` of ``eigenvectors`` pairs with ``eigenvalues[k]``; each
    column's first nonzero component is positive, so the decomposition is a
    deterministic function of the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


@dataclass(frozen=True)
class LoewnerGap:
    """Signed gap of ``LHS <= RHS`` in the Loewner order.

    ``min_eig`` is the smallest eigenvalue of ``RHS - LHS``;
    ``rel_gap = min_eig / max(1, ||RHS||_2)``; ``satisfied`` iff
    ``rel_gap >= -tol`` for the tolerance supplied at evaluation.
    """

    min_eig: float
    rel_gap: float
    satisfied: bool


def sym_eigen(a: SymMatrix) -> EigenDecomposition:
    """Full eigendecomposition by cyclic Jacobi with a threshold strategy.

    Deterministic for fixed input.  Raises :class:`ConvergenceError` with the
    off-diagonal residual if the sweep budget (``30 * d^2`` cyclic sweeps) is
    exhausted, which does not happen for finite input in practice.
    """
    d = a.dim
    if d > MAX_EIGEN_DIM:
        raise SizeError(f"eigensolver supports dim <= {MAX_EIGEN_DIM}, got {d}")
    work = a.array.copy()
    vecs = np.eye(d)
    fro = float(np.linalg.norm(a.array))
    if fro > 0.0:
        converged, sweeps, off = jacobi_cycle(
            work, vecs, JACOBI_REL_TOL * fro, SWEEP_BUDGET_FACTOR * d * d
        )
        if not converged:
            raise ConvergenceError(
                f"Jacobi cycle did not converge after {sweeps} sweeps; "
                f"off-diagonal residual {off:.6e}",
                residual=float(off),
            )
    w = np.diagonal(work).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    q = vecs[:, order]
    for k in range(d):
        nz = np.nonzero(q[:, k])[0]
        if nz.size and q[nz[0], k] < 0.0:
            q[:, k] = -q[:, k]
    w.flags.writeable = False
    q.flags.writeable = False
    return EigenDecomposition(w, q)


def _rebuild(eigenvalues: np.ndarray, q: np.ndarray) -> SymMatrix:
    return SymMatrix((q * eigenvalues) @ q.T)


def spectral_pow(a: SymMatrix, p: float) -> SymMatrix:
    """Spectral power ``a^p`` through the eigendecomposition.

    Nonnegative integer powers are defined for any symmetric matrix; every
    other exponent requires all eigenvalues ``>= EIG_FLOOR``.
    """
    p = float(p)
    eig = sym_eigen(a)
    integer_power = p >= 0.0 and p.is_integer()
    if not integer_power and eig.eigenvalues[0] < EIG_FLOOR:
        raise DomainError(
            f"spectral power {p} requires eigenvalues >= {EIG_FLOOR:g}; "
            f"smallest is {eig.eigenvalues[0]:.6e}"
        )
    return _rebuild(np.power(eig.eigenvalues, p), eig.eigenvectors)


def spectral_norm(a: SymMatrix) -> float:
    """Operator 2-norm, i.e. the largest eigenvalue magnitude."""
    w = sym_eigen(a).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))


def kron(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    """Kronecker (tensor) product; block ``(i, j)`` equals ``a[i, j] * b``."""
    out_dim = a.dim * b.dim
    if out_dim > KRON_DIM_CAP:
        raise SizeError(
            f"Kronecker product dimension {out_dim} exceeds cap {KRON_DIM_CAP}"
        )
    return SymMatrix(np.kron(a.array, b.array))


def hadamard(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    """Entrywise (Hadamard) product of equal-dimension matrices."""
    if a.dim != b.dim:
        raise ShapeError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return SymMatrix(a.array * b.array)


def compress(t: SymMatrix, d: int) -> SymMatrix:
    """Compress a ``d*d``-dimensional tensor product onto its Hadamard image.

    Picks ``result[i][j] = t[i*d + i][j*d + j]``, the congruence by the
    isometry sending the j-th basis vector to its tensor square; applied to
    ``kron(a, b)`` it returns ``hadamard(a, b)`` bit-exactly.
    """
    if d < 1 or t.dim != d * d:
        raise ShapeError(f"dimension {t.dim} is not the perfect square of {d}")
    idx = np.arange(d) * (d + 1)
    return SymMatrix(t.array[np.ix_(idx, idx)])


class MeanPath:
    """Weighted geometric means of one positive-definite pair.

    Factors the congruence ``a^(1/2) (a^(-1/2) b a^(-1/2))^alpha a^(1/2)`` so
    that repeated weights on the same pair reuse the two eigendecompositions.
    ``geo_mean`` is the one-shot wrapper.
    """

    def __init__(self, a: SymMatrix, b: SymMatrix):
        if a.dim != b.dim:
            raise ShapeError(f"dimension mismatch: {a.dim} vs {b.dim}")
        ea = sym_eigen(a)
        if ea.eigenvalues[0] < EIG_FLOOR:
            raise DomainError(
                f"left operand is not positive definite "
                f"(min eigenvalue {ea.eigenvalues[0]:.6e} < {EIG_FLOOR:g})"
            )
        eb = sym_eigen(b)
        if eb.eigenvalues[0] < EIG_FLOOR:
            raise DomainError(
                f"right operand is not positive definite "
                f"(min eigenvalue {eb.eigenvalues[0]:.6e} < {EIG_FLOOR:g})"
            )
        qa = ea.eigenvectors
        root = np.sqrt(ea.eigenvalues)
        self._a_half = (qa * root) @ qa.T
        a_inv_half = (qa * (1.0 / root)) @ qa.T
        inner = SymMatrix(a_inv_half @ b.array @ a_inv_half)
        self._inner = sym_eigen(inner)
        if self._inner.eigenvalues[0] <= 0.0:
            raise DomainError(
                "congruence-transformed operand lost positivity "
                f"(min eigenvalue {self._inner.eigenvalues[0]:.6e}); "
                "inputs are too ill-conditioned"
            )

    def at(self, alpha: float) -> SymMatrix:
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"mean weight must lie in [0, 1], got {alpha}")
        qi = self._inner.eigenvectors
        powered = (qi * np.power(self._inner.eigenvalues, alpha)) @ qi.T
        return SymMatrix(self._a_half @ powered @ self._a_half)


def geo_mean(a: SymMatrix, b: SymMatrix, alpha: float) -> SymMatrix:
    """Weighted geometric mean of positive-definite ``a`` and ``b``.

    Equals ``a^(1-alpha) b^alpha`` for commuting inputs; ``alpha = 1/2`` is
    the metric geometric mean.
    """
    return MeanPath(a, b).at(alpha)


def loewner_gap(lhs: SymMatrix, rhs: SymMatrix, tol: float = DEFAULT_TOL) -> LoewnerGap:
    """Measure the signed gap of ``lhs <= rhs`` in the Loewner order."""
    if lhs.dim != rhs.dim:
        raise ShapeError(f"dimension mismatch: {lhs.dim} vs {rhs.dim}")
    diff = rhs - lhs
    min_eig = float(sym_eigen(diff).eigenvalues[0])
    rel = min_eig / max(1.0, spectral_norm(rhs))
    return LoewnerGap(min_eig=min_eig, rel_gap=rel, satisfied=rel >= -tol)


def sum_matrices(mats: Iterable[SymMatrix]) -> SymMatrix:
    """Sum a non-empty sequence of equal-dimension symmetric matrices."""
    mats = list(mats)
    if not mats:
        raise ShapeError("cannot sum an empty sequence of matrices")
    total = mats[0]
    for m in mats[1:]:
        total = total + m
    return total

"""Deterministic sampling of scalar tuples and band-constrained SPD families.

Randomness comes from explicit ``(master_seed, stream_id)`` pairs: splitmix64
expands the pair into the state of a xoshiro256** generator, uniform doubles
take the top 53 bits, and Gaussians come from Box-Muller.  The exact bit-level
recipe is written down in ``docs/rng.md`` so that any run can be reproduced
from its report lines alone.

Matrices with a prescribed spectrum are built directly: eigenvalues are drawn
inside the band and conjugated by a Haar-distributed orthogonal matrix, so
containment is exact by construction instead of approximate by rejection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, HypothesisError, ShapeError, SizeError
from .matcore import MAX_EIGEN_DIM, SymMatrix, sym_eigen

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_PI = 2.0 * math.pi


def _mix64(z: int) -> int:
    """splitmix64 output mix."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class RngState:
    """xoshiro256** stream with value-style determinism.

    Instances are cheap and independent; derive one per trial so execution
    order and parallel scheduling cannot change any drawn number.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3", "_spare")

    def __init__(self, s0: int, s1: int, s2: int, s3: int):
        if s0 == s1 == s2 == s3 == 0:
            s0 = _GOLDEN  # all-zero state is invalid for xoshiro
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        self._spare = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s1 * 5) & _MASK
        result = (((x << 7) | (x >> 57)) & _MASK) * 9 & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def normal(self) -> float:
        """Standard Gaussian via Box-Muller; the sine mate is cached."""
        if self._spare is not None:
            z = self._spare
            self._spare = None
            return z
        u1 = ((self.next_u64() >> 11) + 1) * 2.0 ** -53  # in (0, 1]
        u2 = (self.next_u64() >> 11) * 2.0 ** -53
        radius = math.sqrt(-2.0 * math.log(u1))
        angle = _TWO_PI * u2
        self._spare = radius * math.sin(angle)
        return radius * math.cos(angle)


def derive_rng(master_seed: int, stream_id: int) -> RngState:
    """Independent deterministic stream for ``(master_seed, stream_id)``.

    Identical arguments give an identical stream regardless of evaluation
    order; distinct stream ids decorrelate through two splitmix64 mixes.
    """
    z = _mix64(master_seed & _MASK)
    z = _mix64((z ^ (((stream_id & _MASK) * _GOLDEN) & _MASK)) + _GOLDEN)
    s = []
    for _ in range(4):
        z = (z + _GOLDEN) & _MASK
        s.append(_mix64(z))
    return RngState(*s)


@dataclass(frozen=True)
class SpectralBand:
    """The band hypothesis ``0 < m_lo <= B <= m_hi < M_lo <= A <= M_hi``.

    ``m_lo, m_hi`` bound the lower family, ``M_lo, M_hi`` the upper one;
    ``h = M_lo / m_hi`` and ``h_prime = M_hi / m_lo`` are the inner and outer
    spectral ratios.  Degenerate edges (``m_lo == m_hi``) are admitted, but
    the families must stay separated: ``m_hi < M_lo`` strictly.
    """

    m_lo: float
    m_hi: float
    M_lo: float
    M_hi: float

    def __post_init__(self):
        if not 0.0 < self.m_lo:
            raise HypothesisError(f"band needs 0 < m_lo, got m_lo={self.m_lo}")
        if not self.m_lo <= self.m_hi:
            raise HypothesisError(
                f"band needs m_lo <= m_hi, got ({self.m_lo}, {self.m_hi})"
            )
        if not self.m_hi < self.M_lo:
            raise HypothesisError(
                f"band needs m_hi < M_lo (separated families), "
                f"got ({self.m_hi}, {self.M_lo})"
            )
        if not self.M_lo <= self.M_hi:
            raise HypothesisError(
                f"band needs M_lo <= M_hi, got ({self.M_lo}, {self.M_hi})"
            )

    @property
    def h(self) -> float:
        return self.M_lo / self.m_hi

    @property
    def h_prime(self) -> float:
        return self.M_hi / self.m_lo

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m_lo, self.m_hi, self.M_lo, self.M_hi)


@dataclass(frozen=True)
class FamilyInstance:
    """Sequences ``A_1..A_n`` (upper band) and ``B_1..B_n`` (lower band)."""

    n: int
    dim: int
    A_list: tuple[SymMatrix, ...]
    B_list: tuple[SymMatrix, ...]
    band: SpectralBand

    def __post_init__(self):
        if self.n < 1 or len(self.A_list) != self.n or len(self.B_list) != self.n:
            raise ShapeError(
                f"family needs n >= 1 matrices per side, got n={self.n}, "
                f"|A|={len(self.A_list)}, |B|={len(self.B_list)}"
            )
        for m in (*self.A_list, *self.B_list):
            if m.dim != self.dim:
                raise ShapeError(
                    f"family dimension mismatch: expected {self.dim}, got {m.dim}"
                )


@dataclass(frozen=True)
class ScalarTuple:
    """Positive tuples ``x`` and ``y``, optionally band-constrained."""

    x_list: tuple[float, ...]
    y_list: tuple[float, ...]
    band: SpectralBand | None = None

    def __post_init__(self):
        if len(self.x_list) != len(self.y_list) or not self.x_list:
            raise ShapeError("x_list and y_list must be non-empty and equal length")
        if min(self.x_list) <= 0.0 or min(self.y_list) <= 0.0:
            raise DomainError("tuple entries must be positive")
        if self.band is not None:
            b = self.band
            for v in self.x_list:
                if not b.M_lo * (1 - 1e-12) <= v <= b.M_hi * (1 + 1e-12):
                    raise HypothesisError(f"x entry {v} outside [{b.M_lo}, {b.M_hi}]")
            for v in self.y_list:
                if not b.m_lo * (1 - 1e-12) <= v <= b.m_hi * (1 + 1e-12):
                    raise HypothesisError(f"y entry {v} outside [{b.m_lo}, {b.m_hi}]")


def haar_orthogonal(d: int, rng: RngState) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
    R-diagonal sign correction.  Gaussians fill the matrix row-major."""
    if d < 1:
        raise ShapeError(f"dimension must be >= 1, got {d}")
    if d > MAX_EIGEN_DIM:
        raise SizeError(f"dimension {d} exceeds cap {MAX_EIGEN_DIM}")
    g = np.empty((d, d))
    for i in range(d):
        for j in range(d):
            g[i, j] = rng.normal()
    q, r = np.linalg.qr(g)
    signs = np.where(np.diagonal(r) < 0.0, -1.0, 1.0)
    return q * signs


def spd_in_band(
    d: int, lo: float, hi: float, rng: RngState, pin_extremes: bool = False
) -> SymMatrix:
    """SPD matrix with spectrum inside ``[lo, hi]``.

    Eigenvalues are i.i.d. uniform on the interval (sorted ascending); with
    ``pin_extremes`` and ``d >= 2`` the smallest is set to ``lo`` and the
    largest to ``hi``, which is where Kantorovich-type violations live.
    """
    if not 0.0 < lo <= hi:
        raise DomainError(f"need 0 < lo <= hi, got ({lo}, {hi})")
    if d > MAX_EIGEN_DIM:
        raise SizeError(f"dimension {d} exceeds cap {MAX_EIGEN_DIM}")
    w = np.array(sorted(rng.uniform_in(lo, hi) for _ in range(d)))
    if pin_extremes and d >= 2:
        w[0] = lo
        w[-1] = hi
    if d == 1:
        return SymMatrix(w.reshape(1, 1))
    q = haar_orthogonal(d, rng)
    return SymMatrix((q * w) @ q.T)


def sample_family(
    n: int,
    d: int,
    band: SpectralBand,
    rng: RngState,
    pin_extremes: bool = False,
) -> FamilyInstance:
    """Draw ``n`` upper-band and ``n`` lower-band matrices (A's first)."""
    a_list = tuple(
        spd_in_band(d, band.M_lo, band.M_hi, rng, pin_extremes) for _ in range(n)
    )
    b_list = tuple(
        spd_in_band(d, band.m_lo, band.m_hi, rng, pin_extremes) for _ in range(n)
    )
    return FamilyInstance(n=n, dim=d, A_list=a_list, B_list=b_list, band=band)


def sample_scalars(n: int, band: SpectralBand, rng: RngState) -> ScalarTuple:
    """Draw band-constrained positive tuples (x's first)."""
    x = tuple(rng.uniform_in(band.M_lo, band.M_hi) for _ in range(n))
    y = tuple(rng.uniform_in(band.m_lo, band.m_hi) for _ in range(n))
    return ScalarTuple(x_list=x, y_list=y, band=band)


def validate_band_containment(inst: FamilyInstance, rel_slack: float = 1e-10):
    """Check every family spectrum against the band (hypothesis error if not)."""
    b = inst.band
    for label, mats, lo, hi in (
        ("A", inst.A_list, b.M_lo, b.M_hi),
        ("B", inst.B_list, b.m_lo, b.m_hi),
    ):
        for j, m in enumerate(mats):
            w = sym_eigen(m).eigenvalues
            if w[0] < lo * (1 - rel_slack) or w[-1] > hi * (1 + rel_slack):
                raise HypothesisError(
                    f"{label}_{j + 1} spectrum [{w[0]:.6g}, {w[-1]:.6g}] violates "
                    f"the band [{lo}, {hi}]"
                )

"""Scalar inequality family: Kantorovich constant, Young-type refinements and
reverses, the Callebaut chain, and its banded corollaries, evaluated as signed
gaps (RHS - LHS, so a nonnegative gap certifies the instance).

Every gap is assembled with ``math.fsum`` so that algebraic equality cases
resolve to rounding noise (~1e-15 relative), not accumulation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError, HypothesisError

#: Half-exclusion zone: parameters with a denominator ``t - 1/2`` (or a
#: hypothesis ``nu != 1/2``) are rejected when closer than this to 1/2.
#: Coefficients blow up inside the zone and verdicts drown in rounding noise.
DELTA_HALF = 1e-6

fsum = math.fsum


def kantorovich(x: float) -> float:
    """Kantorovich constant ``(x + 1)^2 / (4 x)``; >= 1 and symmetric in x <-> 1/x."""
    if x <= 0.0:
        raise DomainError(f"Kantorovich constant needs a positive argument, got {x}")
    return (x + 1.0) * (x + 1.0) / (4.0 * x)


def kantorovich_min_over_interval(lo: float, hi: float) -> float:
    """Minimum of the Kantorovich constant over ``[lo, hi]``.

    The constant decreases left of 1 and increases right of it, so the
    minimum is 1 when the interval contains 1 and otherwise sits at the
    endpoint nearest 1.
    """
    if not 0.0 < lo <= hi:
        raise DomainError(f"interval must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
    if lo <= 1.0 <= hi:
        return 1.0
    return min(kantorovich(lo), kantorovich(hi))


@dataclass(frozen=True)
class ScalarParams:
    """Positive pair ``(a, b)`` with a Young weight ``nu`` in [0, 1].

    Derived: ``r = min(nu, 1-nu)``, ``r_prime = min(2r, 1-2r)``, and
    ``nu_max = max(nu, 1-nu)`` (kept under its own name to avoid colliding
    with the chain exponent ``s``).
    """

    a: float
    b: float
    nu: float

    def __post_init__(self):
        if self.a <= 0.0 or self.b <= 0.0:
            raise DomainError(f"a and b must be positive, got a={self.a}, b={self.b}")
        if not 0.0 <= self.nu <= 1.0:
            raise HypothesisError(f"nu must lie in [0, 1], got {self.nu}")

    @property
    def r(self) -> float:
        return min(self.nu, 1.0 - self.nu)

    @property
    def r_prime(self) -> float:
        return min(2.0 * self.r, 1.0 - 2.0 * self.r)

    @property
    def nu_max(self) -> float:
        return max(self.nu, 1.0 - self.nu)


class Branch(Enum):
    HIGH = "high"  # 1 >= t >= s > 1/2
    LOW = "low"    # 0 <= t <= s < 1/2


@dataclass(frozen=True)
class ExponentPair:
    """Chain exponents ``(s, t)`` on one of the two admissible branches.

    Either ``1 >= t >= s > 1/2`` (HIGH) or ``0 <= t <= s < 1/2`` (LOW); on
    both branches the derived coefficients are nonnegative.  ``t`` must stay
    clear of the excluded zone around 1/2.
    """

    s: float
    t: float

    def __post_init__(self):
        s, t = self.s, self.t
        if 0.5 < s <= t <= 1.0:
            branch = Branch.HIGH
        elif 0.0 <= t <= s < 0.5:
            branch = Branch.LOW
        else:
            raise HypothesisError(
                f"(s, t) = ({s}, {t}) lies on neither branch "
                "(need 1 >= t >= s > 1/2 or 0 <= t <= s < 1/2)"
            )
        if abs(t - 0.5) < DELTA_HALF:
            raise HypothesisError(
                f"t = {t} lies within {DELTA_HALF:g} of 1/2 (excluded zone)"
            )
        object.__setattr__(self, "_branch", branch)

    @property
    def branch(self) -> Branch:
        return self._branch

    @property
    def c_mid(self) -> float:
        """Middle-term coefficient ``(t - s) / (t - 1/2)``."""
        return (self.t - self.s) / (self.t - 0.5)

    @property
    def r_prime_st(self) -> float:
        """Kantorovich exponent ``min((t-s)/(t-1/2), (s-1/2)/(t-1/2))``."""
        return min(self.c_mid, self.c_rev_paper)

    @property
    def c_rev_paper(self) -> float:
        """Reverse coefficient as printed: ``(s - 1/2) / (t - 1/2)``."""
        return (self.s - 0.5) / (self.t - 0.5)

    @property
    def c_rev_repair(self) -> float:
        """Reverse coefficient re-derived from the proof: ``(t + s - 1) / (t - 1/2)``."""
        return (self.t + self.s - 1.0) / (self.t - 0.5)


@dataclass(frozen=True)
class ProofChainParams:
    """Exponent pair ``(alpha, beta)`` for the tensor proof chain.

    Requires ``0 < |beta| < |alpha|`` with matching signs, so that
    ``mu = beta / alpha`` lies in (0, 1).
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha * self.beta <= 0.0:
            raise HypothesisError(
                f"alpha and beta must share a sign, got ({self.alpha}, {self.beta})"
            )
        if not 0.0 < abs(self.beta) < abs(self.alpha):
            raise HypothesisError(
                f"need 0 < |beta| < |alpha|, got ({self.alpha}, {self.beta})"
            )

    @property
    def mu(self) -> float:
        return self.beta / self.alpha

    @property
    def r_prime(self) -> float:
        return min(self.mu, 1.0 - self.mu)

    @classmethod
    def from_exponents(cls, pair: ExponentPair) -> "ProofChainParams":
        """Map chain exponents to the proof scale: ``alpha = 2t-1, beta = 2s-1``."""
        return cls(2.0 * pair.t - 1.0, 2.0 * pair.s - 1.0)


class ScalarIneqId(Enum):
    YOUNG_CLASSICAL = "YOUNG_CLASSICAL"
    YOUNG_ZUO = "YOUNG_ZUO"
    YOUNG_WU_ZHAO = "YOUNG_WU_ZHAO"
    LEMMA_SUM = "LEMMA_SUM"
    LEMMA_TTT1 = "LEMMA_TTT1"
    LEMMA_4TERM = "LEMMA_4TERM"
    REV_YOUNG = "REV_YOUNG"
    REV_SUM = "REV_SUM"
    REV_TTT = "REV_TTT"
    CHAIN_CALLEBAUT = "CHAIN_CALLEBAUT"
    COR_VOW13_SCALAR = "COR_VOW13_SCALAR"
    COR_OKMN_SCALAR = "COR_OKMN_SCALAR"
    COR_REV_SCALAR = "COR_REV_SCALAR"


def _require_nu_off_half(nu: float):
    if abs(nu - 0.5) < DELTA_HALF:
        raise HypothesisError(
            f"nu = {nu} lies within {DELTA_HALF:g} of 1/2 (statement excludes nu = 1/2)"
        )


def young_classical_gap(p: ScalarParams) -> float:
    """``a^nu b^(1-nu) <= nu a + (1-nu) b``."""
    a, b, nu = p.a, p.b, p.nu
    return fsum((nu * a, (1.0 - nu) * b, -(a ** nu) * (b ** (1.0 - nu))))


def young_zuo_gap(p: ScalarParams) -> float:
    """``K(sqrt(a/b))^r a^nu b^(1-nu) <= nu a + (1-nu) b``."""
    a, b, nu = p.a, p.b, p.nu
    k = kantorovich(math.sqrt(a / b)) ** p.r
    return fsum((nu * a, (1.0 - nu) * b, -k * (a ** nu) * (b ** (1.0 - nu))))


def young_wu_zhao_gap(p: ScalarParams) -> float:
    """``K(sqrt(a/b))^r' a^nu b^(1-nu) + r (sqrt a - sqrt b)^2 <= nu a + (1-nu) b``."""
    _require_nu_off_half(p.nu)
    a, b, nu = p.a, p.b, p.nu
    k = kantorovich(math.sqrt(a / b)) ** p.r_prime
    sq = math.sqrt(a) - math.sqrt(b)
    return fsum(
        (nu * a, (1.0 - nu) * b, -k * (a ** nu) * (b ** (1.0 - nu)), -p.r * sq * sq)
    )


def lemma_sum_gap(p: ScalarParams) -> float:
    """Two-sided Young sum: ``K^r' (a^nu b^(1-nu) + a^(1-nu) b^nu) + 2r (...)^2 <= a + b``."""
    _require_nu_off_half(p.nu)
    a, b, nu = p.a, p.b, p.nu
    k = kantorovich(math.sqrt(a / b)) ** p.r_prime
    sq = math.sqrt(a) - math.sqrt(b)
    return fsum(
        (
            a,
            b,
            -k * (a ** nu) * (b ** (1.0 - nu)),
            -k * (a ** (1.0 - nu)) * (b ** nu),
            -2.0 * p.r * sq * sq,
        )
    )


def lemma_ttt1_gap(a: float, mu: float) -> float:
    """``K(a)^r' (a^mu + a^-mu) + (1-mu)(a + 1/a - 2) <= a + 1/a`` for mu in (0, 1]."""
    if a <= 0.0:
        raise DomainError(f"a must be positive, got {a}")
    if not 0.0 < mu <= 1.0:
        raise HypothesisError(f"mu must lie in (0, 1], got {mu}")
    k = kantorovich(a) ** min(mu, 1.0 - mu)
    inv = 1.0 / a
    return fsum(
        (a, inv, -k * (a ** mu + a ** (-mu)), -(1.0 - mu) * (a + inv - 2.0))
    )


def lemma_4term_gap(p: ScalarParams) -> float:
    """Four-term refinement with the quarter-power bracket, for nu in (0, 1)."""
    if not 0.0 < p.nu < 1.0:
        raise HypothesisError(f"nu must lie in (0, 1), got {p.nu}")
    a, b, nu = p.a, p.b, p.nu
    sq = math.sqrt(a) - math.sqrt(b)
    bracket = fsum(
        (
            2.0 * math.sqrt(a * b),
            a,
            b,
            -2.0 * (a ** 0.25) * (b ** 0.75),
            -2.0 * (a ** 0.75) * (b ** 0.25),
        )
    )
    return fsum(
        (
            a,
            b,
            -(a ** nu) * (b ** (1.0 - nu)),
            -(a ** (1.0 - nu)) * (b ** nu),
            -2.0 * p.r * sq * sq,
            -p.r_prime * bracket,
        )
    )


def rev_young_gap(p: ScalarParams) -> float:
    """Reverse: ``nu a + (1-nu) b <= K^-r' a^nu b^(1-nu) + max(nu,1-nu) (...)^2``."""
    _require_nu_off_half(p.nu)
    a, b, nu = p.a, p.b, p.nu
    k = kantorovich(math.sqrt(a / b)) ** (-p.r_prime)
    sq = math.sqrt(a) - math.sqrt(b)
    return fsum(
        (k * (a ** nu) * (b ** (1.0 - nu)), p.nu_max * sq * sq, -nu * a, -(1.0 - nu) * b)
    )


def rev_sum_gap(p: ScalarParams) -> float:
    """Reverse of the two-sided sum with coefficient ``2 max(nu, 1-nu)``."""
    _require_nu_off_half(p.nu)
    a, b, nu = p.a, p.b, p.nu
    k = kantorovich(math.sqrt(a / b)) ** (-p.r_prime)
    sq = math.sqrt(a) - math.sqrt(b)
    return fsum(
        (
            k * (a ** nu) * (b ** (1.0 - nu)),
            k * (a ** (1.0 - nu)) * (b ** nu),
            2.0 * p.nu_max * sq * sq,
            -a,
            -b,
        )
    )


def rev_ttt_gap(a: float, nu: float) -> float:
    """``a + 1/a <= K(a)^-r' (a^(1-2nu) + a^-(1-2nu)) + 2(1-nu)(a^(1/2) - a^(-1/2))^2``."""
    if a <= 0.0:
        raise DomainError(f"a must be positive, got {a}")
    if not 0.0 <= nu < 0.5:
        raise HypothesisError(f"nu must lie in [0, 1/2), got {nu}")
    r_prime = min(2.0 * nu, 1.0 - 2.0 * nu)
    k = kantorovich(a) ** (-r_prime)
    e = 1.0 - 2.0 * nu
    sq = math.sqrt(a) - 1.0 / math.sqrt(a)
    return fsum(
        (k * (a ** e + a ** (-e)), 2.0 * (1.0 - nu) * sq * sq, -a, -1.0 / a)
    )


def _check_tuples(x: Sequence[float], y: Sequence[float]):
    if len(x) != len(y) or not x:
        raise HypothesisError(
            f"x and y must be non-empty tuples of equal length, got {len(x)} and {len(y)}"
        )
    if min(x) <= 0.0 or min(y) <= 0.0:
        raise HypothesisError("tuple entries must be positive")


def weight_product(x: Sequence[float], y: Sequence[float], u: float) -> float:
    """``(sum x_j^(1-u) y_j^u) * (sum x_j^u y_j^(1-u))`` -- the chain's building block.

    Symmetric under ``u <-> 1-u``; at ``u = 1/2`` it collapses to the squared
    Cauchy-Schwarz sum.
    """
    f1 = fsum((xi ** (1.0 - u)) * (yi ** u) for xi, yi in zip(x, y))
    f2 = fsum((xi ** u) * (yi ** (1.0 - u)) for xi, yi in zip(x, y))
    return f1 * f2


def chain_callebaut_gaps(
    x: Sequence[float], y: Sequence[float], pair: ExponentPair
) -> tuple[float, float, float]:
    """Three links of the scalar Callebaut chain in weight form.

    ``(sum sqrt(x y))^2 <= P_s <= P_t <= (sum x)(sum y)`` where
    ``P_u = weight_product(x, y, u)``; larger spread ``|u - 1/2|`` gives the
    larger product, which is exactly what the two branches encode.
    """
    _check_tuples(x, y)
    s0 = fsum(math.sqrt(xi * yi) for xi, yi in zip(x, y)) ** 2
    ps = weight_product(x, y, pair.s)
    pt = weight_product(x, y, pair.t)
    top = fsum(x) * fsum(y)
    return (fsum((ps, -s0)), fsum((pt, -ps)), fsum((top, -pt)))


def _check_band_tuples(x, y, band):
    for j, xi in enumerate(x):
        if not band.M_lo * (1 - 1e-12) <= xi <= band.M_hi * (1 + 1e-12):
            raise HypothesisError(
                f"x[{j}] = {xi} outside the upper band [{band.M_lo}, {band.M_hi}]"
            )
    for j, yi in enumerate(y):
        if not band.m_lo * (1 - 1e-12) <= yi <= band.m_hi * (1 + 1e-12):
            raise HypothesisError(
                f"y[{j}] = {yi} outside the lower band [{band.m_lo}, {band.m_hi}]"
            )


def cor_vow13_scalar_gaps(x, y, band, pair: ExponentPair) -> tuple[float, float]:
    """Banded scalar refinement: ``P_s <= K^r' P_s + c_mid (P_t - S_0) <= P_t``."""
    _check_tuples(x, y)
    _check_band_tuples(x, y, band)
    e = 2.0 * pair.t - 1.0
    kf = kantorovich(band.M_lo ** e / band.m_hi ** e) ** pair.r_prime_st
    s0 = fsum(math.sqrt(xi * yi) for xi, yi in zip(x, y)) ** 2
    ps = weight_product(x, y, pair.s)
    pt = weight_product(x, y, pair.t)
    mid = fsum((kf * ps, pair.c_mid * pt, -pair.c_mid * s0))
    return (fsum((mid, -ps)), fsum((pt, -mid)))


def cor_okmn_scalar_gap(x, y, pair: ExponentPair) -> float:
    """Band-free scalar refinement with the quarter-exponent bracket term."""
    _check_tuples(x, y)
    s0 = fsum(math.sqrt(xi * yi) for xi, yi in zip(x, y)) ** 2
    ps = weight_product(x, y, pair.s)
    pt = weight_product(x, y, pair.t)
    tmid = weight_product(x, y, (3.0 - 2.0 * pair.s) / 4.0)
    rp = pair.r_prime_st
    return fsum(
        (
            pt,
            -ps,
            -pair.c_mid * ps,
            pair.c_mid * s0,
            -rp * ps,
            -rp * s0,
            2.0 * rp * tmid,
        )
    )


def cor_rev_scalar_gap(x, y, band, pair: ExponentPair) -> float:
    """Banded scalar reverse: ``P_t <= K^-r' P_s + c_rev (P_t - S_0)`` as printed."""
    _check_tuples(x, y)
    _check_band_tuples(x, y, band)
    e = 2.0 * pair.t - 1.0
    kf = kantorovich(band.M_lo ** e / band.m_hi ** e) ** (-pair.r_prime_st)
    s0 = fsum(math.sqrt(xi * yi) for xi, yi in zip(x, y)) ** 2
    ps = weight_product(x, y, pair.s)
    pt = weight_product(x, y, pair.t)
    return fsum((kf * ps, pair.c_rev_paper * pt, -pair.c_rev_paper * s0, -pt))


def scalar_gap(ineq: ScalarIneqId, params=None, extra: dict | None = None):
    """Evaluate one scalar statement to its signed gap(s).

    ``params`` carries the statement's parameter object (:class:`ScalarParams`,
    :class:`ExponentPair`, or :class:`ProofChainParams`); ``extra`` carries
    whatever else the statement needs (``a``/``mu``/``nu`` for the single-
    variable lemmas, ``x``/``y`` tuples and a band for the chain forms).
    Chain statements return a tuple of link gaps.
    """
    extra = extra or {}
    if ineq == ScalarIneqId.YOUNG_CLASSICAL:
        return young_classical_gap(params)
    if ineq == ScalarIneqId.YOUNG_ZUO:
        return young_zuo_gap(params)
    if ineq == ScalarIneqId.YOUNG_WU_ZHAO:
        return young_wu_zhao_gap(params)
    if ineq == ScalarIneqId.LEMMA_SUM:
        return lemma_sum_gap(params)
    if ineq == ScalarIneqId.LEMMA_TTT1:
        mu = params.mu if isinstance(params, ProofChainParams) else extra["mu"]
        return lemma_ttt1_gap(extra["a"], mu)
    if ineq == ScalarIneqId.LEMMA_4TERM:
        return lemma_4term_gap(params)
    if ineq == ScalarIneqId.REV_YOUNG:
        return rev_young_gap(params)
    if ineq == ScalarIneqId.REV_SUM:
        return rev_sum_gap(params)
    if ineq == ScalarIneqId.REV_TTT:
        return rev_ttt_gap(extra["a"], extra["nu"])
    if ineq == ScalarIneqId.CHAIN_CALLEBAUT:
        return chain_callebaut_gaps(extra["x"], extra["y"], params)
    if ineq == ScalarIneqId.COR_VOW13_SCALAR:
        return cor_vow13_scalar_gaps(extra["x"], extra["y"], extra["band"], params)
    if ineq == ScalarIneqId.COR_OKMN_SCALAR:
        return cor_okmn_scalar_gap(extra["x"], extra["y"], params)
    if ineq == ScalarIneqId.COR_REV_SCALAR:
        return cor_rev_scalar_gap(extra["x"], extra["y"], extra["band"], params)
    raise DomainError(f"unknown scalar inequality id: {ineq}")

"""Registry of the operator inequalities under test.

Each id encodes one operator statement built from weighted geometric means,
Hadamard and Kronecker products, and Kantorovich factors; ``evaluate_inequality``
measures its signed Loewner gaps link by link.  Ids whose printed constants are
numerically falsifiable carry a second, derivation-consistent REPAIRED variant
alongside the PAPER_LITERAL one:

* ``TENSOR_TOOL`` / ``REV_TENSOR_DEAR``: the Kantorovich argument becomes
  ``(M/m)^|t-1/2|`` (the substitution that halves operators also halves the
  band exponent), and the reverse coefficient becomes ``(t+s-1)/(t-1/2)``.
* ``HAD_MAMAN`` / ``REV_HAD_MAINTH`` / ``REV_T1_REMARK``: the congruence-
  transformed operands live on a spectrum interval that contains 1, so the
  uniform Kantorovich factor collapses to 1 (computed through
  ``kantorovich_min_over_interval``); reverses also take the repaired
  coefficient.
* ``PROP_HBOUNDS``: the literal two-sided bound adds bare scalars, read here
  as multiples of the identity; the repaired form carries the scalar bound on
  the squared mean-sum term, which is what the congruence argument produces.

Operator means always go through the congruence form (``matcore.MeanPath``);
scalar shortcuts exist only in the independent oracle module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, HypothesisError, ShapeError, VariantError
from .matcore import (
    DEFAULT_TOL,
    LoewnerGap,
    MeanPath,
    SymMatrix,
    hadamard,
    kron,
    loewner_gap,
    spectral_norm,
    spectral_pow,
    sum_matrices,
    sym_eigen,
)
from .sampler import FamilyInstance, SpectralBand, validate_band_containment
from .scalarcore import (
    ExponentPair,
    ProofChainParams,
    kantorovich,
    kantorovich_min_over_interval,
)


class IneqId(Enum):
    WADA = "WADA"
    CHAIN_34RF = "CHAIN_34RF"
    MOJ_MO = "MOJ_MO"
    TENSOR_TOOL = "TENSOR_TOOL"
    PROOF_CHAIN = "PROOF_CHAIN"
    HAD_MAMAN = "HAD_MAMAN"
    HAD_MAMAN2 = "HAD_MAMAN2"
    COR_BJ_IDENTITY = "COR_BJ_IDENTITY"
    REV_TENSOR_DEAR = "REV_TENSOR_DEAR"
    REV_HAD_MAINTH = "REV_HAD_MAINTH"
    REV_T1_REMARK = "REV_T1_REMARK"
    PROP_HBOUNDS = "PROP_HBOUNDS"


class Variant(Enum):
    PAPER_LITERAL = "paper"
    REPAIRED = "repaired"


#: Ids that define a REPAIRED variant; requesting it elsewhere is an error.
REPAIRABLE = frozenset(
    {
        IneqId.TENSOR_TOOL,
        IneqId.HAD_MAMAN,
        IneqId.REV_TENSOR_DEAR,
        IneqId.REV_HAD_MAINTH,
        IneqId.REV_T1_REMARK,
        IneqId.PROP_HBOUNDS,
    }
)

#: Pair-shaped ids (single (A, B) rather than a family).
PAIR_IDS = frozenset(
    {IneqId.WADA, IneqId.TENSOR_TOOL, IneqId.PROOF_CHAIN, IneqId.REV_TENSOR_DEAR}
)

#: Ids whose constants use the spectral band hypothesis.
BANDED_IDS = frozenset(
    {
        IneqId.TENSOR_TOOL,
        IneqId.PROOF_CHAIN,
        IneqId.HAD_MAMAN,
        IneqId.REV_TENSOR_DEAR,
        IneqId.REV_HAD_MAINTH,
        IneqId.REV_T1_REMARK,
        IneqId.PROP_HBOUNDS,
    }
)

#: Hadamard-sum ids, i.e. those whose terms reduce entrywise on diagonal
#: families (the oracle's diagonal cross-check applies to exactly these).
HADAMARD_SUM_IDS = (
    IneqId.CHAIN_34RF,
    IneqId.MOJ_MO,
    IneqId.HAD_MAMAN,
    IneqId.HAD_MAMAN2,
    IneqId.COR_BJ_IDENTITY,
    IneqId.REV_HAD_MAINTH,
    IneqId.REV_T1_REMARK,
    IneqId.PROP_HBOUNDS,
)


@dataclass(frozen=True)
class LinkReport:
    """One link of a chain: its Loewner gap plus operand norms."""

    name: str
    gap: LoewnerGap
    lhs_norm: float
    rhs_norm: float


@dataclass(frozen=True)
class IneqReport:
    """Evaluation outcome for one (id, variant, instance, params) quadruple.

    ``gap`` is the worst link by relative gap; ``witness`` serializes the
    instance exactly when the inequality is not satisfied.
    """

    ineq: IneqId
    variant: Variant
    params: dict
    band: SpectralBand | None
    shape: tuple[int, int]
    links: tuple[LinkReport, ...]
    gap: LoewnerGap
    lhs_norm: float
    rhs_norm: float
    witness: dict | None

    @property
    def satisfied(self) -> bool:
        return self.gap.satisfied


@dataclass(frozen=True)
class InequalityInfo:
    ineq: IneqId
    description: str
    variants: tuple[Variant, ...]
    anchor: str
    takes_pair: bool
    needs_band: bool
    param_kind: str  # "st" | "st_t1" | "alpha" | "alpha_beta"


class _FamilyTerms:
    """Memoized Hadamard-sum terms of one family instance.

    ``S(u)`` is the Hadamard product of the u- and (1-u)-weighted mean sums;
    ``S(1/2)`` is the squared mean-sum and ``top`` the Hadamard product of the
    plain sums.  Each pair's congruence factorization is computed once.
    """

    def __init__(self, inst: FamilyInstance):
        self.inst = inst
        self._paths = [
            MeanPath(a, b) for a, b in zip(inst.A_list, inst.B_list)
        ]
        self._sums: dict[float, SymMatrix] = {}
        self._hadamard: dict[float, SymMatrix] = {}

    def mean_sum(self, u: float) -> SymMatrix:
        if u not in self._sums:
            self._sums[u] = sum_matrices(path.at(u) for path in self._paths)
        return self._sums[u]

    def S(self, u: float) -> SymMatrix:
        key = min(u, 1.0 - u)
        if key not in self._hadamard:
            self._hadamard[key] = hadamard(self.mean_sum(u), self.mean_sum(1.0 - u))
        return self._hadamard[key]

    @property
    def top(self) -> SymMatrix:
        return hadamard(sum_matrices(self.inst.A_list), sum_matrices(self.inst.B_list))


def _literal_karg(band: SpectralBand, t: float) -> float:
    e = 2.0 * t - 1.0
    return band.M_lo ** e / band.m_hi ** e


def _repaired_karg(band: SpectralBand, t: float) -> float:
    return (band.M_lo / band.m_hi) ** abs(t - 0.5)


def _congruence_interval(band: SpectralBand, t: float) -> tuple[float, float]:
    """Spectrum interval of the congruence-transformed tensor operand.

    Both transformed families live in ``[m_lo/M_hi, m_hi/M_lo]``, so the
    ratio operand has spectrum in ``[1/g, g]`` with
    ``g = (m_hi M_hi / (m_lo M_lo))^|t-1/2|``; the interval contains 1.
    """
    g_hi = (band.m_hi * band.M_hi / (band.m_lo * band.M_lo)) ** abs(t - 0.5)
    return 1.0 / g_hi, g_hi


def _pair_terms(a: SymMatrix, b: SymMatrix, exponents) -> dict[float, SymMatrix]:
    return {e: spectral_pow(a, e) for e in exponents}, {
        e: spectral_pow(b, e) for e in exponents
    }


def _tensor_sum(a: SymMatrix, b: SymMatrix, u: float) -> SymMatrix:
    """``A^u x B^(1-u) + A^(1-u) x B^u``."""
    return kron(spectral_pow(a, u), spectral_pow(b, 1.0 - u)) + kron(
        spectral_pow(a, 1.0 - u), spectral_pow(b, u)
    )


# --- link builders -----------------------------------------------------------
# Each builder returns a list of (link_name, LHS, RHS) with LHS <= RHS claimed.


def _links_wada(a: SymMatrix, b: SymMatrix, alpha: float):
    path = MeanPath(a, b)
    g = path.at(0.5)
    gl = path.at(alpha)
    gr = path.at(1.0 - alpha)
    low = kron(g, g)
    mid = 0.5 * (kron(gl, gr) + kron(gr, gl))
    high = 0.5 * (kron(a, b) + kron(b, a))
    return [("geo_vs_mix", low, mid), ("mix_vs_sum", mid, high)]


def _links_chain_34rf(terms: _FamilyTerms, pair: ExponentPair):
    return [
        ("geo_vs_s", terms.S(0.5), terms.S(pair.s)),
        ("s_vs_t", terms.S(pair.s), terms.S(pair.t)),
        ("t_vs_sums", terms.S(pair.t), terms.top),
    ]


def _links_moj_mo(terms: _FamilyTerms, pair: ExponentPair):
    if abs(pair.s - 0.5) < 1e-6:
        raise HypothesisError(
            f"s = {pair.s} lies within 1e-06 of 1/2; the middle coefficient "
            "(t-s)/(s-1/2) is undefined there"
        )
    c = (pair.t - pair.s) / (pair.s - 0.5)
    ss, l0 = terms.S(pair.s), terms.S(0.5)
    mid = ss + c * (ss - l0)
    return [("s_vs_mid", ss, mid), ("mid_vs_t", mid, terms.S(pair.t))]


def _links_tensor_tool(a, b, band, pair: ExponentPair, variant: Variant):
    if variant == Variant.REPAIRED:
        karg = _repaired_karg(band, pair.t)
    else:
        karg = _literal_karg(band, pair.t)
    kf = kantorovich(karg) ** pair.r_prime_st
    p_s = _tensor_sum(a, b, pair.s)
    p_t = _tensor_sum(a, b, pair.t)
    half = kron(spectral_pow(a, 0.5), spectral_pow(b, 0.5))
    lhs = kf * p_s + pair.c_mid * (p_t - 2.0 * half)
    return [("main", lhs, p_t)]


def _links_rev_tensor_dear(a, b, band, pair: ExponentPair, variant: Variant):
    if variant == Variant.REPAIRED:
        karg = _repaired_karg(band, pair.t)
        coeff = pair.c_rev_repair
    else:
        karg = _literal_karg(band, pair.t)
        coeff = pair.c_rev_paper
    kf = kantorovich(karg) ** (-pair.r_prime_st)
    p_s = _tensor_sum(a, b, pair.s)
    p_t = _tensor_sum(a, b, pair.t)
    half = kron(spectral_pow(a, 0.5), spectral_pow(b, 0.5))
    rhs = kf * p_s + coeff * (p_t - 2.0 * half)
    return [("main", p_t, rhs)]


def _links_proof_chain(a, b, band, params: ProofChainParams):
    al, be, mu = params.alpha, params.beta, params.mu
    kf = kantorovich(band.M_lo ** al / band.m_hi ** al) ** params.r_prime

    # Pointwise step on the spectrum of A^alpha x B^-alpha: the Kantorovich-
    # weighted two-term bound at each eigenvalue product, reported at the
    # worst point as a 1x1 link.
    wa = sym_eigen(a).eigenvalues
    wb = sym_eigen(b).eigenvalues
    worst = None
    for la in wa:
        for lb in wb:
            x = la ** al * lb ** (-al)
            lhs_val = kantorovich(x) ** params.r_prime * (x ** mu + x ** (-mu)) + (
                1.0 - mu
            ) * (x + 1.0 / x - 2.0)
            rhs_val = x + 1.0 / x
            if worst is None or rhs_val - lhs_val < worst[1] - worst[0]:
                worst = (lhs_val, rhs_val)
    spectra_link = (
        "pointwise_spectrum",
        SymMatrix(np.array([[worst[0]]])),
        SymMatrix(np.array([[worst[1]]])),
    )

    g = lambda e: _tensor_sum_signed(a, b, e)
    ident = SymMatrix.identity(a.dim * b.dim)
    lhs345 = kf * g(be) + (1.0 - mu) * (g(al) - 2.0 * ident)
    link345 = ("ratio_powers", lhs345, g(al))

    h = lambda e: kron(spectral_pow(a, 1.0 + e), spectral_pow(b, 1.0 - e)) + kron(
        spectral_pow(a, 1.0 - e), spectral_pow(b, 1.0 + e)
    )
    lhs3456 = kf * h(be) + (1.0 - mu) * (h(al) - 2.0 * kron(a, b))
    link3456 = ("shifted_powers", lhs3456, h(al))
    return [spectra_link, link345, link3456]


def _tensor_sum_signed(a: SymMatrix, b: SymMatrix, e: float) -> SymMatrix:
    """``A^e x B^-e + A^-e x B^e`` (exponents of either sign)."""
    return kron(spectral_pow(a, e), spectral_pow(b, -e)) + kron(
        spectral_pow(a, -e), spectral_pow(b, e)
    )


def _maman_factor(band, pair, variant):
    if variant == Variant.REPAIRED:
        lo, hi = _congruence_interval(band, pair.t)
        return kantorovich_min_over_interval(lo, hi) ** pair.r_prime_st
    return kantorovich(_literal_karg(band, pair.t)) ** pair.r_prime_st


def _links_had_maman(terms, band, pair: ExponentPair, variant: Variant):
    kf = _maman_factor(band, pair, variant)
    ss, st, l0 = terms.S(pair.s), terms.S(pair.t), terms.S(0.5)
    lhs = kf * ss + pair.c_mid * (st - l0)
    return [("main", lhs, st)]


def _links_had_maman2(terms, pair: ExponentPair):
    ss, st, l0 = terms.S(pair.s), terms.S(pair.t), terms.S(0.5)
    bracket = ss + l0 - 2.0 * terms.S((3.0 - 2.0 * pair.s) / 4.0)
    lhs = ss + pair.c_mid * (ss - l0) + pair.r_prime_st * bracket
    zero = SymMatrix.zero(ss.dim)
    return [("main", lhs, st), ("bracket_psd", zero, bracket)]


def _links_cor_bj(inst: FamilyInstance, pair: ExponentPair):
    # Lower family pinned to the identity: means become plain powers of A_j.
    def power_sum(u: float) -> SymMatrix:
        return sum_matrices(spectral_pow(a, u) for a in inst.A_list)

    s, t = pair.s, pair.t
    s_s = hadamard(power_sum(1.0 - s), power_sum(s))
    s_t = hadamard(power_sum(1.0 - t), power_sum(t))
    root = power_sum(0.5)
    l0 = hadamard(root, root)
    t_mid = hadamard(power_sum((1.0 + 2.0 * s) / 4.0), power_sum((3.0 - 2.0 * s) / 4.0))
    lhs = s_s + pair.c_mid * (s_s - l0) + pair.r_prime_st * (s_s + l0 - 2.0 * t_mid)
    return [("main", lhs, s_t)]


def _rev_factor(band, pair, variant):
    if variant == Variant.REPAIRED:
        lo, hi = _congruence_interval(band, pair.t)
        return kantorovich_min_over_interval(lo, hi) ** (-pair.r_prime_st)
    return kantorovich(_literal_karg(band, pair.t)) ** (-pair.r_prime_st)


def _links_rev_had_mainth(terms, band, pair: ExponentPair, variant: Variant):
    kf = _rev_factor(band, pair, variant)
    coeff = pair.c_rev_repair if variant == Variant.REPAIRED else pair.c_rev_paper
    ss, st, l0 = terms.S(pair.s), terms.S(pair.t), terms.S(0.5)
    rhs = kf * ss + coeff * (st - l0)
    return [("main", st, rhs)]


def _links_rev_t1(terms, band, pair: ExponentPair, variant: Variant):
    if pair.t != 1.0:
        raise HypothesisError(f"this statement fixes t = 1, got t = {pair.t}")
    kf = _rev_factor(band, pair, variant)
    coeff = 2.0 * pair.s if variant == Variant.REPAIRED else 2.0 * pair.s - 1.0
    ss, l0, top = terms.S(pair.s), terms.S(0.5), terms.top
    rhs = kf * ss + coeff * (top - l0)
    return [("main", top, rhs)]


def _links_prop_hbounds(terms, band, pair: ExponentPair, variant: Variant):
    ss, st = terms.S(pair.s), terms.S(pair.t)
    if variant == Variant.PAPER_LITERAL:
        kf = kantorovich(band.h ** (2.0 * pair.t - 1.0)) ** pair.r_prime_st
        ident = SymMatrix.identity(ss.dim)
        low_term = (math.sqrt(band.h) - math.sqrt(1.0 / band.h)) ** 2
        high_term = (math.sqrt(band.h_prime) - math.sqrt(1.0 / band.h_prime)) ** 2
        lower_lhs = kf * ss + pair.c_mid * low_term * ident
        upper_rhs = (1.0 / kf) * ss + pair.c_rev_paper * high_term * ident
        return [("lower", lower_lhs, st), ("upper", st, upper_rhs)]
    # Repaired: the transformed spectrum interval contains 1, so the lower
    # scalar term collapses to 0 and the factor to 1; the upper scalar bound
    # rides on the squared mean-sum, which is what the congruence produces.
    lo, hi = _congruence_interval(band, pair.t)
    kf = kantorovich_min_over_interval(lo, hi) ** pair.r_prime_st
    l0 = terms.S(0.5)
    up_term = (math.sqrt(hi) - math.sqrt(1.0 / hi)) ** 2
    upper_rhs = (1.0 / kf) * ss + pair.c_rev_repair * up_term * l0
    return [("lower", kf * ss, st), ("upper", st, upper_rhs)]


# --- registry ----------------------------------------------------------------

_REGISTRY: dict[IneqId, InequalityInfo] = {
    info.ineq: info
    for info in (
        InequalityInfo(
            IneqId.WADA,
            "Two-link tensor chain for one positive pair via weighted means",
            (Variant.PAPER_LITERAL,),
            "(A#B)x(A#B) <= 1/2{(A#aB)x(A#(1-a)B) + swap} <= 1/2{AxB + BxA}",
            takes_pair=True,
            needs_band=False,
            param_kind="alpha",
        ),
        InequalityInfo(
            IneqId.CHAIN_34RF,
            "Three-link Hadamard-sum chain interpolating Cauchy-Schwarz",
            (Variant.PAPER_LITERAL,),
            "S(1/2) <= S(s) <= S(t) <= (sum A)o(sum B), S(u) = sum(A#uB) o sum(A#(1-u)B)",
            takes_pair=False,
            needs_band=False,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.MOJ_MO,
            "Refined middle link with coefficient (t-s)/(s-1/2), as printed",
            (Variant.PAPER_LITERAL,),
            "S(s) <= S(s) + (t-s)/(s-1/2)(S(s) - S(1/2)) <= S(t)",
            takes_pair=False,
            needs_band=False,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.TENSOR_TOOL,
            "Kantorovich-weighted tensor two-term bound under the band hypothesis",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "K(c)^r'(A^s x B^(1-s) + swap) + c_mid(P_t - 2 A^(1/2) x B^(1/2)) <= P_t; "
            "c = M^(2t-1)/m^(2t-1) literal, (M/m)^|t-1/2| repaired",
            takes_pair=True,
            needs_band=True,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.PROOF_CHAIN,
            "Intermediate tensor steps behind the two-term bound (pointwise, "
            "ratio powers, shifted powers)",
            (Variant.PAPER_LITERAL,),
            "K(M^a/m^a)^r'(A^b x B^-b + swap) + (1-b/a)(G_a - 2I) <= G_a, then "
            "multiplied through by A x B",
            takes_pair=True,
            needs_band=True,
            param_kind="alpha_beta",
        ),
        InequalityInfo(
            IneqId.HAD_MAMAN,
            "Kantorovich-weighted Hadamard-sum refinement under the band hypothesis",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "K(c)^r' S(s) + c_mid(S(t) - S(1/2)) <= S(t); repaired factor "
            "collapses to 1 (transformed spectrum interval contains 1)",
            takes_pair=False,
            needs_band=True,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.HAD_MAMAN2,
            "Band-free refinement with the quarter-weight bracket (also checks "
            "bracket positivity)",
            (Variant.PAPER_LITERAL,),
            "S(s) + c_mid(S(s) - S(1/2)) + r'(S(s) + S(1/2) - 2 S((3-2s)/4)) <= S(t)",
            takes_pair=False,
            needs_band=False,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.COR_BJ_IDENTITY,
            "Quarter-weight refinement specialized to an identity lower family "
            "(plain power sums)",
            (Variant.PAPER_LITERAL,),
            "P(1-s)oP(s) + c_mid(... - P(1/2)oP(1/2)) + r'(bracket) <= P(1-t)oP(t), "
            "P(u) = sum A_j^u",
            takes_pair=False,
            needs_band=False,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.REV_TENSOR_DEAR,
            "Reverse tensor two-term bound with inverse Kantorovich weight",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "P_t <= K(c)^-r' P_s + c_rev(P_t - 2 A^(1/2) x B^(1/2)); literal "
            "c_rev = (s-1/2)/(t-1/2), repaired (t+s-1)/(t-1/2)",
            takes_pair=True,
            needs_band=True,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.REV_HAD_MAINTH,
            "Reverse Hadamard-sum bound with inverse Kantorovich weight",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "S(t) <= K(c)^-r' S(s) + c_rev(S(t) - S(1/2))",
            takes_pair=False,
            needs_band=True,
            param_kind="st",
        ),
        InequalityInfo(
            IneqId.REV_T1_REMARK,
            "The t = 1 specialization of the reverse Hadamard-sum bound",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "(sum A)o(sum B) <= K(M/m)^-r' S(s) + (2s-1)(top - S(1/2)); "
            "repaired coefficient 2s, factor 1",
            takes_pair=False,
            needs_band=True,
            param_kind="st_t1",
        ),
        InequalityInfo(
            IneqId.PROP_HBOUNDS,
            "Two-sided bound with scalar spectral-ratio terms",
            (Variant.PAPER_LITERAL, Variant.REPAIRED),
            "K(h^(2t-1))^r' S(s) + c_mid(sqrt(h)-sqrt(1/h))^2 <= S(t) <= "
            "K(h^(2t-1))^-r' S(s) + c_rev(sqrt(h')-sqrt(1/h'))^2",
            takes_pair=False,
            needs_band=True,
            param_kind="st",
        ),
    )
}


def list_inequalities() -> tuple[InequalityInfo, ...]:
    """Static registry dump, one entry per operator inequality id."""
    return tuple(_REGISTRY[i] for i in IneqId)


def inequality_info(ineq: IneqId) -> InequalityInfo:
    return _REGISTRY[ineq]


def _coerce_pair(instance, band):
    if isinstance(instance, FamilyInstance):
        if instance.n != 1:
            raise HypothesisError(
                f"pair-shaped statement needs a single pair, got n = {instance.n}"
            )
        return instance.A_list[0], instance.B_list[0], instance.band
    try:
        a, b = instance
    except (TypeError, ValueError):
        raise ShapeError(
            "pair-shaped statement takes (A, B) or a FamilyInstance with n = 1"
        ) from None
    return a, b, band


def _validate_pair_band(a, b, band):
    wa = sym_eigen(a).eigenvalues
    wb = sym_eigen(b).eigenvalues
    slack = 1e-10
    if wa[0] < band.M_lo * (1 - slack) or wa[-1] > band.M_hi * (1 + slack):
        raise HypothesisError(
            f"A spectrum [{wa[0]:.6g}, {wa[-1]:.6g}] violates the band "
            f"[{band.M_lo}, {band.M_hi}]"
        )
    if wb[0] < band.m_lo * (1 - slack) or wb[-1] > band.m_hi * (1 + slack):
        raise HypothesisError(
            f"B spectrum [{wb[0]:.6g}, {wb[-1]:.6g}] violates the band "
            f"[{band.m_lo}, {band.m_hi}]"
        )


def build_links(
    ineq: IneqId,
    instance,
    params,
    variant: Variant = Variant.PAPER_LITERAL,
    band: SpectralBand | None = None,
):
    """Construct the (name, LHS, RHS) operand triples for one statement.

    Shared by ``evaluate_inequality`` and the oracle's diagonal cross-check so
    that both see the identical matrix path.  Positivity failures inside the
    matrix algebra are statement-hypothesis violations at this boundary.
    """
    try:
        return _build_links(ineq, instance, params, variant, band)
    except DomainError as exc:
        raise HypothesisError(str(exc)) from exc


def _build_links(ineq, instance, params, variant, band):
    info = _REGISTRY[ineq]
    if variant == Variant.REPAIRED and ineq not in REPAIRABLE:
        raise VariantError(f"{ineq.value} defines no repaired variant")

    if info.takes_pair:
        a, b, band = _coerce_pair(instance, band)
        if info.needs_band:
            if band is None:
                raise HypothesisError(f"{ineq.value} requires a spectral band")
            _validate_pair_band(a, b, band)
        if ineq == IneqId.WADA:
            alpha = float(params)
            if not 0.0 <= alpha <= 1.0:
                raise HypothesisError(f"weight must lie in [0, 1], got {alpha}")
            return _links_wada(a, b, alpha), band
        if ineq == IneqId.TENSOR_TOOL:
            return _links_tensor_tool(a, b, band, params, variant), band
        if ineq == IneqId.REV_TENSOR_DEAR:
            return _links_rev_tensor_dear(a, b, band, params, variant), band
        if ineq == IneqId.PROOF_CHAIN:
            if not isinstance(params, ProofChainParams):
                raise HypothesisError("proof-chain statement takes ProofChainParams")
            return _links_proof_chain(a, b, band, params), band

    if not isinstance(instance, FamilyInstance):
        raise ShapeError(f"{ineq.value} takes a FamilyInstance")
    if info.needs_band:
        validate_band_containment(instance)
    if not isinstance(params, ExponentPair):
        raise HypothesisError(f"{ineq.value} takes ExponentPair parameters")
    terms = _FamilyTerms(instance)
    if ineq == IneqId.CHAIN_34RF:
        return _links_chain_34rf(terms, params), instance.band
    if ineq == IneqId.MOJ_MO:
        return _links_moj_mo(terms, params), instance.band
    if ineq == IneqId.HAD_MAMAN:
        return _links_had_maman(terms, instance.band, params, variant), instance.band
    if ineq == IneqId.HAD_MAMAN2:
        return _links_had_maman2(terms, params), instance.band
    if ineq == IneqId.COR_BJ_IDENTITY:
        return _links_cor_bj(instance, params), instance.band
    if ineq == IneqId.REV_HAD_MAINTH:
        return (
            _links_rev_had_mainth(terms, instance.band, params, variant),
            instance.band,
        )
    if ineq == IneqId.REV_T1_REMARK:
        return _links_rev_t1(terms, instance.band, params, variant), instance.band
    if ineq == IneqId.PROP_HBOUNDS:
        return (
            _links_prop_hbounds(terms, instance.band, params, variant),
            instance.band,
        )
    raise ShapeError(f"{ineq.value} does not accept a FamilyInstance")


def _params_dict(ineq: IneqId, params) -> dict:
    kind = _REGISTRY[ineq].param_kind
    if kind == "alpha":
        return {"alpha": float(params)}
    if kind == "alpha_beta":
        return {"alpha": params.alpha, "beta": params.beta}
    return {"s": params.s, "t": params.t}


def _serialize_instance(instance, band, params_dict) -> dict:
    payload = {"params": params_dict}
    if band is not None:
        payload["band"] = list(band.as_tuple())
    if isinstance(instance, FamilyInstance):
        payload["n"] = instance.n
        payload["dim"] = instance.dim
        payload["A_list"] = [m.array.tolist() for m in instance.A_list]
        payload["B_list"] = [m.array.tolist() for m in instance.B_list]
    else:
        a, b = instance
        payload["n"] = 1
        payload["dim"] = a.dim
        payload["A_list"] = [a.array.tolist()]
        payload["B_list"] = [b.array.tolist()]
    return payload


def evaluate_inequality(
    ineq: IneqId,
    instance,
    params,
    variant: Variant = Variant.PAPER_LITERAL,
    tol: float = DEFAULT_TOL,
    band: SpectralBand | None = None,
) -> IneqReport:
    """Evaluate one statement on one instance to an :class:`IneqReport`.

    Multi-link statements report every link and summarize by the worst
    relative gap; a witness payload is attached exactly when unsatisfied.
    """
    links, band_used = build_links(ineq, instance, params, variant, band)
    reports = []
    for name, lhs, rhs in links:
        gap = loewner_gap(lhs, rhs, tol)
        reports.append(
            LinkReport(
                name=name,
                gap=gap,
                lhs_norm=spectral_norm(lhs),
                rhs_norm=spectral_norm(rhs),
            )
        )
    worst = min(reports, key=lambda r: r.gap.rel_gap)
    if isinstance(instance, FamilyInstance):
        shape = (instance.n, instance.dim)
    else:
        shape = (1, instance[0].dim)
    pdict = _params_dict(ineq, params)
    witness = None
    if not worst.gap.satisfied:
        witness = _serialize_instance(instance, band_used, pdict)
    return IneqReport(
        ineq=ineq,
        variant=variant,
        params=pdict,
        band=band_used,
        shape=shape,
        links=tuple(reports),
        gap=worst.gap,
        lhs_norm=worst.lhs_norm,
        rhs_norm=worst.rhs_norm,
        witness=witness,
    )

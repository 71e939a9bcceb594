import math

import numpy as np
import pytest

from callebaut_lab.errors import ShapeError
from callebaut_lab.inequalities import HADAMARD_SUM_IDS, IneqId, Variant, evaluate_inequality
from callebaut_lab.matcore import SymMatrix
from callebaut_lab.oracle import (
    BUILTIN_WITNESSES,
    WitnessRecord,
    diagonal_equivalence,
    dump_catalog,
    load_catalog,
    oracle_pow,
    replay_witnesses,
    scalar_min_gap,
)
from callebaut_lab.sampler import FamilyInstance, SpectralBand, derive_rng
from callebaut_lab.scalarcore import ExponentPair, chain_callebaut_gaps

BAND = SpectralBand(0.5, 1.0, 2.0, 8.0)


def _diag_instance(n, d, stream, band=BAND, a_eq_b=False):
    rng = derive_rng(31, stream)
    a = tuple(
        SymMatrix(np.diag([rng.uniform_in(band.M_lo, band.M_hi) for _ in range(d)]))
        for _ in range(n)
    )
    if a_eq_b:
        return FamilyInstance(n=n, dim=d, A_list=a, B_list=a, band=band)
    b = tuple(
        SymMatrix(np.diag([rng.uniform_in(band.m_lo, band.m_hi) for _ in range(d)]))
        for _ in range(n)
    )
    return FamilyInstance(n=n, dim=d, A_list=a, B_list=b, band=band)


def _pair_for(ineq, stream):
    if ineq == IneqId.REV_T1_REMARK:
        return ExponentPair(9 / 16 + (stream % 7) / 16, 1.0)
    options = (
        ExponentPair(0.75, 1.0),
        ExponentPair(9 / 16, 13 / 16),
        ExponentPair(0.25, 0.125),
        ExponentPair(7 / 16, 3 / 16),
    )
    return options[stream % 4]


class TestOraclePow:
    def test_integer_powers_exact(self):
        assert oracle_pow(2.0, 3.0) == 8.0
        assert oracle_pow(5.0, 0.0) == 1.0
        assert oracle_pow(2.0, -2.0) == 0.25

    def test_half_powers(self):
        assert oracle_pow(4.0, 0.5) == pytest.approx(2.0, abs=1e-15)
        assert oracle_pow(2.0, 1.5) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-15)
        assert oracle_pow(4.0, -0.5) == pytest.approx(0.5, rel=1e-15)

    def test_general_matches_libm(self):
        rng = derive_rng(1, 1)
        for _ in range(200):
            x = 10.0 ** rng.uniform_in(-3, 3)
            p = rng.uniform_in(-1, 1)
            assert oracle_pow(x, p) == pytest.approx(x ** p, rel=1e-13)


class TestDiagonalEquivalence:
    def test_all_hadamard_sum_ids(self):
        for ineq in HADAMARD_SUM_IDS:
            for stream in range(20):
                inst = _diag_instance(1 + stream % 3, 1 + stream % 3, stream)
                pair = _pair_for(ineq, stream)
                disc = diagonal_equivalence(ineq, inst, pair)
                scale = max(
                    1.0, max(np.abs(m.array).max() for m in inst.A_list) ** 2 * inst.n ** 2
                )
                assert disc <= 1e-10 * scale, (ineq, stream, disc)

    def test_repaired_variants_too(self):
        for ineq in (IneqId.HAD_MAMAN, IneqId.REV_HAD_MAINTH, IneqId.PROP_HBOUNDS):
            inst = _diag_instance(2, 3, 41)
            disc = diagonal_equivalence(ineq, inst, ExponentPair(0.75, 1.0), Variant.REPAIRED)
            assert disc <= 1e-10 * 100

    def test_equal_families(self):
        inst = _diag_instance(2, 2, 7, a_eq_b=True)
        disc = diagonal_equivalence(IneqId.CHAIN_34RF, inst, _pair_for(IneqId.CHAIN_34RF, 0))
        assert disc <= 1e-12 * max(np.abs(inst.A_list[0].array).max() ** 2 * 4, 1.0)

    def test_rejects_non_diagonal(self):
        inst = FamilyInstance(
            n=1,
            dim=2,
            A_list=(SymMatrix(np.array([[3.0, 0.1], [0.1, 3.0]])),),
            B_list=(SymMatrix(np.eye(2) * 0.7),),
            band=BAND,
        )
        with pytest.raises(ShapeError, match="diagonal"):
            diagonal_equivalence(IneqId.CHAIN_34RF, inst, ExponentPair(0.75, 1.0))

    def test_chain_reduces_to_scalar_chain(self):
        # d = 1 diagonal family: the three link gaps coincide with the scalar
        # chain evaluated on the entry tuples.
        inst = _diag_instance(2, 1, 55)
        pair = ExponentPair(0.625, 0.875)
        report = evaluate_inequality(IneqId.CHAIN_34RF, inst, pair)
        x = tuple(m.array[0, 0] for m in inst.A_list)
        y = tuple(m.array[0, 0] for m in inst.B_list)
        expected = chain_callebaut_gaps(x, y, pair)
        got = [l.gap.min_eig for l in report.links]
        for g, e in zip(got, expected):
            assert g == pytest.approx(e, abs=1e-10)


class TestWitnessReplay:
    def test_builtin_all_pass(self):
        outcomes = replay_witnesses()
        assert len(outcomes) == len(BUILTIN_WITNESSES) == 7
        for out in outcomes:
            assert out.passed, out.message

    def test_scalar_and_matrix_paths_agree(self):
        for out in replay_witnesses():
            assert out.matrix_gap == pytest.approx(out.scalar_gap, abs=1e-11)

    def test_catalog_roundtrip(self, tmp_path):
        path = tmp_path / "witnesses.jsonl"
        dump_catalog(BUILTIN_WITNESSES, path)
        loaded = load_catalog(path)
        assert loaded == list(BUILTIN_WITNESSES)
        verdicts = [o.passed for o in replay_witnesses(loaded)]
        assert verdicts == [o.passed for o in replay_witnesses()]

    def test_empty_catalog(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        assert replay_witnesses(load_catalog(path)) == []

    def test_mismatch_reported(self):
        rec = BUILTIN_WITNESSES[0]
        broken = WitnessRecord(
            ineq=rec.ineq,
            variant=rec.variant,
            band=rec.band,
            n=rec.n,
            dim=rec.dim,
            a_entries=rec.a_entries,
            b_entries=rec.b_entries,
            params=rec.params,
            expected_gap=rec.expected_gap + 1.0,
            tolerance=rec.tolerance,
        )
        out = replay_witnesses([broken])[0]
        assert not out.passed
        assert "TENSOR_TOOL" in out.message

    def test_unevaluable_record_fails_cleanly(self):
        rec = BUILTIN_WITNESSES[0]
        broken = WitnessRecord(
            ineq=rec.ineq,
            variant=rec.variant,
            band=rec.band,
            n=rec.n,
            dim=2,
            a_entries=((((3.0, 0.5), (0.5, 3.0))),),
            b_entries=(((1.0, 0.0), (0.0, 1.0)),),
            params=rec.params,
            expected_gap=rec.expected_gap,
            tolerance=rec.tolerance,
        )
        out = replay_witnesses([broken])[0]
        assert not out.passed and "TENSOR_TOOL" in out.message

    def test_scalar_min_gap_matches_matrix_on_diagonals(self):
        # scalar_min_gap is the minimum absolute gap over links and entries;
        # on diagonal instances that equals the minimum link min_eig.
        inst = _diag_instance(2, 3, 91)
        pair = ExponentPair(0.75, 1.0)
        for ineq in (IneqId.HAD_MAMAN, IneqId.HAD_MAMAN2, IneqId.REV_HAD_MAINTH):
            report = evaluate_inequality(ineq, inst, pair)
            m = min(l.gap.min_eig for l in report.links)
            s = scalar_min_gap(ineq, inst, pair)
            assert m == pytest.approx(s, abs=1e-10)

import numpy as np
import pytest

from callebaut_lab.errors import DomainError, HypothesisError
from callebaut_lab.matcore import SymMatrix, sym_eigen
from callebaut_lab.sampler import (
    FamilyInstance,
    ScalarTuple,
    SpectralBand,
    derive_rng,
    haar_orthogonal,
    sample_family,
    sample_scalars,
    spd_in_band,
    validate_band_containment,
)


class TestRng:
    def test_same_stream_identical(self):
        r1 = derive_rng(2024, 7)
        r2 = derive_rng(2024, 7)
        assert [r1.uniform() for _ in range(1000)] == [r2.uniform() for _ in range(1000)]

    def test_streams_differ(self):
        r0 = derive_rng(2024, 0)
        r1 = derive_rng(2024, 1)
        assert [r0.next_u64() for _ in range(10)] != [r1.next_u64() for _ in range(10)]

    def test_seed_zero_valid(self):
        r = derive_rng(0, 0)
        u = r.uniform()
        assert 0.0 <= u < 1.0

    def test_uniform_range(self):
        r = derive_rng(5, 5)
        draws = [r.uniform() for _ in range(10000)]
        assert all(0.0 <= u < 1.0 for u in draws)
        assert 0.45 < sum(draws) / len(draws) < 0.55

    def test_normals_reasonable(self):
        r = derive_rng(5, 6)
        draws = [r.normal() for _ in range(10000)]
        mean = sum(draws) / len(draws)
        var = sum((d - mean) ** 2 for d in draws) / len(draws)
        assert abs(mean) < 0.05 and 0.9 < var < 1.1


class TestHaar:
    def test_dim_one_is_sign(self):
        q = haar_orthogonal(1, derive_rng(1, 1))
        assert q.shape == (1, 1) and abs(abs(q[0, 0]) - 1.0) <= 1e-12

    def test_orthogonality(self):
        for stream in range(20):
            q = haar_orthogonal(5, derive_rng(3, stream))
            assert np.abs(q.T @ q - np.eye(5)).max() <= 1e-12

    def test_determinant_pm_one(self):
        for stream in range(10):
            q = haar_orthogonal(4, derive_rng(4, stream))
            assert abs(abs(np.linalg.det(q)) - 1.0) <= 1e-10


class TestSpdInBand:
    def test_degenerate_band_forces_value(self):
        m = spd_in_band(1, 4.0, 4.0, derive_rng(1, 2))
        assert m.array[0, 0] == 4.0

    def test_pinned_extremes(self):
        m = spd_in_band(3, 2.0, 5.0, derive_rng(1, 3), pin_extremes=True)
        w = sym_eigen(m).eigenvalues
        assert abs(w[0] - 2.0) <= 1e-10 and abs(w[-1] - 5.0) <= 1e-10

    def test_containment_many(self):
        for stream in range(1000):
            d = 1 + stream % 4
            m = spd_in_band(d, 0.3, 1.7, derive_rng(11, stream))
            w = sym_eigen(m).eigenvalues
            assert w[0] >= 0.3 * (1 - 1e-12) and w[-1] <= 1.7 * (1 + 1e-12)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            spd_in_band(2, 3.0, 1.0, derive_rng(0, 0))


class TestBand:
    def test_derived_ratios(self):
        band = SpectralBand(0.5, 1.0, 2.0, 8.0)
        assert band.h == 2.0 and band.h_prime == 16.0
        assert band.h > 1.0 and band.h_prime >= band.h

    def test_degenerate_admitted(self):
        band = SpectralBand(1.0, 1.0, 4.0, 4.0)
        assert band.h == 4.0

    def test_unseparated_rejected(self):
        with pytest.raises(HypothesisError):
            SpectralBand(0.5, 2.0, 2.0, 8.0)
        with pytest.raises(HypothesisError):
            SpectralBand(-1.0, 1.0, 2.0, 3.0)


class TestFamilies:
    def test_witness_instance(self):
        inst = sample_family(1, 1, SpectralBand(1.0, 1.0, 4.0, 4.0), derive_rng(1, 0))
        assert inst.A_list[0].array[0, 0] == 4.0
        assert inst.B_list[0].array[0, 0] == 1.0

    def test_containment(self):
        band = SpectralBand(0.1, 0.2, 5.0, 10.0)
        inst = sample_family(2, 3, band, derive_rng(6, 1))
        validate_band_containment(inst)

    def test_identical_seeds_identical_families(self):
        band = SpectralBand(0.5, 1.0, 2.0, 8.0)
        i1 = sample_family(2, 3, band, derive_rng(9, 4))
        i2 = sample_family(2, 3, band, derive_rng(9, 4))
        for a, b in zip(i1.A_list + i1.B_list, i2.A_list + i2.B_list):
            assert np.array_equal(a.array, b.array)

    def test_containment_violation_detected(self):
        band = SpectralBand(1.0, 1.0, 4.0, 4.0)
        inst = FamilyInstance(
            n=1,
            dim=1,
            A_list=(SymMatrix(np.array([[9.0]])),),
            B_list=(SymMatrix(np.array([[1.0]])),),
            band=band,
        )
        with pytest.raises(HypothesisError, match="band"):
            validate_band_containment(inst)

    def test_scalar_tuples(self):
        band = SpectralBand(0.5, 1.0, 2.0, 8.0)
        tup = sample_scalars(4, band, derive_rng(2, 2))
        assert len(tup.x_list) == 4
        with pytest.raises(HypothesisError):
            ScalarTuple(x_list=(1.0,), y_list=(0.6,), band=band)

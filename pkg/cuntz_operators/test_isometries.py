import numpy as np
import numpy.testing as npt
import pytest

from cuntz_operators.isometries import (
    apply_S, apply_S_star, apply_word_star, cuntz_residual, isometry_relation_residual,
    moment_sequence, range_orthogonality_residual)
from cuntz_operators.operator_exceptions import InvalidSequence
from cuntz_operators.sparse_sequence import SparseSequence, random_sparse_sequence
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_families import SQRT2, beta_family, daubechies, haar, haar_variant

VALIDATED = [haar(), daubechies(), beta_family(0.0), beta_family(-1.2), haar_variant(2)]


def as_dict(xi: SparseSequence) -> dict:
    return dict(xi.entries)


class TestSparseSequence:
    def test_zeros_are_dropped(self):
        assert as_dict(SparseSequence({0: 0, 3: 2.0})) == {3: 2.0}

    def test_inner_is_conjugate_linear_on_the_left(self):
        xi = SparseSequence({0: 1j})
        eta = SparseSequence({0: 1.0, 1: 5.0})
        assert xi.inner(eta) == -1j

    def test_non_integer_index(self):
        with pytest.raises(InvalidSequence):
            SparseSequence({0.5: 1.0})

    def test_support(self):
        assert SparseSequence().support() is None
        assert SparseSequence({-2: 1, 4: 1}).support() == (-2, 4)


class TestApplyS:
    def test_haar_basis(self):
        xi = apply_S(haar().lowpass, SparseSequence.basis(0))
        npt.assert_allclose([xi[0], xi[1]], [1 / SQRT2, 1 / SQRT2])
        assert xi.support() == (0, 1)

    def test_daubechies_basis(self):
        a = daubechies().lowpass
        xi = apply_S(a, SparseSequence.basis(0))
        npt.assert_allclose([xi[k] for k in range(4)], a)

    def test_zero(self):
        assert apply_S(daubechies().lowpass, SparseSequence()).entries == {}

    def test_support_bound(self):
        rng = np.random.default_rng(11)
        a = daubechies().lowpass
        xi = random_sparse_sequence(rng, -5, 7, density=1.0)
        low, high = apply_S(a, xi).support()
        assert low >= 2 * -5 and high <= 2 * 7 + 3

    @pytest.mark.parametrize("bank", VALIDATED)
    def test_isometry(self, bank):
        rng = np.random.default_rng(1)
        for _ in range(50):
            xi = random_sparse_sequence(rng)
            for b in bank.branches:
                npt.assert_allclose(apply_S(b, xi).norm(), xi.norm(), rtol=1e-12)
                back = apply_S_star(b, apply_S(b, xi))
                assert (back - xi).norm() < 1e-10


class TestApplySStar:
    def test_genus_two_basis(self):
        a = np.array([0.1 + 0.2j, 0.3, 0.4 - 0.5j, 0.6])
        xi = apply_S_star(a, SparseSequence.basis(0))
        assert as_dict(xi) == pytest.approx({0: np.conj(a[0]), -1: np.conj(a[2])})

    def test_haar_odd_basis(self):
        xi = apply_S_star(haar().lowpass, SparseSequence.basis(1))
        assert as_dict(xi) == pytest.approx({0: 1 / SQRT2})

    def test_adjoint_relation(self):
        rng = np.random.default_rng(2)
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        for _ in range(20):
            eta, xi = random_sparse_sequence(rng), random_sparse_sequence(rng)
            npt.assert_allclose(apply_S_star(coeffs, eta).inner(xi), eta.inner(apply_S(coeffs, xi)), atol=1e-12)

    def test_word_order(self):
        bank = daubechies()
        e0 = SparseSequence.basis(0)
        expected = apply_S_star(bank.branches[1], apply_S_star(bank.branches[0], e0))
        got = apply_word_star(bank, (0, 1), e0)
        assert (got - expected).norm() == 0


class TestCuntzRelations:
    @pytest.mark.parametrize("bank", VALIDATED)
    def test_completeness_and_isometry(self, bank):
        rng = np.random.default_rng(5)
        report = cuntz_residual(bank, [random_sparse_sequence(rng) for _ in range(50)])
        assert report.completeness_residual < 1e-10
        assert report.isometry_residual < 1e-10
        assert report.passed

    def test_non_qmf_fails(self):
        rng = np.random.default_rng(6)
        report = cuntz_residual(FilterBank.from_lowpass([1, 1, 0, 0]), [random_sparse_sequence(rng)])
        assert not report.passed

    def test_range_orthogonality(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            eta, xi = random_sparse_sequence(rng), random_sparse_sequence(rng)
            assert range_orthogonality_residual(daubechies(), eta, xi) < 1e-10

    @pytest.mark.parametrize("bank", VALIDATED)
    def test_isometry_relation_on_circle(self, bank):
        assert isometry_relation_residual(bank, 1024) < 1e-10


class TestMoments:
    @pytest.mark.parametrize("bank", [daubechies(), beta_family(0.0), beta_family(2.5)])
    def test_corner_moments(self, bank):
        a3 = bank.lowpass[3]
        moments = moment_sequence(bank, -3, 10)
        npt.assert_allclose(moments, [np.conj(a3) ** k for k in range(1, 11)], atol=1e-12)

    def test_haar_corner_moments_vanish(self):
        assert np.all(np.abs(moment_sequence(haar_variant(1), -3, 10)) < 1e-15)

import numpy as np
import numpy.testing as npt
import pytest

from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import InvalidFilterInput, UnsupportedBranching
from filter_bank.filter_families import SQRT2, beta_family, daubechies, haar, haar_variant
from filter_bank.qmf_validation import (
    block_coefficient_matrices, eval_symbol, max_unitarity_residual, modulation_matrix,
    parity_sums, power_complementarity_residual, two_circle_residuals, unitarity_residual,
    validate_qmf)


class TestValidateQmf:
    def test_haar_passes_exactly(self):
        report = validate_qmf(haar_variant(1))
        assert report.passed
        assert report.verdict == "pass"
        assert max(report.orthogonality_residuals.values()) < 1e-15
        assert report.sum_residual < 1e-15

    def test_daubechies_passes(self):
        assert validate_qmf(daubechies()).passed

    def test_sum_rule_violation(self):
        report = validate_qmf(FilterBank.from_lowpass([1, 0, 0, 0]))
        assert not report.passed
        assert max(report.orthogonality_residuals.values()) == 0
        npt.assert_allclose(report.sum_residual, SQRT2 - 1, atol=1e-15)

    def test_lags_cover_every_overlap(self):
        report = validate_qmf(daubechies())
        assert sorted(report.orthogonality_residuals) == [-1, 0, 1]

    def test_negative_tolerance(self):
        with pytest.raises(InvalidFilterInput):
            validate_qmf(daubechies(), tolerance=-1)

    @pytest.mark.parametrize("beta", np.linspace(-np.pi, np.pi, 11))
    def test_beta_family_passes(self, beta):
        assert validate_qmf(beta_family(beta)).passed


class TestSymbol:
    @pytest.mark.parametrize("bank", [haar(), daubechies(), beta_family(0.4), haar_variant(3)])
    def test_values_at_one_and_minus_one(self, bank):
        npt.assert_allclose(eval_symbol(bank.lowpass, 1), SQRT2, atol=1e-14)
        npt.assert_allclose(eval_symbol(bank.lowpass, -1), 0, atol=1e-14)

    def test_haar_at_i(self):
        npt.assert_allclose(eval_symbol(haar().lowpass, 1j), (1 + 1j) / SQRT2, atol=1e-15)

    def test_off_circle(self):
        with pytest.raises(InvalidFilterInput):
            eval_symbol(haar().lowpass, 1.5)


class TestModulationMatrix:
    def test_haar_at_one_is_identity(self):
        npt.assert_allclose(modulation_matrix(haar_variant(1), 1), np.eye(2), atol=1e-15)

    def test_daubechies_unitary_on_circle(self):
        assert max_unitarity_residual(daubechies(), 256) < 1e-12

    def test_non_qmf_not_unitary(self):
        matrix = modulation_matrix(FilterBank.from_lowpass([1, 1, 0, 0]), 1)
        assert unitarity_residual(matrix) > 0.5

    def test_unit_column_norms(self):
        bank = beta_family(1.1)
        for z in np.exp(2j * np.pi * np.linspace(0, 1, 17)):
            npt.assert_allclose(np.linalg.norm(modulation_matrix(bank, z), axis=0), 1, atol=1e-13)


class TestFamilyIdentities:
    def test_two_circle_identity(self):
        rng = np.random.default_rng(3)
        for beta in rng.uniform(-np.pi, np.pi, 100):
            assert max(two_circle_residuals(beta_family(beta))) < 1e-12

    def test_parity_sums(self):
        rng = np.random.default_rng(4)
        for beta in rng.uniform(-np.pi, np.pi, 50):
            even, odd = parity_sums(beta_family(beta))
            npt.assert_allclose([even, odd], [1 / SQRT2, 1 / SQRT2], atol=1e-12)

    def test_power_complementarity(self):
        assert power_complementarity_residual(daubechies()) < 1e-12
        assert power_complementarity_residual(beta_family(2.0)) < 1e-12

    def test_two_circle_needs_four_taps(self):
        with pytest.raises(InvalidFilterInput):
            two_circle_residuals(haar())


class TestBlockMatrices:
    def test_genus_two_layout(self):
        a = daubechies().lowpass
        blocks = block_coefficient_matrices(daubechies())
        npt.assert_allclose(blocks.matrices[0], [[a[0], a[1]], [a[3], -a[2]]], atol=1e-15)
        npt.assert_allclose(blocks.matrices[1], [[a[2], a[3]], [a[1], -a[0]]], atol=1e-15)

    def test_daubechies_identities(self):
        blocks = block_coefficient_matrices(daubechies())
        a0, a1 = blocks.matrices
        npt.assert_allclose(a0 @ a0.T + a1 @ a1.T, np.eye(2), atol=1e-12)
        npt.assert_allclose(a1 @ a0.T, np.zeros((2, 2)), atol=1e-12)
        assert blocks.max_residual < 1e-12

    def test_haar(self):
        blocks = block_coefficient_matrices(haar_variant(1))
        r = 1 / SQRT2
        npt.assert_allclose(blocks.matrices[0], [[r, r], [0, 0]], atol=1e-15)
        npt.assert_allclose(blocks.matrices[1], [[0, 0], [r, -r]], atol=1e-15)

    def test_complex_padded_genus_three(self):
        # a global phase keeps the shifted orthogonality
        a = daubechies().lowpass * np.exp(0.3j)
        bank = FilterBank.from_lowpass(np.concatenate([a, [0, 0]]))
        assert block_coefficient_matrices(bank).max_residual < 1e-12

    def test_three_branches_unsupported(self):
        bank = FilterBank(3, ((1, 0, 1), (0, 1), (1, 0, -1)))
        with pytest.raises(UnsupportedBranching):
            block_coefficient_matrices(bank)



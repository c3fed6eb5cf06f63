import numpy as np
import numpy.testing as npt
import pytest

from cuntz_operators.restricted_operator import restrict_to_M
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_families import SQRT2, SQRT3, beta_family, daubechies, haar_variant
from spectral_analysis.spectrum import (
    closed_form_spectrum, is_strictly_dominant, left_ones_check, spectrum_F0)


def beta_closed_form(beta):
    a0 = (1 + SQRT2 * np.cos(beta)) / (2 * SQRT2)
    return np.array([a0, 1 / SQRT2, (np.sin(beta) - np.cos(beta)) / 2])


def assert_same_multiset(got, expected, atol):
    npt.assert_allclose(np.sort_complex(np.asarray(got, dtype=complex)),
                        np.sort_complex(np.asarray(expected, dtype=complex)), atol=atol)


class TestSpectrumF0:
    def test_daubechies(self):
        a0 = (1 + SQRT3) / (4 * SQRT2)
        data = spectrum_F0(daubechies())
        assert_same_multiset(data.eigenvalues, [a0, 1 / SQRT2, 1 / (2 * SQRT2)], 1e-10)
        npt.assert_allclose(data.dominant, 1 / SQRT2, atol=1e-12)
        assert data.strictly_dominant
        assert data.fractal_scale is None

    def test_beta_zero(self):
        data = spectrum_F0(beta_family(0.0))
        assert_same_multiset(data.eigenvalues, [0.8535533905932737, 0.7071067811865476, -0.5], 1e-10)
        npt.assert_allclose(data.fractal_scale, -np.log2((3 + 2 * SQRT2) / 8), rtol=1e-12)

    def test_haar_is_not_dominant(self):
        data = spectrum_F0(beta_family(np.pi / 4))
        assert_same_multiset(data.eigenvalues, [1 / SQRT2, 1 / SQRT2, 0], 1e-10)
        assert not data.strictly_dominant
        assert data.fractal_scale is None

    def test_closed_form_on_random_betas(self):
        rng = np.random.default_rng(21)
        for beta in rng.uniform(-np.pi, np.pi, 100):
            bank = beta_family(beta)
            numeric = np.linalg.eigvals(restrict_to_M(bank, 0).matrix)
            assert_same_multiset(numeric, beta_closed_form(beta), 1e-10)
            assert_same_multiset(closed_form_spectrum(bank), beta_closed_form(beta), 1e-10)

    @pytest.mark.parametrize("beta", np.concatenate([
        np.linspace(-np.pi, np.pi, 100),
        [np.pi / 4 - 1e-3, np.pi / 4 + 1e-3, -np.pi / 4 + 1e-3, -np.pi / 4 - 1e-3]]))
    def test_lowpass_dominance_iff_inside_quarter_turn(self, beta):
        data = spectrum_F0(beta_family(beta))
        inside = abs(beta) < np.pi / 4
        assert (data.fractal_scale is not None) == inside
        if inside:
            a0 = beta_closed_form(beta)[0]
            assert a0 > 1 / SQRT2
            assert np.all(np.abs(data.eigenvalues[1:]) <= 1 / SQRT2 + 1e-12)

    def test_general_genus_uses_eigensolver(self):
        # zero padding to genus 3 adds the eigenvalues a_3 and 0
        padded = FilterBank.from_lowpass(np.concatenate([beta_family(0.2).lowpass, [0, 0]]))
        data = spectrum_F0(padded)
        assert data.eigenvalues.size == 5
        npt.assert_allclose(data.dominant, beta_closed_form(0.2)[0], atol=1e-10)

    def test_daubechies_eigenvector(self):
        F = restrict_to_M(daubechies(), 0).matrix
        values, vectors = np.linalg.eig(F)
        v = vectors[:, np.argmin(np.abs(values - 1 / SQRT2))]
        expected = np.array([0, 1 + SQRT3, 1 - SQRT3]) / np.linalg.norm([0, 1 + SQRT3, 1 - SQRT3])
        v = v / np.linalg.norm(v)
        sine = np.linalg.norm(v - np.vdot(expected, v) * expected)
        assert np.arcsin(min(sine, 1.0)) < 1e-8
        assert abs(v[0]) < 1e-12


class TestDominance:
    def test_ties_are_not_dominant(self):
        assert not is_strictly_dominant(np.array([1.0, -1.0, 0.2]))

    def test_margin(self):
        assert is_strictly_dominant(np.array([1.0, 0.999]))
        assert not is_strictly_dominant(np.array([1.0, 1.0 - 1e-12]))


class TestLeftOnes:
    def test_daubechies(self):
        assert left_ones_check(daubechies()) < 1e-12

    def test_beta(self):
        assert left_ones_check(beta_family(0.3)) < 1e-12

    def test_haar_variants(self):
        for variant in range(1, 5):
            assert left_ones_check(haar_variant(variant)) < 1e-12

    def test_non_qmf(self):
        assert left_ones_check(FilterBank.from_lowpass([0.6, 0.8, 0.1, -0.3])) > 0.01

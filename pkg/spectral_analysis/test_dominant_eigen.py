import numpy as np
import numpy.testing as npt
import pytest

from cuntz_operators.restricted_operator import restrict_to_M
from filter_bank.filter_families import SQRT2, SQRT3, beta_family, daubechies, haar
from spectral_analysis.dominant_eigen import (
    daubechies_normalization_check, decay_fit, dominant_eigendata, power_limit)
from spectral_analysis.spectral_exceptions import EigenpairMismatch, SingularResolvent


def planted_matrix(rng, d, a=1.0, rho=0.7, rest=0.35):
    """
    Matrix with a simple dominant eigenvalue a, a second eigenvalue rho*a and the rest below rest*a
    """
    values = np.concatenate([[a, rho * a], rest * a * rng.uniform(-1, 1, d - 2)])
    P = rng.normal(size=(d, d)) + d * np.eye(d)
    P_inv = np.linalg.inv(P)
    F = P @ np.diag(values) @ P_inv
    w = P_inv[0].conj()
    return F, w / np.linalg.norm(w)


def oracle_right_vector(F, a, w):
    values, vectors = np.linalg.eig(F)
    v = vectors[:, np.argmin(np.abs(values - a))]
    return v / np.vdot(w, v)


class TestDominantEigendata:
    def test_diagonal(self):
        data = dominant_eigendata(np.diag([2.0, 1.0]), 2.0, np.array([1.0, 0.0]))
        npt.assert_allclose(data.right_vector, [1, 0])
        npt.assert_allclose(data.coupling, [0], atol=1e-15)
        assert data.strictly_dominant

    def test_beta_zero(self):
        bank = beta_family(0.0)
        a0 = bank.lowpass[0]
        data = dominant_eigendata(restrict_to_M(bank, 0), a0, np.array([1.0, 0, 0]))
        npt.assert_allclose(data.right_vector, [1, -0.738796, -0.261204], atol=1e-6)
        npt.assert_allclose(np.vdot(data.left_vector, data.right_vector), 1, atol=1e-14)

    def test_beta_zero_matches_two_by_two_solve(self):
        a = beta_family(0.0).lowpass
        v = np.linalg.solve(np.array([[a[0] - a[1], -a[0]], [-a[3], a[0] - a[2]]]), np.array([a[2], 0]))
        data = dominant_eigendata(restrict_to_M(beta_family(0.0), 0), a[0], np.array([1.0, 0, 0]))
        npt.assert_allclose(data.right_vector[1:], v, atol=1e-13)

    def test_planted_random_matrices(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            F, w = planted_matrix(rng, 4)
            data = dominant_eigendata(F, 1.0, w)
            npt.assert_allclose(data.right_vector, oracle_right_vector(F, 1.0, w), atol=1e-9)
            npt.assert_allclose(F @ data.right_vector, data.right_vector, atol=1e-9)

    def test_not_a_left_eigenvector(self):
        with pytest.raises(EigenpairMismatch):
            dominant_eigendata(np.diag([2.0, 1.0]), 2.0, np.array([0.6, 0.8]))

    def test_non_unit_vector(self):
        with pytest.raises(EigenpairMismatch):
            dominant_eigendata(np.diag([2.0, 1.0]), 2.0, np.array([2.0, 0.0]))

    def test_repeated_eigenvalue(self):
        with pytest.raises(SingularResolvent):
            dominant_eigendata(np.diag([2.0, 2.0, 1.0]), 2.0, np.array([1.0, 0, 0]))


class TestPowerLimit:
    def test_diagonal(self):
        w = np.array([1.0, 0.0])
        y, error = power_limit(np.diag([2.0, 1.0]), 2.0, w, w, np.array([1.0, 1.0]), 20)
        npt.assert_allclose(y, [1, 2.0 ** -20])
        npt.assert_allclose(error, 2.0 ** -20)

    def test_beta_zero(self):
        bank = beta_family(0.0)
        F = restrict_to_M(bank, 0)
        a0 = bank.lowpass[0]
        e0 = np.array([1.0, 0, 0])
        data = dominant_eigendata(F, a0, e0)
        # the error decays like (1/sqrt2 / a_0)^n = 0.8284^n
        _, error_40 = power_limit(F, a0, e0, data.right_vector, e0, 40)
        y, error_100 = power_limit(F, a0, e0, data.right_vector, e0, 100)
        assert error_40 < 1e-3
        assert error_100 < 1e-7
        ratio = (1 / SQRT2) / a0
        npt.assert_allclose(error_100 / error_40, ratio ** 60, rtol=0.1)
        npt.assert_allclose(y, data.right_vector, atol=1e-7)

    def test_daubechies_limit(self):
        F = restrict_to_M(daubechies(), 0)
        a = 1 / SQRT2
        w = np.ones(3) / np.sqrt(3)
        data = dominant_eigendata(F, a, w)
        s = np.array([0.3, -1.2, 0.5])
        y, error = power_limit(F, a, w, data.right_vector, s, 80)
        v_star = np.array([0, 1 + SQRT3, 1 - SQRT3])
        expected = np.vdot(SQRT2 * np.ones(3), s) * v_star / np.sqrt(8)
        npt.assert_allclose(y, expected, atol=1e-9)
        assert error < 1e-9

    def test_large_n_does_not_overflow(self):
        F = np.diag([1e3, 1.0])
        w = np.array([1.0, 0.0])
        y, error = power_limit(F, 1e3, w, w, np.array([1.0, 1.0]), 500)
        assert np.all(np.isfinite(y))
        assert error < 1e-300


class TestDecayFit:
    def test_planted_random_matrices(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            d = int(rng.integers(2, 7))
            F, w = planted_matrix(rng, d)
            data = dominant_eigendata(F, 1.0, w)
            x = rng.normal(size=d)
            fit = decay_fit(F, 1.0, w, data.right_vector, x, n_max=60)
            _, error = power_limit(F, 1.0, w, data.right_vector, x, 50)
            npt.assert_allclose(fit.rho, 0.7, rtol=1e-9)
            assert error <= fit.bound(50) * (1 + 1e-12)
            assert abs(fit.slope - fit.log_rho) < 0.05 * abs(fit.log_rho)

    def test_diagonal_slope_is_exact(self):
        w = np.array([1.0, 0.0])
        fit = decay_fit(np.diag([2.0, 1.0]), 2.0, w, w, np.array([1.0, 1.0]), n_max=30)
        npt.assert_allclose(fit.rho, 0.5)
        npt.assert_allclose(fit.slope, np.log(0.5), rtol=1e-10)
        npt.assert_allclose(fit.constant, 1.0, rtol=1e-12)


class TestDaubechiesNormalization:
    def test_printed_left_vector(self):
        check = daubechies_normalization_check(daubechies())
        assert check.left_residual < 1e-12
        assert check.eigenvector_residual < 1e-12
        npt.assert_allclose(check.pairing, check.expected_pairing, atol=1e-12)

    def test_needs_genus_two(self):
        with pytest.raises(EigenpairMismatch):
            daubechies_normalization_check(haar())

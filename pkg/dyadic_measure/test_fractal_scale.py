import numpy as np
import numpy.testing as npt
import pytest

from cuntz_operators.restricted_operator import restrict_to_M
from dyadic_measure.fractal_scale import daubechies_ratio_scan, fractal_ratio_scan, fractal_scale
from dyadic_measure.measure import mu0_interval
from dyadic_measure.measure_exceptions import InvalidScanLength
from filter_bank.filter_families import beta_family, daubechies, haar_variant
from spectral_analysis.spectral_exceptions import DominanceAbsent


class TestFractalScale:
    def test_beta_zero(self):
        npt.assert_allclose(fractal_scale(beta_family(0.0)), -np.log2((3 + 2 * np.sqrt(2.0)) / 8), rtol=1e-12)
        npt.assert_allclose(fractal_scale(beta_family(0.0)), 0.4568934, atol=1e-7)

    def test_no_dominance(self):
        assert fractal_scale(daubechies()) is None
        assert fractal_scale(haar_variant(1)) is None


class TestFractalRatioScan:
    def test_beta_zero_digit_zero(self):
        bank = beta_family(0.0)
        scan = fractal_ratio_scan(bank, "0", n_max=200)
        a0 = abs(bank.lowpass[0])
        expected = a0 ** 2 * (1 + scan.extras["v_norm_squared"])
        npt.assert_allclose(scan.predicted_limit, expected, rtol=1e-12)
        npt.assert_allclose(scan.estimate, expected, rtol=1e-4)
        assert scan.residual < 1e-6

    def test_beta_zero_limit_by_linear_solve(self):
        bank = beta_family(0.0)
        a0 = bank.lowpass[0]
        F = restrict_to_M(bank, 0).matrix
        v = np.linalg.solve(np.conj(a0) * np.eye(F.shape[0] - 1) - F[1:, 1:], F[1:, 0])
        expected = abs(a0) ** 2 * (1 + np.sum(np.abs(v) ** 2))
        scan = fractal_ratio_scan(bank, "0", n_max=200)
        npt.assert_allclose(scan.predicted_limit, expected, rtol=1e-10)
        npt.assert_allclose(scan.predicted_limit, 1.1759195, atol=1e-6)
        # at n = 60 the estimate is still off by a relative 8e-6
        short = fractal_ratio_scan(bank, "0", n_max=60, stop_delta=0.0)
        npt.assert_allclose(short.estimate, expected, rtol=2e-5)

    def test_empty_base_word(self):
        scan = fractal_ratio_scan(beta_family(0.0), "", n_max=200)
        npt.assert_allclose(scan.estimate, 1 + scan.extras["v_norm_squared"], rtol=1e-4)

    def test_ratios_are_scaled_masses(self):
        bank = beta_family(0.2)
        scan = fractal_ratio_scan(bank, "01", n_max=5)
        a0_squared = abs(bank.lowpass[0]) ** 2
        for n, ratio in enumerate(scan.ratios, start=1):
            word = "01" + "0" * n
            npt.assert_allclose(ratio, mu0_interval(bank, word) / a0_squared ** n, rtol=1e-10)

    def test_no_convergence_reports_last(self):
        scan = fractal_ratio_scan(beta_family(0.0), "0", n_max=2, stop_delta=0.0)
        assert scan.stop_n == 2
        assert scan.estimate == scan.ratios[-1]

    @pytest.mark.parametrize("bank", [daubechies(), haar_variant(1)])
    def test_dominance_required(self, bank):
        with pytest.raises(DominanceAbsent):
            fractal_ratio_scan(bank, "0")

    def test_scan_length(self):
        with pytest.raises(InvalidScanLength):
            fractal_ratio_scan(beta_family(0.0), "0", n_max=0)


class TestDaubechiesRatioScan:
    @pytest.mark.parametrize("word, limit", [("", 2.0), ("0", 1.0), ("1", 1.0)])
    def test_limits(self, word, limit):
        scan = daubechies_ratio_scan(daubechies(), word, n_max=200)
        npt.assert_allclose(scan.predicted_limit, limit, rtol=1e-9)
        npt.assert_allclose(scan.estimate, limit, rtol=1e-4)

    def test_to_dict(self):
        data = daubechies_ratio_scan(daubechies(), "0", n_max=3, stop_delta=0.0).to_dict()
        assert [r["n"] for r in data["ratios"]] == [1, 2, 3]
        assert data["base_word"] == "0"

    def test_needs_daubechies_dominance(self):
        with pytest.raises(DominanceAbsent):
            daubechies_ratio_scan(beta_family(0.0), "0")

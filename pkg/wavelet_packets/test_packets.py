from itertools import product

import numpy as np
import numpy.testing as npt
import pytest

from cuntz_operators.sparse_sequence import SparseSequence
from dyadic_measure.measure import measure_grid, mu_f_interval
from filter_bank.filter_families import SQRT2, beta_family, daubechies, haar, haar_variant
from wavelet_packets.cascade import cascade, two_scale_step
from wavelet_packets.packet_coefficients import (
    expansion_coefficients, marginal_distribution, packet_index)
from wavelet_packets.packet_exceptions import (
    InvalidPacketIndex, InvalidPacketWord, InvalidResolution, IterationsExceeded, PacketDepthExceeded)


class TestPacketIndex:
    def test_examples(self):
        assert packet_index(0, 5, ()) == 5
        assert packet_index(2, 0, (1, 1)) == 3
        assert sorted(packet_index(3, 2, w) for w in product((0, 1), repeat=3)) == list(range(16, 24))

    def test_bijection(self):
        for p in range(11):
            for n in (0, 1, 3):
                indices = {packet_index(p, n, w) for w in product((0, 1), repeat=p)}
                assert indices == set(range(2 ** p * n, 2 ** p * (n + 1)))

    def test_first_digit_is_least_significant(self):
        assert packet_index(2, 0, (1, 0)) == 1
        assert packet_index(2, 0, (0, 1)) == 2

    def test_bad_words(self):
        with pytest.raises(InvalidPacketWord):
            packet_index(2, 0, (1,))
        with pytest.raises(InvalidPacketWord):
            packet_index(1, 0, (2,))


class TestExpansionCoefficients:
    def test_haar_first_level(self):
        coefficients = expansion_coefficients(haar_variant(1), 1, 0)
        npt.assert_allclose(coefficients.coefficient((0,), 0), 1 / SQRT2)
        npt.assert_allclose(coefficients.coefficient((1,), -1), 1 / SQRT2)
        assert set(coefficients.sequences[(0,)].entries) == {0}
        assert set(coefficients.sequences[(1,)].entries) == {-1}

    @pytest.mark.parametrize("bank", [daubechies(), beta_family(0.0), beta_family(2.2), haar()])
    def test_total_mass(self, bank):
        npt.assert_allclose(expansion_coefficients(bank, 3, 0).total_mass(), 1.0, atol=1e-12)

    @pytest.mark.parametrize("k", [0, 2, -3])
    def test_word_masses_are_measures(self, k):
        bank = beta_family(0.4)
        coefficients = expansion_coefficients(bank, 4, k)
        e_k = SparseSequence.basis(k)
        for word in product((0, 1), repeat=4):
            npt.assert_allclose(coefficients.word_mass(word), mu_f_interval(bank, e_k, word), atol=1e-12)

    def test_depth_cap(self):
        with pytest.raises(PacketDepthExceeded):
            expansion_coefficients(daubechies(), 13, 0)

    def test_to_dict(self):
        data = expansion_coefficients(haar_variant(1), 1, 0).to_dict()
        assert data["entries"][0]["word"] == "0"
        assert len(data["entries"]) == 2


class TestMarginal:
    def test_matches_measure_grid(self):
        bank = daubechies()
        marginal = marginal_distribution(bank, 5, 1, 0)
        table = measure_grid(bank, 5)
        for m, mass in marginal.packets():
            word = [(m - 32) >> j & 1 for j in range(5)]
            npt.assert_allclose(mass, table.mass_of(word), atol=1e-12)
        npt.assert_allclose(sum(marginal.masses), 1.0, atol=1e-12)

    def test_packet_range(self):
        marginal = marginal_distribution(haar(), 2, 3, 0)
        assert [m for m, _ in marginal.packets()] == [12, 13, 14, 15]
        npt.assert_allclose(marginal.masses, [0.25] * 4)


class TestCascade:
    def test_haar_father(self):
        samples = cascade(haar(), 0, 1, 64)
        npt.assert_allclose(samples.values, np.ones(64), atol=1e-12)

    def test_haar_mother(self):
        samples = cascade(haar(), 1, 1, 64)
        npt.assert_allclose(samples.values[:32], 1.0, atol=1e-12)
        npt.assert_allclose(samples.values[32:], -1.0, atol=1e-12)

    def test_haar_orthonormal(self):
        packets = [cascade(haar(), n, 1, 64) for n in range(4)]
        for samples in packets:
            npt.assert_allclose(np.abs(samples.values), 1.0, atol=1e-12)
        gram = np.array([[a.inner(b) for b in packets] for a in packets])
        npt.assert_allclose(gram, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("bank", [daubechies(), beta_family(0.0), beta_family(-1.3)])
    def test_father_integral(self, bank):
        samples = cascade(bank, 0, 12, 1024)
        npt.assert_allclose(samples.integral(), 1.0, atol=1e-8)
        assert samples.support == 3

    def test_two_scale_step_box(self):
        box = np.concatenate([np.ones(4), np.zeros(4)])
        npt.assert_allclose(two_scale_step(np.array([1.0, 1.0]) / SQRT2, box, 4).real, box)

    def test_rows(self):
        rows = list(cascade(haar(), 1, 0, 2).rows())
        assert rows == [(0.0, pytest.approx(1.0)), (0.5, pytest.approx(-1.0))]

    def test_errors(self):
        with pytest.raises(InvalidResolution):
            cascade(haar(), 0, 1, 100)
        with pytest.raises(IterationsExceeded):
            cascade(haar(), 0, 21, 64)
        with pytest.raises(InvalidPacketIndex):
            cascade(haar(), -1, 1, 64)

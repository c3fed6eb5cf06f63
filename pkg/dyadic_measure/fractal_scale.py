from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from analysis_events.event_register import register_event
from cuntz_operators.restricted_operator import restrict_to_M
from dyadic_measure.measure import Word, orbit_vector
from dyadic_measure.measure_exceptions import InvalidScanLength
from dyadic_measure.n_adic_interval import as_interval
from filter_bank.filter_bank import FilterBank
from spectral_analysis.dominant_eigen import dominant_eigendata
from spectral_analysis.spectral_exceptions import DominanceAbsent
from spectral_analysis.spectrum import DEFAULT_DOMINANCE_MARGIN, spectrum_F0

DEFAULT_STOP_DELTA = 1e-6


@dataclass(frozen=True)
class RatioScan:
    """
    Scaled masses of the intervals obtained by appending n zeros to a base word

    ratios[n-1] is the ratio at n; estimate is the first ratio whose change from
    its predecessor is below stop_delta (the last ratio if none is), residual that change.
    """
    base_word: str
    scale_factor: float
    ratios: List[float]
    estimate: float
    stop_n: int
    residual: float
    predicted_limit: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base_word": self.base_word,
            "scale_factor": self.scale_factor,
            "ratios": [{"n": n, "ratio": r} for n, r in enumerate(self.ratios, start=1)],
            "estimate": self.estimate,
            "stop_n": self.stop_n,
            "residual": self.residual,
            "predicted_limit": self.predicted_limit,
        }


def fractal_scale(bank: FilterBank, dominance_margin:float=DEFAULT_DOMINANCE_MARGIN) -> Optional[float]:
    """
    s = -ln|a_0|^2 / ln 2 when a_0 strictly dominates the spectrum of F_0, otherwise None
    """
    return spectrum_F0(bank, dominance_margin).fractal_scale


def _scan(F: np.ndarray, start: np.ndarray, factor:complex, n_max:int, stop_delta:float):
    if n_max < 1:
        raise InvalidScanLength(n_max)
    ratios = []
    stop_n, residual = None, None
    u = start
    previous = float(np.sum(np.abs(u) ** 2))
    for n in range(1, n_max + 1):
        u = (F @ u) * factor
        ratio = float(np.sum(np.abs(u) ** 2))
        ratios.append(ratio)
        change = abs(ratio - previous)
        if stop_n is None and change < stop_delta:
            stop_n, residual = n, change
        previous = ratio
    if stop_n is None:
        stop_n, residual = n_max, change
    return ratios, stop_n, residual


def fractal_ratio_scan(
        bank: FilterBank,
        base_word: Word,
        n_max:int=60,
        stop_delta:float=DEFAULT_STOP_DELTA,
        dominance_margin:float=DEFAULT_DOMINANCE_MARGIN) -> RatioScan:
    """
    mu_0 of (base word followed by n zeros) divided by |a_0|^{2n}, for n = 1..n_max

    The ratios converge to |<e_0|F_word e_0>|^2 (1 + ||v||^2), with e_0 + v the
    a_0-eigenvector of F_0 normalized against e_0.

    :param bank: two-branch filter bank whose a_0 strictly dominates spec(F_0)
    :type bank: FilterBank

    :param base_word: digits of the base interval, most significant first
    :type base_word: str or sequence of int

    :param n_max: number of appended zeros scanned
    :type n_max: int

    :param stop_delta: successive-ratio change that marks convergence
    :type stop_delta: float

    :raises DominanceAbsent: a_0 does not strictly dominate spec(F_0)

    :rtype: RatioScan
    """
    spectrum = spectrum_F0(bank, dominance_margin)
    if spectrum.fractal_scale is None:
        raise DominanceAbsent(
            "fractal_ratio_scan",
            "a_0 does not strictly dominate spec(F_0); use daubechies_ratio_scan when 1/sqrt2 dominates")

    register_event("dyadic_measure", "fractal_ratio_scan", "Started")
    interval = as_interval(base_word, 2)
    F = restrict_to_M(bank, 0)
    a0 = np.conj(bank.lowpass[0])
    e0 = np.zeros(F.dimension)
    e0[0] = 1.0
    eigen = dominant_eigendata(F, a0, e0)
    start = orbit_vector(bank, interval)

    ratios, stop_n, residual = _scan(F.matrix, start, 1.0 / a0, n_max, stop_delta)
    predicted = abs(np.vdot(e0, start)) ** 2 * float(np.sum(np.abs(eigen.right_vector) ** 2))
    register_event("dyadic_measure", "fractal_ratio_scan", "Finished")
    return RatioScan(
        base_word=interval.to_string(),
        scale_factor=float(abs(a0) ** 2),
        ratios=ratios,
        estimate=ratios[stop_n - 1],
        stop_n=stop_n,
        residual=residual,
        predicted_limit=predicted,
        extras={"fractal_scale": spectrum.fractal_scale,
                "v_norm_squared": float(np.sum(np.abs(eigen.right_vector[1:]) ** 2))},
    )


def daubechies_ratio_scan(
        bank: FilterBank,
        base_word: Word,
        n_max:int=60,
        stop_delta:float=DEFAULT_STOP_DELTA,
        dominance_margin:float=DEFAULT_DOMINANCE_MARGIN) -> RatioScan:
    """
    mu_0 of (base word followed by n zeros) divided by 2^{-n}, for n = 1..n_max

    The ratios converge to |<w|F_word e_0>|^2 with w = sqrt2 (e_0 + e_{-1} + e_{-2}).

    :raises DominanceAbsent: 1/sqrt2 is not the strictly dominant eigenvalue of F_0

    :rtype: RatioScan
    """
    spectrum = spectrum_F0(bank, dominance_margin)
    half = 1.0 / np.sqrt(2.0)
    if not spectrum.strictly_dominant or abs(spectrum.dominant - half) > 1e-9:
        raise DominanceAbsent("daubechies_ratio_scan", "1/sqrt2 is not the strictly dominant eigenvalue of F_0")

    register_event("dyadic_measure", "daubechies_ratio_scan", "Started")
    interval = as_interval(base_word, 2)
    F = restrict_to_M(bank, 0)
    start = orbit_vector(bank, interval)
    w = np.ones(F.dimension) / np.sqrt(F.dimension)
    eigen = dominant_eigendata(F, half, w)

    ratios, stop_n, residual = _scan(F.matrix, start, np.sqrt(2.0), n_max, stop_delta)
    # equals |<sqrt2 (1, ..., 1)|F_word e_0>|^2 in genus 2
    predicted = abs(np.vdot(w, start)) ** 2 * float(np.sum(np.abs(eigen.right_vector) ** 2))
    register_event("dyadic_measure", "daubechies_ratio_scan", "Finished")
    return RatioScan(
        base_word=interval.to_string(),
        scale_factor=0.5,
        ratios=ratios,
        estimate=ratios[stop_n - 1],
        stop_n=stop_n,
        residual=residual,
        predicted_limit=predicted,
    )

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from cuntz_operators.restricted_operator import restrict_to_M
from filter_bank.filter_bank import FilterBank
from spectral_analysis.spectral_exceptions import EigenpairMismatch

DEFAULT_DOMINANCE_MARGIN = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralData:
    """
    Eigenvalues of a restricted operator with its dominant eigendata

    :param eigenvalues: spectrum ordered by decreasing modulus
    :param dominant: eigenvalue of largest modulus (None for an empty spectrum)
    :param strictly_dominant: the dominant modulus exceeds every other by the relative margin
    :param left_vector: unit w with F^* w = conj(a) w
    :param right_vector: xi with F xi = a xi and <w|xi> = 1
    :param fractal_scale: s = -ln|a_0|^2 / ln 2 when a_0 strictly dominates
    :param complement_block: G, the compression of F to the complement of w
    :param coupling: eta, the complement component of F w
    """
    eigenvalues: np.ndarray
    dominant: Optional[complex]
    strictly_dominant: bool
    left_vector: Optional[np.ndarray] = None
    right_vector: Optional[np.ndarray] = None
    fractal_scale: Optional[float] = None
    complement_block: Optional[np.ndarray] = None
    coupling: Optional[np.ndarray] = None

    def to_dict(self) -> Dict[str, Any]:
        def pairs(values):
            return None if values is None else [[complex(v).real, complex(v).imag] for v in values]
        return {
            "eigenvalues": pairs(self.eigenvalues),
            "dominant": pairs([self.dominant])[0] if self.dominant is not None else None,
            "strictly_dominant": self.strictly_dominant,
            "left_vector": pairs(self.left_vector),
            "right_vector": pairs(self.right_vector),
            "fractal_scale": self.fractal_scale,
        }


def order_by_modulus(eigenvalues: np.ndarray) -> np.ndarray:
    values = np.asarray(eigenvalues, dtype=complex)
    return values[np.argsort(-np.abs(values), kind="stable")]


def is_strictly_dominant(eigenvalues: np.ndarray, margin:float=DEFAULT_DOMINANCE_MARGIN) -> bool:
    """
    True when the largest modulus beats the runner-up by a relative margin
    """
    ordered = np.abs(order_by_modulus(eigenvalues))
    if ordered.size == 0:
        return False
    if ordered.size == 1:
        return ordered[0] > 0
    return ordered[0] - ordered[1] > margin * ordered[0]


def second_ratio(eigenvalues: np.ndarray, a:complex) -> float:
    """
    max |s/a| over the spectrum with one copy of a removed
    """
    values = np.asarray(eigenvalues, dtype=complex)
    if values.size <= 1:
        return 0.0
    rest = np.delete(values, np.argmin(np.abs(values - a)))
    return float(np.max(np.abs(rest)) / abs(a))


def closed_form_spectrum(bank: FilterBank) -> np.ndarray:
    """
    Roots of (l - conj a_0)(l^2 - (conj a_1 + conj a_2) l + conj(a_1 a_2 - a_0 a_3)) for genus 2

    :raises EigenpairMismatch: the low-pass filter does not have four taps
    """
    a = bank.lowpass
    if a.size != 4:
        raise EigenpairMismatch(f"closed-form spectrum needs four taps, got {a.size}")
    c = np.conj(a)
    quadratic = np.roots([1.0, -(c[1] + c[2]), c[1] * c[2] - c[0] * c[3]])
    return order_by_modulus(np.concatenate([[c[0]], quadratic]))


def spectrum_F0(bank: FilterBank, dominance_margin:float=DEFAULT_DOMINANCE_MARGIN) -> SpectralData:
    """
    Spectrum of F_0 = S_0^* restricted to M, with the fractal scale when a_0 dominates

    Genus-2 banks use the closed form of the characteristic polynomial, other
    genera a dense eigensolver.

    :param bank: two-branch filter bank
    :type bank: FilterBank

    :param dominance_margin: relative margin for strict dominance
    :type dominance_margin: float

    :rtype: SpectralData
    """
    F = restrict_to_M(bank, 0).matrix
    if bank.n_branches == 2 and bank.lowpass.size == 4:
        eigenvalues = closed_form_spectrum(bank)
    else:
        eigenvalues = order_by_modulus(np.linalg.eigvals(F))

    dominant = complex(eigenvalues[0]) if eigenvalues.size else None
    strict = is_strictly_dominant(eigenvalues, dominance_margin)

    scale = None
    a0 = complex(bank.lowpass[0])
    if strict and abs(dominant - np.conj(a0)) <= dominance_margin * max(abs(a0), 1.0) and a0 != 0:
        scale = fractal_scale_of(a0)

    return SpectralData(eigenvalues=eigenvalues, dominant=dominant, strictly_dominant=strict, fractal_scale=scale)


def fractal_scale_of(a0:complex) -> float:
    return float(-np.log(abs(a0) ** 2) / np.log(2.0))


def left_ones_check(bank: FilterBank) -> float:
    """
    || w F_0 - w/sqrt2 || for the row vector w = (1, ..., 1)

    :param bank: two-branch filter bank
    :type bank: FilterBank

    :return: residual, below 1e-12 whenever sum_k a_k = sqrt2 and a is a QMF
    :rtype: float
    """
    F = restrict_to_M(bank, 0).matrix
    w = np.ones(F.shape[0])
    return float(np.linalg.norm(w @ F - w / np.sqrt(2.0)))

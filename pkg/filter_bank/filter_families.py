import numpy as np

from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import InvalidFilterInput

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

# beta angle that reproduces the Daubechies 4-tap filter
DAUBECHIES_BETA = float(np.arccos((SQRT3 - 1.0) / (2.0 * SQRT2)))

HAAR_VARIANTS = {
    1: ((1.0, 1.0, 0.0, 0.0), np.pi / 4),
    2: ((1.0, 0.0, 0.0, 1.0), -np.pi / 4),
    3: ((0.0, 1.0, 1.0, 0.0), 3 * np.pi / 4),
    4: ((0.0, 0.0, 1.0, 1.0), -3 * np.pi / 4),
}


def beta_coefficients(beta:float) -> np.ndarray:
    """
    Real genus-2 low-pass solutions parameterized by an angle

    a_0 = (1 + sqrt2 cos b)/(2 sqrt2), a_1 = (1 + sqrt2 sin b)/(2 sqrt2),
    a_2 = (1 - sqrt2 cos b)/(2 sqrt2), a_3 = (1 - sqrt2 sin b)/(2 sqrt2)
    """
    if not np.isfinite(beta):
        raise InvalidFilterInput(f"beta must be finite, got {beta}")
    c, s = np.cos(beta), np.sin(beta)
    return np.array([1 + SQRT2 * c, 1 + SQRT2 * s, 1 - SQRT2 * c, 1 - SQRT2 * s]) / (2 * SQRT2)


def beta_family(beta:float) -> FilterBank:
    """
    Two-branch bank of genus 2 from the beta-parameterized family

    :param beta: angle in radians
    :type beta: float

    :return: bank whose low-pass filter is given by beta_coefficients
    :rtype: FilterBank
    """
    return FilterBank.from_lowpass(beta_coefficients(beta))


def daubechies() -> FilterBank:
    a = np.array([1 + SQRT3, 3 + SQRT3, 3 - SQRT3, 1 - SQRT3]) / (4 * SQRT2)
    return FilterBank.from_lowpass(a)


def haar_variant(variant:int) -> FilterBank:
    """
    One of the four degenerate Haar cases, stored as genus-2 filters

    1: (1+z)/sqrt2, 2: (1+z^3)/sqrt2 (stretched), 3: (z+z^2)/sqrt2, 4: (z^2+z^3)/sqrt2

    :raises InvalidFilterInput: variant outside 1..4
    """
    if variant not in HAAR_VARIANTS:
        raise InvalidFilterInput(f"Haar variant must be 1..4, got {variant}")
    coeffs, _ = HAAR_VARIANTS[variant]
    return FilterBank.from_lowpass(np.array(coeffs) / SQRT2)


def haar() -> FilterBank:
    return FilterBank.from_lowpass(np.array([1.0, 1.0]) / SQRT2)

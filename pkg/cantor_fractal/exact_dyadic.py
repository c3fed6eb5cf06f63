from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cuntz_operators.restricted_operator import restricted_operators
from filter_bank.filter_bank import FilterBank

EXACT_TOLERANCE = 1e-14
MAX_DENOMINATOR = 2 ** 30


@dataclass(frozen=True)
class DyadicFactor:
    """
    F = sigma P with P an integer matrix and sigma^2 a dyadic rational

    ||F_{i_k} ... F_{i_1} e_0||^2 then equals prod sigma_{i_j}^2 times an integer.
    """
    sigma_squared: Fraction
    pattern: Tuple[Tuple[int, ...], ...]

    def apply(self, vector: Sequence[int]) -> List[int]:
        return [sum(p * v for p, v in zip(row, vector)) for row in self.pattern]


def _is_dyadic(value: Fraction) -> bool:
    d = value.denominator
    return d & (d - 1) == 0


def factor_operator(matrix: np.ndarray, tolerance:float=EXACT_TOLERANCE) -> Optional[DyadicFactor]:
    """
    Split a restricted operator into a dyadic scale and an integer pattern, or None when it has no such form
    """
    if np.max(np.abs(matrix.imag), initial=0.0) > tolerance:
        return None
    real = matrix.real
    sigma = float(np.max(np.abs(real), initial=0.0))
    if sigma <= tolerance:
        return DyadicFactor(Fraction(1), tuple(tuple(0 for _ in row) for row in real))
    pattern = np.rint(real / sigma)
    if np.max(np.abs(real / sigma - pattern)) > tolerance:
        return None
    sigma_squared = Fraction(sigma ** 2).limit_denominator(MAX_DENOMINATOR)
    if not _is_dyadic(sigma_squared) or abs(float(sigma_squared) - sigma ** 2) > tolerance:
        return None
    return DyadicFactor(sigma_squared, tuple(tuple(int(v) for v in row) for row in pattern))


def exact_factors(bank: FilterBank) -> Optional[List[DyadicFactor]]:
    factors = [factor_operator(F.matrix) for F in restricted_operators(bank)]
    if any(f is None for f in factors):
        return None
    return factors


def exact_mass(factors: Sequence[DyadicFactor], word: Sequence[int]) -> Fraction:
    """
    mu_0 of the interval addressed by word, in exact arithmetic
    """
    vector = [1] + [0] * (len(factors[0].pattern) - 1)
    scale = Fraction(1)
    for digit in word:
        vector = factors[digit].apply(vector)
        scale *= factors[digit].sigma_squared
    return scale * sum(v * v for v in vector)


def exact_grid(factors: Sequence[DyadicFactor], depth:int) -> List[Fraction]:
    """
    Exact masses of every depth-k word, lexicographic order
    """
    level = [(Fraction(1), [1] + [0] * (len(factors[0].pattern) - 1))]
    for _ in range(depth):
        level = [
            (scale * factor.sigma_squared, factor.apply(vector))
            for scale, vector in level
            for factor in factors
        ]
    return [scale * sum(v * v for v in vector) for scale, vector in level]

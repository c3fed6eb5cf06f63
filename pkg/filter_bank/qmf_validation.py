from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import InvalidFilterInput, UnsupportedBranching

DEFAULT_TOLERANCE = 1e-10
DEFAULT_CIRCLE_SAMPLES = 256


@dataclass(frozen=True)
class ValidationReport:
    """
    Residuals of the quadrature-mirror conditions of a filter bank

    The verdict is pass iff every residual is <= tolerance.
    """
    orthogonality_residuals: Dict[int, float]
    sum_residual: float
    unitarity_max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        residuals = list(self.orthogonality_residuals.values())
        residuals += [self.sum_residual, self.unitarity_max_residual]
        return all(r <= self.tolerance for r in residuals)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "orthogonality_residuals": {str(k): v for k, v in sorted(self.orthogonality_residuals.items())},
            "sum_residual": self.sum_residual,
            "unitarity_max_residual": self.unitarity_max_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class BlockMatrices:
    """
    Polyphase coefficient matrices A_0, ..., A_{D-1} with the residuals of
    sum_k A_{k+n} A_k^* = delta_{0,n} I (rows) and sum_k A_k^* A_{k+n} = delta_{0,n} I (columns)
    """
    matrices: List[np.ndarray]
    row_residuals: Dict[int, float] = field(default_factory=dict)
    column_residuals: Dict[int, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(list(self.row_residuals.values()) + list(self.column_residuals.values()))


def eval_symbol(coeffs: Sequence[complex], z:complex, tolerance:float=DEFAULT_TOLERANCE) -> complex:
    """
    Evaluate sum_k c_k z^k on the unit circle

    :raises InvalidFilterInput: |z| differs from 1 by more than tolerance
    """
    if abs(abs(z) - 1.0) > tolerance:
        raise InvalidFilterInput(f"|z| = {abs(z)} is not on the unit circle")
    return complex(P.polyval(z, np.asarray(coeffs, dtype=complex)))


def circle_points(samples:int) -> np.ndarray:
    if samples < 1:
        raise InvalidFilterInput(f"number of circle samples must be positive, got {samples}")
    return np.exp(2j * np.pi * np.arange(samples) / samples)


def modulation_matrix(bank: FilterBank, z:complex, tolerance:float=DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Modulation matrix (1/sqrt N) (m_j(z rho^k))_{j,k}, rho = exp(2 pi i/N)

    For N=2 this is (1/sqrt2) [[m_0(z), m_0(-z)], [m_1(z), m_1(-z)]].

    :param bank: filter bank
    :type bank: FilterBank

    :param z: point of the unit circle
    :type z: complex

    :return: N x N complex matrix
    :rtype: numpy.ndarray
    """
    n = bank.n_branches
    shifts = z * np.exp(2j * np.pi * np.arange(n) / n)
    rows = [[eval_symbol(b, w, tolerance) for w in shifts] for b in bank.branches]
    return np.array(rows, dtype=complex) / np.sqrt(n)


def unitarity_residual(matrix: np.ndarray) -> float:
    """
    Spectral norm of M^* M - I
    """
    return float(np.linalg.norm(matrix.conj().T @ matrix - np.eye(matrix.shape[0]), ord=2))


def max_unitarity_residual(bank: FilterBank, samples:int=DEFAULT_CIRCLE_SAMPLES) -> float:
    return max(unitarity_residual(modulation_matrix(bank, z)) for z in circle_points(samples))


def orthogonality_residuals(coeffs: np.ndarray, n_branches:int=2) -> Dict[int, float]:
    """
    |sum_k conj(a_k) a_{k+N l} - delta_{0,l}| for every lag l with nonzero overlap
    """
    residuals = {}
    max_lag = (coeffs.size - 1) // n_branches
    for lag in range(-max_lag, max_lag + 1):
        shift = n_branches * lag
        if shift >= 0:
            overlap = np.vdot(coeffs[:coeffs.size - shift], coeffs[shift:])
        else:
            overlap = np.vdot(coeffs[-shift:], coeffs[:coeffs.size + shift])
        residuals[lag] = float(abs(overlap - (1.0 if lag == 0 else 0.0)))
    return residuals


def validate_qmf(
        bank: FilterBank,
        tolerance:float=DEFAULT_TOLERANCE,
        samples:int=DEFAULT_CIRCLE_SAMPLES) -> ValidationReport:
    """
    Check the quadrature-mirror conditions of the low-pass filter

    Checks the shifted orthogonality at every lag, the sum rule sum_k a_k = sqrt N
    and the unitarity of the modulation matrix at equispaced circle points.

    :param bank: filter bank (its low-pass filter is checked)
    :type bank: FilterBank

    :param tolerance: largest residual still accepted
    :type tolerance: float

    :param samples: number of circle points (at least 256 recommended)
    :type samples: int

    :raises InvalidFilterInput: negative tolerance or odd low-pass length for N=2

    :return: residuals and verdict
    :rtype: ValidationReport
    """
    if tolerance < 0:
        raise InvalidFilterInput(f"tolerance must be nonnegative, got {tolerance}")
    a = bank.lowpass
    if bank.n_branches == 2 and a.size % 2 != 0:
        raise InvalidFilterInput("low-pass length must be even for N=2")

    return ValidationReport(
        orthogonality_residuals=orthogonality_residuals(a, bank.n_branches),
        sum_residual=float(abs(a.sum() - np.sqrt(bank.n_branches))),
        unitarity_max_residual=max_unitarity_residual(bank, samples),
        tolerance=tolerance,
    )


def power_complementarity_residual(bank: FilterBank, samples:int=DEFAULT_CIRCLE_SAMPLES) -> float:
    """
    max_z | |m_0(z)|^2 + |m_0(-z)|^2 - 2 |
    """
    zs = circle_points(samples)
    a = bank.lowpass
    values = np.abs(P.polyval(zs, a)) ** 2 + np.abs(P.polyval(-zs, a)) ** 2
    return float(np.max(np.abs(values - 2.0)))


def parity_sums(bank: FilterBank) -> Tuple[complex, complex]:
    """
    Sums of the even- and odd-indexed low-pass coefficients (both 1/sqrt2 for a validated bank)
    """
    a = bank.lowpass
    return complex(a[0::2].sum()), complex(a[1::2].sum())


def two_circle_residuals(bank: FilterBank) -> Tuple[float, float]:
    """
    Residuals of (a_0 - c)^2 + (a_3 - c)^2 = 1/4 and (a_1 - c)^2 + (a_2 - c)^2 = 1/4, c = 1/(2 sqrt2)

    :raises InvalidFilterInput: low-pass filter does not have four taps
    """
    a = bank.lowpass
    if a.size != 4:
        raise InvalidFilterInput(f"two-circle identity needs four taps, got {a.size}")
    c = 1.0 / (2.0 * np.sqrt(2.0))
    first = (a[0] - c) ** 2 + (a[3] - c) ** 2 - 0.25
    second = (a[1] - c) ** 2 + (a[2] - c) ** 2 - 0.25
    return float(abs(first)), float(abs(second))


def block_coefficient_matrices(bank: FilterBank) -> BlockMatrices:
    """
    Coefficient matrices A_k = [[a_{2k}, a_{2k+1}], [b_{2k}, b_{2k+1}]], k = 0, ..., D-1

    For D=2 this gives A_0 = [[a_0, a_1], [a_3, -a_2]] and A_1 = [[a_2, a_3], [a_1, -a_0]].

    :raises UnsupportedBranching: N != 2
    """
    if bank.n_branches != 2:
        raise UnsupportedBranching(bank.n_branches, "block_coefficient_matrices")
    genus = bank.genus
    padded = [np.pad(b, (0, 2 * genus - b.size)) for b in bank.branches]
    matrices = [
        np.array([[padded[0][2 * k], padded[0][2 * k + 1]],
                  [padded[1][2 * k], padded[1][2 * k + 1]]], dtype=complex)
        for k in range(genus)
    ]

    identity = np.eye(2)
    row_residuals = {}
    column_residuals = {}
    for n in range(-(genus - 1), genus):
        target = identity if n == 0 else 0 * identity
        pairs = [(k + n, k) for k in range(genus) if 0 <= k + n < genus]
        rows = sum((matrices[i] @ matrices[j].conj().T for i, j in pairs), 0 * identity)
        cols = sum((matrices[j].conj().T @ matrices[i] for i, j in pairs), 0 * identity)
        row_residuals[n] = float(np.max(np.abs(rows - target)))
        column_residuals[n] = float(np.max(np.abs(cols - target)))

    return BlockMatrices(matrices, row_residuals, column_residuals)

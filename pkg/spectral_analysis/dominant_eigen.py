from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import linalg, stats

from cuntz_operators.restricted_operator import RestrictedOperator, restrict_to_M
from filter_bank.filter_bank import FilterBank
from spectral_analysis.spectral_exceptions import EigenpairMismatch, SingularResolvent
from spectral_analysis.spectrum import (
    DEFAULT_DOMINANCE_MARGIN, SpectralData, is_strictly_dominant, order_by_modulus, second_ratio)

DEFAULT_SINGULAR_TOLERANCE = 1e-12
DEFAULT_EIGENPAIR_TOLERANCE = 1e-9

Operator = Union[RestrictedOperator, np.ndarray]


def _matrix(F: Operator) -> np.ndarray:
    if isinstance(F, RestrictedOperator):
        return F.matrix
    return np.asarray(F, dtype=complex)


@dataclass(frozen=True, eq=False)
class DecayFit:
    """
    Error sequence of the scaled power iteration and its fitted decay

    errors[n-1] = || a^{-n} F^n x - <w|x> xi ||, bounded by constant * n^{d-1} * rho^n
    """
    errors: np.ndarray
    rho: float
    dimension: int
    constant: float
    slope: float

    @property
    def log_rho(self) -> float:
        return float(np.log(self.rho))

    def bound(self, n:int) -> float:
        return self.constant * n ** (self.dimension - 1) * self.rho ** n


def dominant_eigendata(
        F: Operator,
        a:complex,
        w: np.ndarray,
        singular_tolerance:float=DEFAULT_SINGULAR_TOLERANCE,
        eigenpair_tolerance:float=DEFAULT_EIGENPAIR_TOLERANCE,
        dominance_margin:float=DEFAULT_DOMINANCE_MARGIN) -> SpectralData:
    """
    Right eigenvector xi = w + (a - G)^{-1} eta normalized by <w|xi> = 1

    The space is split as C w (+) w-perp; with Q an orthonormal basis of w-perp,
    G = Q^* F Q and eta = Q^* F w, so F has the block form [[a, 0], [eta, G]].

    :param F: square operator
    :type F: RestrictedOperator or numpy.ndarray

    :param a: simple eigenvalue of F
    :type a: complex

    :param w: unit left eigenvector, F^* w = conj(a) w
    :type w: numpy.ndarray

    :raises EigenpairMismatch: w is not a unit vector or not a left eigenvector for a
    :raises SingularResolvent: a is an eigenvalue of G

    :rtype: SpectralData
    """
    matrix = _matrix(F)
    w = np.asarray(w, dtype=complex)
    if w.shape != (matrix.shape[0],):
        raise EigenpairMismatch(f"w has shape {w.shape}, operator has shape {matrix.shape}")
    if abs(np.linalg.norm(w) - 1.0) > eigenpair_tolerance:
        raise EigenpairMismatch(f"||w|| = {np.linalg.norm(w)} is not 1")
    left_residual = np.linalg.norm(matrix.conj().T @ w - np.conj(a) * w)
    if left_residual > eigenpair_tolerance * max(1.0, abs(a)):
        raise EigenpairMismatch(f"F^* w differs from conj(a) w by {left_residual:.3e}")

    Q = linalg.null_space(w.conj()[np.newaxis, :])
    if Q.shape[1] == 0:
        xi = w.copy()
        G = np.zeros((0, 0), dtype=complex)
        eta = np.zeros(0, dtype=complex)
    else:
        G = Q.conj().T @ matrix @ Q
        eta = Q.conj().T @ matrix @ w
        resolvent = a * np.eye(G.shape[0]) - G
        smallest = float(linalg.svdvals(resolvent).min())
        if smallest < singular_tolerance:
            raise SingularResolvent(a, smallest)
        xi = w + Q @ linalg.solve(resolvent, eta)

    eigenvalues = order_by_modulus(np.linalg.eigvals(matrix))
    return SpectralData(
        eigenvalues=eigenvalues,
        dominant=complex(a),
        strictly_dominant=bool(
            is_strictly_dominant(eigenvalues, dominance_margin)
            and abs(eigenvalues[0] - a) <= eigenpair_tolerance * max(1.0, abs(a))),
        left_vector=w,
        right_vector=xi,
        complement_block=G,
        coupling=eta,
    )


def power_limit(F: Operator, a:complex, w: np.ndarray, xi: np.ndarray, x: np.ndarray, n:int) -> Tuple[np.ndarray, float]:
    """
    a^{-n} F^n x and its distance to the limit <w|x> xi

    Iterates the scaled operator a^{-1} F so large n never overflows.

    :return: (a^{-n} F^n x, || a^{-n} F^n x - <w|x> xi ||)
    :rtype: tuple
    """
    scaled = _matrix(F) / a
    y = np.asarray(x, dtype=complex)
    limit = np.vdot(w, y) * np.asarray(xi)
    for _ in range(n):
        y = scaled @ y
    return y, float(np.linalg.norm(y - limit))


def decay_fit(F: Operator, a:complex, w: np.ndarray, xi: np.ndarray, x: np.ndarray, n_max:int=60, tail:int=20) -> DecayFit:
    """
    Fit error_n <= C n^{d-1} rho^n over n = 1..n_max, rho the second ratio max|s/a|

    The empirical slope is the least-squares slope of ln error_n over the last
    tail iterations.

    :param tail: number of final iterations used for the slope
    :type tail: int

    :rtype: DecayFit
    """
    matrix = _matrix(F)
    scaled = matrix / a
    y = np.asarray(x, dtype=complex)
    limit = np.vdot(w, y) * np.asarray(xi)
    errors = np.empty(n_max)
    for n in range(1, n_max + 1):
        y = scaled @ y
        errors[n - 1] = np.linalg.norm(y - limit)

    d = matrix.shape[0]
    rho = second_ratio(np.linalg.eigvals(matrix), a)
    ns = np.arange(1, n_max + 1)
    envelope = ns.astype(float) ** (d - 1) * rho ** ns
    positive = envelope > 0
    constant = float(np.max(errors[positive] / envelope[positive])) if positive.any() else 0.0

    tail_ns = ns[-tail:]
    tail_errors = errors[-tail:]
    usable = tail_errors > 0
    if usable.sum() >= 2:
        slope = float(stats.linregress(tail_ns[usable], np.log(tail_errors[usable])).slope)
    else:
        slope = float("-inf")
    return DecayFit(errors=errors, rho=rho, dimension=d, constant=constant, slope=slope)


def daubechies_left_vector(dimension:int=3) -> np.ndarray:
    return np.sqrt(2.0) * np.ones(dimension)


@dataclass(frozen=True)
class NormalizationCheck:
    left_residual: float
    eigenvector_residual: float
    pairing: float

    @property
    def expected_pairing(self) -> float:
        return float(np.sqrt(8.0))


def daubechies_normalization_check(bank: FilterBank) -> NormalizationCheck:
    """
    Check w = sqrt2 (e_0 + e_{-1} + e_{-2}) against v* = (1+sqrt3) e_{-1} + (1-sqrt3) e_{-2}

    Reports || F_0^* w - w/sqrt2 ||, || F_0 v* - v*/sqrt2 || and <w|v*> (sqrt8 expected).
    """
    F = restrict_to_M(bank, 0).matrix
    if F.shape[0] != 3:
        raise EigenpairMismatch(f"normalization check needs genus 2, got a {F.shape[0]}-dimensional M")
    w = daubechies_left_vector(F.shape[0])
    v_star = np.array([0.0, 1 + np.sqrt(3.0), 1 - np.sqrt(3.0)])
    return NormalizationCheck(
        left_residual=float(np.linalg.norm(F.conj().T @ w - w / np.sqrt(2.0))),
        eigenvector_residual=float(np.linalg.norm(F @ v_star - v_star / np.sqrt(2.0))),
        pairing=float(np.vdot(w, v_star).real),
    )

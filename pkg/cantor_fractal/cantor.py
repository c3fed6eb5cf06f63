import time as tm
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from analysis_events.event_register import register_event
from cantor_fractal.exact_dyadic import exact_factors, exact_grid, exact_mass
from cuntz_operators.isometries import cuntz_residual
from cuntz_operators.sparse_sequence import random_sparse_sequence
from dyadic_measure.measure import DEFAULT_GRID_CAP, measure_grid, mu0_interval
from dyadic_measure.measure_exceptions import GridCapExceeded
from dyadic_measure.n_adic_interval import NAdicInterval, as_interval, word_of_index
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_families import SQRT2
from filter_bank.qmf_validation import DEFAULT_CIRCLE_SAMPLES, DEFAULT_TOLERANCE, max_unitarity_residual

CANTOR_DIMENSION = np.log(2.0) / np.log(3.0)

Mass = Union[Fraction, float]


def cantor_filter() -> FilterBank:
    """
    m_0(z) = (1 + z^2)/sqrt2, m_1(z) = z, m_2(z) = (1 - z^2)/sqrt2
    """
    return FilterBank(3, (
        np.array([1.0, 0.0, 1.0]) / SQRT2,
        np.array([0.0, 1.0]),
        np.array([1.0, 0.0, -1.0]) / SQRT2,
    ))


@dataclass(frozen=True)
class ONReport:
    max_residual: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "unitarity_max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "verdict": self.verdict,
        }


def validate_ON(
        bank: FilterBank,
        samples:int=DEFAULT_CIRCLE_SAMPLES,
        tolerance:float=DEFAULT_TOLERANCE) -> ONReport:
    """
    Check that (1/sqrt N)(m_j(z rho^k))_{j,k} is unitary at sampled points of the circle

    Unlike validate_qmf, no normalization of the low-pass filter is required, so the
    Cantor bank (m_0(1) = sqrt2) passes.

    :param bank: filter bank with N branches
    :type bank: FilterBank

    :param samples: number of equally spaced circle points
    :type samples: int

    :param tolerance: largest accepted residual
    :type tolerance: float

    :rtype: ONReport
    """
    return ONReport(max_unitarity_residual(bank, samples), tolerance, samples)


def triadic_measure(word, bank: Optional[FilterBank]=None) -> Mass:
    """
    mu_0 of a base-N interval, exact when the restricted operators have dyadic factors

    :param word: digits, most significant first
    :param bank: defaults to the Cantor bank

    :raises DigitOutOfRange: digit outside 0..N-1

    :return: a Fraction for exactly factorable banks, a float otherwise
    """
    bank = bank or cantor_filter()
    interval = as_interval(word, bank.n_branches)
    factors = exact_factors(bank)
    if factors is None:
        return mu0_interval(bank, interval)
    return exact_mass(factors, interval.digits)


@dataclass(frozen=True)
class TriadicMeasureReport:
    """
    Masses of every depth-k word and their deviations from the self-similarity identity

    Words are in lexicographic order; residuals are empty at depth 0.
    """
    base: int
    depth: int
    masses: List[Mass]
    hutchinson_residuals: List[Mass]

    @property
    def exact(self) -> bool:
        return all(isinstance(m, Fraction) for m in self.masses)

    def max_residual(self) -> Mass:
        return max(self.hutchinson_residuals, default=Fraction(0))

    def total_mass(self) -> Mass:
        return sum(self.masses, Fraction(0))

    def rows(self) -> Iterator[Tuple[str, Fraction, Mass]]:
        for index, mass in enumerate(self.masses):
            interval = NAdicInterval(self.base, word_of_index(index, self.depth, self.base))
            yield interval.to_string(), interval.left_endpoint_exact, mass

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "exact": self.exact,
            "rows": [
                {"word": word, "left": str(left), "mass": float(mass)}
                for word, left, mass in self.rows()
            ],
            "max_hutchinson_residual": float(self.max_residual()),
        }


def _masses(bank: FilterBank, depth:int, grid_cap:int) -> List[Mass]:
    cells = bank.n_branches ** depth
    if cells > grid_cap:
        raise GridCapExceeded(cells, grid_cap)
    factors = exact_factors(bank)
    if factors is None:
        return [float(m) for m in measure_grid(bank, depth, grid_cap).masses]
    return exact_grid(factors, depth)


def _residuals(masses: Sequence[Mass], parents: Sequence[Mass], base:int) -> List[Mass]:
    # word d_1 d_2...d_k sits at d_1 * N^{k-1} + index(d_2...d_k)
    block = len(parents)
    half = Fraction(1, 2) if isinstance(parents[0], Fraction) else 0.5
    residuals = []
    for index, mass in enumerate(masses):
        first, rest = divmod(index, block)
        expected = half * parents[rest] if first in (0, base - 1) else 0
        residuals.append(abs(mass - expected))
    return residuals


def triadic_grid(
        depth:int,
        bank: Optional[FilterBank]=None,
        grid_cap:int=DEFAULT_GRID_CAP) -> TriadicMeasureReport:
    """
    Masses of all depth-k words together with their Hutchinson residuals

    :param depth: k >= 0
    :type depth: int

    :param bank: defaults to the Cantor bank
    :type bank: FilterBank

    :raises GridCapExceeded: N^k > grid_cap

    :rtype: TriadicMeasureReport
    """
    bank = bank or cantor_filter()
    startTime = tm.process_time_ns()
    register_event("cantor_fractal", "triadic_grid", f"Started depth={depth}")
    masses = _masses(bank, depth, grid_cap)
    residuals = []
    if depth > 0:
        residuals = _residuals(masses, _masses(bank, depth - 1, grid_cap), bank.n_branches)
    register_event("cantor_fractal", "triadic_grid", f"Finished depth={depth}")
    register_event("cantor_fractal", "triadic_grid_time", f"{tm.process_time_ns()-startTime}")
    return TriadicMeasureReport(bank.n_branches, depth, masses, residuals)


def hutchinson_check(
        depth:int,
        measure: Optional[Callable[[Tuple[int, ...]], Mass]]=None,
        grid_cap:int=DEFAULT_GRID_CAP) -> Mass:
    """
    max over depth-k base-3 words of |mu(w) - 1/2 [d_1=0] mu(d_2...d_k) - 1/2 [d_1=2] mu(d_2...d_k)|

    :param depth: k
    :type depth: int

    :param measure: word -> mass; the Cantor bank's triadic measure when omitted
    :type measure: callable

    :raises GridCapExceeded: 3^k > grid_cap

    :return: 0 for the Cantor measure
    """
    if measure is None:
        return triadic_grid(depth, grid_cap=grid_cap).max_residual()
    if 3 ** depth > grid_cap:
        raise GridCapExceeded(3 ** depth, grid_cap)
    if depth == 0:
        return Fraction(0)
    masses = [measure(word_of_index(i, depth, 3)) for i in range(3 ** depth)]
    parents = [measure(word_of_index(i, depth - 1, 3)) for i in range(3 ** (depth - 1))]
    return max(_residuals(masses, parents, 3))


def cantor_log_identity_residual(depth:int, grid_cap:int=DEFAULT_GRID_CAP) -> float:
    """
    max over surviving depth-k intervals J of |ln mu(J) - s ln |J||, s = ln 2 / ln 3
    """
    report = triadic_grid(depth, grid_cap=grid_cap)
    log_length = -depth * np.log(3.0)
    surviving = [float(m) for m in report.masses if m != 0]
    return max((abs(np.log(m) - CANTOR_DIMENSION * log_length) for m in surviving), default=0.0)


@dataclass(frozen=True)
class AgreementReport:
    """
    validate_ON verdicts next to sparse-sequence Cuntz verdicts for a batch of banks
    """
    on_verdicts: List[bool]
    cuntz_verdicts: List[bool]

    @property
    def agreements(self) -> int:
        return sum(a == b for a, b in zip(self.on_verdicts, self.cuntz_verdicts))

    @property
    def all_agree(self) -> bool:
        return self.agreements == len(self.on_verdicts)


def perturbed_bank(bank: FilterBank, rng: np.random.Generator, noise:float) -> FilterBank:
    """
    Permute the branches and multiply each by a random phase, then add coefficient noise

    With noise = 0 the result still satisfies the O_N relations.
    """
    order = rng.permutation(bank.n_branches)
    branches = []
    for i in order:
        coeffs = bank.branch(int(i)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        coeffs = coeffs + noise * (rng.normal(size=coeffs.size) + 1j * rng.normal(size=coeffs.size))
        branches.append(coeffs)
    return FilterBank(bank.n_branches, tuple(branches))


def on_agreement(
        rng: np.random.Generator,
        trials:int=20,
        bank: Optional[FilterBank]=None,
        noise:float=1e-2,
        sequences:int=5) -> AgreementReport:
    """
    Compare validate_ON with the Cuntz relations on random banks, half of them perturbed off the relations
    """
    bank = bank or cantor_filter()
    on_verdicts, cuntz_verdicts = [], []
    for trial in range(trials):
        candidate = perturbed_bank(bank, rng, noise if trial % 2 else 0.0)
        samples = [random_sparse_sequence(rng) for _ in range(sequences)]
        on_verdicts.append(validate_ON(candidate).passed)
        cuntz_verdicts.append(cuntz_residual(candidate, samples).passed)
    return AgreementReport(on_verdicts, cuntz_verdicts)

import time as tm
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from analysis_events.event_register import register_event
from cuntz_operators.isometries import apply_word_star
from cuntz_operators.restricted_operator import restricted_operators
from cuntz_operators.sparse_sequence import SparseSequence
from dyadic_measure.measure_exceptions import (
    BaseMismatch, GridCapExceeded, LowerBoundViolated, NonUnitVector)
from dyadic_measure.n_adic_interval import NAdicInterval, as_interval, word_of_index
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import UnsupportedBranching

DEFAULT_GRID_CAP = 3 ** 12
DEFAULT_MASS_FLOOR = 1e-300
LOWER_BOUND_SLACK = 1e-12

Word = Union[NAdicInterval, str, Sequence[int]]


@dataclass(frozen=True, eq=False)
class MeasureTable:
    """
    Masses of all depth-k N-adic intervals, words in lexicographic order

    :param base: N
    :param depth: k
    :param masses: N^k nonnegative masses
    """
    base: int
    depth: int
    masses: np.ndarray

    def __len__(self) -> int:
        return self.masses.size

    def word_at(self, index:int) -> Tuple[int, ...]:
        return word_of_index(index, self.depth, self.base)

    def interval_at(self, index:int) -> NAdicInterval:
        return NAdicInterval(self.base, self.word_at(index))

    def left_endpoint(self, index:int) -> float:
        return index / self.base ** self.depth

    def mass_of(self, word: Word) -> float:
        return float(self.masses[as_interval(word, self.base).index])

    def total_mass(self) -> float:
        return float(self.masses.sum())

    def densities(self) -> np.ndarray:
        return self.masses * self.base ** self.depth

    def coarsened(self) -> "MeasureTable":
        """
        Table one level up, each parent mass being the sum of its N children
        """
        if self.depth == 0:
            return self
        return MeasureTable(self.base, self.depth - 1, self.masses.reshape(-1, self.base).sum(axis=1))

    def additivity_residual(self, parent: "MeasureTable") -> float:
        """
        max over parents of |mu(u) - sum_d mu(u d)|
        """
        if parent.base != self.base or parent.depth != self.depth - 1:
            raise BaseMismatch(parent.base, self.base)
        return float(np.max(np.abs(parent.masses - self.coarsened().masses)))

    def rows(self) -> Iterator[Tuple[str, float, float]]:
        for index, mass in enumerate(self.masses):
            word = "".join(str(d) for d in self.word_at(index))
            yield word, self.left_endpoint(index), float(mass)


def _check_base(bank: FilterBank, interval: NAdicInterval):
    if interval.base != bank.n_branches:
        raise BaseMismatch(interval.base, bank.n_branches)


def orbit_vector(bank: FilterBank, word: Word) -> np.ndarray:
    """
    F_{i_k} ... F_{i_1} e_0 in the coordinates of M
    """
    interval = as_interval(word, bank.n_branches)
    _check_base(bank, interval)
    operators = [F.matrix for F in restricted_operators(bank)]
    vector = np.zeros(operators[0].shape[0], dtype=complex)
    vector[0] = 1.0
    for d in interval.digits:
        vector = operators[d] @ vector
    return vector


def mu0_interval(bank: FilterBank, interval: Word) -> float:
    """
    mu_0 of an N-adic interval, ||F_{i_k} ... F_{i_1} e_0||^2

    :param bank: filter bank with N branches
    :type bank: FilterBank

    :param interval: the interval, or its digit word (string or sequence)
    :type interval: NAdicInterval

    :raises DigitOutOfRange: digit outside 0..N-1
    :raises BaseMismatch: interval base differs from N

    :rtype: float
    """
    return float(np.sum(np.abs(orbit_vector(bank, interval)) ** 2))


def mu_f_interval(bank: FilterBank, f: SparseSequence, interval: Word, tolerance:float=1e-10) -> float:
    """
    mu_f of an N-adic interval, ||S_{i_k}^* ... S_{i_1}^* f||^2 computed on l2(Z)

    :raises NonUnitVector: ||f|| differs from 1 by more than tolerance
    """
    norm = f.norm()
    if abs(norm - 1.0) > tolerance:
        raise NonUnitVector(norm)
    interval = as_interval(interval, bank.n_branches)
    _check_base(bank, interval)
    return apply_word_star(bank, interval.digits, f).norm_squared()


def measure_grid(
        bank: FilterBank,
        depth:int,
        grid_cap:int=DEFAULT_GRID_CAP,
        mass_floor:float=DEFAULT_MASS_FLOOR) -> MeasureTable:
    """
    Masses of every depth-k interval

    Works level by level: the orbit vectors of one level are stacked and every
    child row is one matrix-vector product away from its parent row, so the
    stack stays in lexicographic order (child index = parent index * N + digit).

    :param bank: filter bank with N branches
    :type bank: FilterBank

    :param depth: k >= 0
    :type depth: int

    :param grid_cap: largest accepted N^k
    :type grid_cap: int

    :param mass_floor: masses below this value are stored as 0
    :type mass_floor: float

    :raises GridCapExceeded: N^k > grid_cap

    :rtype: MeasureTable
    """
    n = bank.n_branches
    cells = n ** depth
    if cells > grid_cap:
        raise GridCapExceeded(cells, grid_cap)

    startTime = tm.process_time_ns()
    register_event("dyadic_measure", "measure_grid", f"Started depth={depth} N={n}")
    operators = np.stack([F.matrix for F in restricted_operators(bank)])
    orbits = np.zeros((1, operators.shape[1]), dtype=complex)
    orbits[0, 0] = 1.0
    for _ in range(depth):
        # (words, N, dim): row w*N + d holds F_d applied to orbit w
        orbits = np.einsum("dij,wj->wdi", operators, orbits).reshape(-1, operators.shape[1])

    masses = np.sum(np.abs(orbits) ** 2, axis=1)
    masses[masses < mass_floor] = 0.0
    register_event("dyadic_measure", "measure_grid", f"Finished depth={depth} N={n}")
    register_event("dyadic_measure", "measure_grid_time", f"{tm.process_time_ns()-startTime}")
    return MeasureTable(n, depth, masses)


def lower_bound(bank: FilterBank, interval: Word, slack:float=LOWER_BOUND_SLACK) -> float:
    """
    |a_0|^{2 #0} |b_0|^{2 #1}, a lower bound of mu_0 on the interval (b_0 is the first tap of branch 1)

    :raises UnsupportedBranching: N != 2
    :raises LowerBoundViolated: mu_0 of the interval is below the bound minus slack
    """
    if bank.n_branches != 2:
        raise UnsupportedBranching(bank.n_branches, "lower_bound")
    interval = as_interval(interval, 2)
    a0 = abs(bank.lowpass[0])
    b0 = abs(bank.branch(1)[0])
    bound = a0 ** (2 * interval.count(0)) * b0 ** (2 * interval.count(1))
    mass = mu0_interval(bank, interval)
    if mass < bound - slack:
        raise LowerBoundViolated(interval.to_string(), mass, bound)
    return float(bound)


def unboundedness_scan(
        bank: FilterBank,
        lo:float,
        hi:float,
        depth:int,
        grid_cap:int=DEFAULT_GRID_CAP) -> float:
    """
    max of mu_0(J)/|J| over the depth-k intervals J inside [lo, hi); 0 when none fits

    :rtype: float
    """
    return density_profile(bank, lo, hi, [depth], grid_cap)[0][1]


def density_profile(
        bank: FilterBank,
        lo:float,
        hi:float,
        depths: Sequence[int],
        grid_cap:int=DEFAULT_GRID_CAP) -> List[Tuple[int, float]]:
    """
    (depth, max density over the intervals inside [lo, hi)) for each requested depth

    One grid at the deepest level is built and coarsened for the others.
    """
    if not depths:
        return []
    table = measure_grid(bank, max(depths), grid_cap)
    by_depth = {}
    while True:
        by_depth[table.depth] = table
        if table.depth == 0:
            break
        table = table.coarsened()

    profile = []
    for depth in depths:
        table = by_depth[depth]
        scale = table.base ** depth
        first = int(np.ceil(lo * scale - 1e-9))
        stop = int(np.floor(hi * scale + 1e-9))
        if stop <= first:
            profile.append((depth, 0.0))
            continue
        profile.append((depth, float(np.max(table.densities()[max(first, 0):min(stop, scale)]))))
    return profile


from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from cuntz_operators.sparse_sequence import SparseSequence
from filter_bank.filter_bank import FilterBank
from filter_bank.qmf_validation import circle_points, eval_symbol


@dataclass(frozen=True)
class CuntzReport:
    """
    Largest deviations from sum_i S_i S_i^* = I and S_i^* S_j = delta_ij I over a set of sequences
    """
    completeness_residual: float
    isometry_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.completeness_residual, self.isometry_residual) <= self.tolerance

    def to_dict(self) -> Dict[str, float]:
        return {
            "completeness_residual": self.completeness_residual,
            "isometry_residual": self.isometry_residual,
            "tolerance": self.tolerance,
            "verdict": "pass" if self.passed else "fail",
        }


def apply_S(coeffs: Sequence[complex], xi: SparseSequence, n_branches:int=2) -> SparseSequence:
    """
    (S xi)_n = sum_k c_{n - N k} xi_k

    :param coeffs: coefficients c_0, c_1, ... of one branch
    :type coeffs: sequence of complex

    :param xi: finitely supported input
    :type xi: SparseSequence

    :param n_branches: branching factor N
    :type n_branches: int

    :return: S xi
    :rtype: SparseSequence
    """
    out: Dict[int, complex] = {}
    for k, value in xi.entries.items():
        for j, c in enumerate(coeffs):
            if c != 0:
                n = n_branches * k + j
                out[n] = out.get(n, 0j) + c * value
    return SparseSequence(out)


def apply_S_star(coeffs: Sequence[complex], xi: SparseSequence, n_branches:int=2) -> SparseSequence:
    """
    (S^* xi)_n = sum_k conj(c_{k - N n}) xi_k

    :param coeffs: coefficients c_0, c_1, ... of one branch
    :type coeffs: sequence of complex

    :param xi: finitely supported input
    :type xi: SparseSequence

    :param n_branches: branching factor N
    :type n_branches: int

    :return: S^* xi
    :rtype: SparseSequence
    """
    out: Dict[int, complex] = {}
    for k, value in xi.entries.items():
        for j, c in enumerate(coeffs):
            if c != 0 and (k - j) % n_branches == 0:
                n = (k - j) // n_branches
                out[n] = out.get(n, 0j) + np.conj(c) * value
    return SparseSequence(out)


def apply_word_star(bank: FilterBank, word: Sequence[int], xi: SparseSequence) -> SparseSequence:
    """
    S_{i_k}^* ... S_{i_1}^* xi for the word (i_1, ..., i_k); i_1 acts first
    """
    for i in word:
        xi = apply_S_star(bank.branch(i), xi, bank.n_branches)
    return xi


def completeness_residual(bank: FilterBank, xi: SparseSequence) -> float:
    """
    || sum_i S_i S_i^* xi - xi ||
    """
    total = SparseSequence()
    for b in bank.branches:
        total = total + apply_S(b, apply_S_star(b, xi, bank.n_branches), bank.n_branches)
    return (total - xi).norm()


def isometry_residual(bank: FilterBank, xi: SparseSequence) -> float:
    """
    max_{i,j} || S_i^* S_j xi - delta_ij xi ||
    """
    worst = 0.0
    for j, bj in enumerate(bank.branches):
        image = apply_S(bj, xi, bank.n_branches)
        for i, bi in enumerate(bank.branches):
            back = apply_S_star(bi, image, bank.n_branches)
            target = xi if i == j else SparseSequence()
            worst = max(worst, (back - target).norm())
    return worst


def cuntz_residual(bank: FilterBank, sequences: Sequence[SparseSequence], tolerance:float=1e-10) -> CuntzReport:
    """
    Check the Cuntz relations of the branch isometries on finitely supported sequences

    :param bank: filter bank with N branches
    :type bank: FilterBank

    :param sequences: sample sequences
    :type sequences: sequence of SparseSequence

    :param tolerance: largest residual still accepted
    :type tolerance: float

    :rtype: CuntzReport
    """
    return CuntzReport(
        completeness_residual=max((completeness_residual(bank, xi) for xi in sequences), default=0.0),
        isometry_residual=max((isometry_residual(bank, xi) for xi in sequences), default=0.0),
        tolerance=tolerance,
    )


def range_orthogonality_residual(bank: FilterBank, eta: SparseSequence, xi: SparseSequence) -> float:
    """
    max_{i != j} |<S_i eta | S_j xi>|
    """
    images_eta = [apply_S(b, eta, bank.n_branches) for b in bank.branches]
    images_xi = [apply_S(b, xi, bank.n_branches) for b in bank.branches]
    return max(
        (abs(u.inner(v)) for i, u in enumerate(images_eta) for j, v in enumerate(images_xi) if i != j),
        default=0.0)


def isometry_relation_residual(bank: FilterBank, samples:int=1024) -> float:
    """
    max over sampled z of |(1/N) sum_{w^N = z} conj(m_i(w)) m_j(w) - delta_ij|
    """
    n = bank.n_branches
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    worst = 0.0
    for z in circle_points(samples):
        base = z ** (1.0 / n)
        values = np.array([[eval_symbol(b, base * r) for r in roots] for b in bank.branches])
        gram = values.conj() @ values.T / n
        worst = max(worst, float(np.max(np.abs(gram - np.eye(n)))))
    return worst


def moment_sequence(bank: FilterBank, n:int, k_max:int, branch:int=0) -> List[complex]:
    """
    <e_n | S^{*k} e_n> for k = 1, ..., k_max
    """
    coeffs = bank.branch(branch)
    start = SparseSequence.basis(n)
    xi = start
    moments = []
    for _ in range(k_max):
        xi = apply_S_star(coeffs, xi, bank.n_branches)
        moments.append(start.inner(xi))
    return moments

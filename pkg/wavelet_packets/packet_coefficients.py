from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from analysis_events.event_register import register_event
from cuntz_operators.isometries import apply_S_star
from cuntz_operators.sparse_sequence import SparseSequence
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import UnsupportedBranching
from wavelet_packets.packet_exceptions import InvalidPacketWord, PacketDepthExceeded

DEFAULT_MAX_DEPTH = 12
DEFAULT_PRUNE_BELOW = 1e-15

Digits = Tuple[int, ...]


def packet_index(p:int, n:int, word: Sequence[int]) -> int:
    """
    m = 2^p n + i_1 + 2 i_2 + ... + 2^{p-1} i_p, the packet reached from phi_n by the word (i_1, ..., i_p)

    :raises InvalidPacketWord: a non-binary digit, or a word whose length is not p
    """
    word = tuple(word)
    if len(word) != p:
        raise InvalidPacketWord(word, p)
    m = 2 ** p * n
    for j, digit in enumerate(word):
        if digit not in (0, 1):
            raise InvalidPacketWord(word, p)
        m += digit * 2 ** j
    return m


@dataclass(frozen=True)
class CoefficientMap:
    """
    <e_j | S_{i_p}^* ... S_{i_1}^* e_k> for every binary word of length p

    :param p: word length
    :param k: source translation
    :param sequences: word -> S_{i_p}^* ... S_{i_1}^* e_k, words in lexicographic order
    """
    p: int
    k: int
    sequences: Dict[Digits, SparseSequence]

    def coefficient(self, word: Sequence[int], j:int) -> complex:
        return self.sequences[tuple(word)][j]

    def word_mass(self, word: Sequence[int]) -> float:
        return self.sequences[tuple(word)].norm_squared()

    def total_mass(self) -> float:
        return sum(s.norm_squared() for s in self.sequences.values())

    def entries(self) -> Iterator[Tuple[Digits, int, complex]]:
        for word, sequence in self.sequences.items():
            for j in sorted(sequence.entries):
                yield word, j, sequence.entries[j]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "k": self.k,
            "entries": [
                {"word": "".join(str(d) for d in word), "j": j, "re": float(value.real), "im": float(value.imag)}
                for word, j, value in self.entries()
            ],
        }


def expansion_coefficients(
        bank: FilterBank,
        p:int,
        k:int,
        max_depth:int=DEFAULT_MAX_DEPTH,
        prune_below:float=DEFAULT_PRUNE_BELOW) -> CoefficientMap:
    """
    Coefficients expressing 2^{p/2} phi_n(2^p t - k) in the packets phi_m(t - j)

    Every word of one level is extended by each digit, so the p levels cost 2 + 4 + ... + 2^p
    applications of S_i^*.

    :param bank: two-branch filter bank
    :type bank: FilterBank

    :param p: word length, at most max_depth
    :type p: int

    :param k: translation of the source packet
    :type k: int

    :param prune_below: coefficients of smaller magnitude are dropped
    :type prune_below: float

    :raises PacketDepthExceeded: p > max_depth
    :raises UnsupportedBranching: N != 2

    :rtype: CoefficientMap
    """
    if bank.n_branches != 2:
        raise UnsupportedBranching(bank.n_branches, "expansion_coefficients")
    if p < 0 or p > max_depth:
        raise PacketDepthExceeded(p, max_depth)

    register_event("wavelet_packets", "expansion_coefficients", f"Started p={p} k={k}")
    level: Dict[Digits, SparseSequence] = {(): SparseSequence.basis(k)}
    for _ in range(p):
        level = {
            word + (digit,): apply_S_star(bank.branch(digit), sequence).pruned(prune_below)
            for word, sequence in level.items()
            for digit in (0, 1)
        }
    register_event("wavelet_packets", "expansion_coefficients", f"Finished p={p} k={k}")
    return CoefficientMap(p, k, level)


@dataclass(frozen=True)
class MarginalDistribution:
    """
    Distribution of the packet index m when phi_n(2^p t - k) is expanded at level p

    Only m in [2^p n, 2^p (n+1)) can carry mass; masses[m - 2^p n] is mu_{e_k} of the
    dyadic interval whose address is the word leading to m.
    """
    p: int
    n: int
    k: int
    masses: List[float]

    def packets(self) -> Iterator[Tuple[int, float]]:
        for offset, mass in enumerate(self.masses):
            yield 2 ** self.p * self.n + offset, mass

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "marginal": [{"m": m, "mass": mass} for m, mass in self.packets()],
        }


def marginal_distribution(
        bank: FilterBank,
        p:int,
        n:int,
        k:int,
        max_depth:int=DEFAULT_MAX_DEPTH) -> MarginalDistribution:
    coefficients = expansion_coefficients(bank, p, k, max_depth)
    masses = [0.0] * 2 ** p
    for word, sequence in coefficients.sequences.items():
        masses[packet_index(p, n, word) - 2 ** p * n] = sequence.norm_squared()
    return MarginalDistribution(p, n, k, masses)


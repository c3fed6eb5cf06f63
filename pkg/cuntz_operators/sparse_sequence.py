from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from cuntz_operators.operator_exceptions import InvalidSequence


@dataclass(frozen=True)
class SparseSequence:
    """
    Finitely supported sequence sum_n xi_n e_n of l2(Z); unlisted indices are zero

    :param entries: map from index n to the complex value xi_n
    :type entries: Mapping[int, complex]
    """
    entries: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for n, value in self.entries.items():
            if int(n) != n:
                raise InvalidSequence(f"index {n} is not an integer")
            value = complex(value)
            if not np.isfinite(value):
                raise InvalidSequence(f"entry at {n} is not finite")
            if value != 0:
                cleaned[int(n)] = value
        object.__setattr__(self, "entries", MappingProxyType(cleaned))

    @classmethod
    def basis(cls, n:int) -> "SparseSequence":
        return cls({n: 1.0})

    @classmethod
    def from_window(cls, indices: Iterable[int], values: Iterable[complex]) -> "SparseSequence":
        return cls(dict(zip(indices, values)))

    def __getitem__(self, n:int) -> complex:
        return self.entries.get(n, 0j)

    def __add__(self, other: "SparseSequence") -> "SparseSequence":
        merged: Dict[int, complex] = dict(self.entries)
        for n, value in other.entries.items():
            merged[n] = merged.get(n, 0j) + value
        return SparseSequence(merged)

    def __sub__(self, other: "SparseSequence") -> "SparseSequence":
        return self + other.scaled(-1.0)

    def scaled(self, factor:complex) -> "SparseSequence":
        return SparseSequence({n: factor * v for n, v in self.entries.items()})

    def inner(self, other: "SparseSequence") -> complex:
        """
        <self|other> = sum_n conj(self_n) other_n
        """
        return sum((np.conj(v) * other[n] for n, v in self.entries.items()), 0j)

    def norm_squared(self) -> float:
        return float(sum(abs(v) ** 2 for v in self.entries.values()))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def support(self) -> Optional[Tuple[int, int]]:
        if not self.entries:
            return None
        return min(self.entries), max(self.entries)

    def pruned(self, threshold:float) -> "SparseSequence":
        return SparseSequence({n: v for n, v in self.entries.items() if abs(v) >= threshold})

    def to_vector(self, indices: Iterable[int]) -> np.ndarray:
        return np.array([self[n] for n in indices], dtype=complex)


def random_sparse_sequence(
        rng: np.random.Generator,
        low:int=-8,
        high:int=8,
        density:float=0.6) -> SparseSequence:
    """
    Random complex sequence supported in [low, high], each index kept with probability density
    """
    indices = np.arange(low, high + 1)
    kept = indices[rng.random(indices.size) < density]
    values = rng.normal(size=kept.size) + 1j * rng.normal(size=kept.size)
    return SparseSequence(dict(zip(kept.tolist(), values)))

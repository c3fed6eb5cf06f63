import json
import os
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import jsonschema
import numpy as np

from filter_bank.filter_exceptions import InvalidFilterInput, UnsupportedBranching

_SCHEMA_PATH = os.path.join(os.path.dirname(os.path.realpath(__file__)), "schemas", "filter_bank.json")


def _get_schema() -> dict:
    with open(_SCHEMA_PATH, "r") as f:
        return json.load(f)


def as_coefficients(coeffs: Sequence[complex]) -> np.ndarray:
    """
    Convert a coefficient sequence into a read-only complex array

    :raises InvalidFilterInput: empty or non-finite sequence
    """
    arr = np.array(coeffs, dtype=complex).ravel()
    if arr.size == 0:
        raise InvalidFilterInput("empty coefficient sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidFilterInput("coefficients must be finite")
    arr.setflags(write=False)
    return arr


def alternating_flip(lowpass: np.ndarray) -> np.ndarray:
    """
    High-pass partner b_k = (-1)^k conj(a_{2D-1-k}) of an even-length low-pass filter
    """
    signs = (-1.0) ** np.arange(lowpass.size)
    return signs * np.conj(lowpass[::-1])


@dataclass(frozen=True, eq=False)
class FilterBank:
    """
    Finite filter bank m_0, ..., m_{N-1}, with m_i(z) = sum_k c_k z^k for every branch

    :param n_branches: branching factor N
    :type n_branches: int

    :param branches: coefficient sequences of every branch, low-pass first
    :type branches: tuple of numpy.ndarray

    :raises InvalidFilterInput: N < 2, branch count different from N or empty branch
    """
    n_branches: int
    branches: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.n_branches < 2:
            raise InvalidFilterInput(f"branching factor must be >= 2, got {self.n_branches}")
        branches = tuple(as_coefficients(b) for b in self.branches)
        if len(branches) != self.n_branches:
            raise InvalidFilterInput(
                f"{len(branches)} branches supplied for a bank with N={self.n_branches}")
        object.__setattr__(self, "branches", branches)

    @classmethod
    def from_lowpass(cls, lowpass: Sequence[complex], n_branches:int=2) -> "FilterBank":
        """
        Build a two-branch bank from its low-pass filter, deriving m_1(z) = z^{2D-1} conj(m_0(-z))

        :param lowpass: a_0, ..., a_{2D-1}
        :type lowpass: sequence of complex

        :raises InvalidFilterInput: odd-length low-pass filter
        :raises UnsupportedBranching: N != 2 (general-N branches must be given explicitly)
        """
        if n_branches != 2:
            raise UnsupportedBranching(n_branches, "Deriving branches from the low-pass filter")
        a = as_coefficients(lowpass)
        if a.size % 2 != 0:
            raise InvalidFilterInput(f"low-pass length must be even for N=2, got {a.size}")
        return cls(2, (a, alternating_flip(a)))

    @property
    def lowpass(self) -> np.ndarray:
        return self.branches[0]

    @property
    def genus(self) -> int:
        # zero padding is kept: Haar embedded in four slots has D=2
        longest = max(b.size for b in self.branches)
        return max(1, (longest + 1) // 2)

    def branch(self, i:int) -> np.ndarray:
        if not 0 <= i < self.n_branches:
            raise InvalidFilterInput(f"branch {i} out of range for N={self.n_branches}")
        return self.branches[i]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.n_branches,
            "coeffs": [[c.real, c.imag] for c in self.lowpass],
            "branches": [[[c.real, c.imag] for c in b] for b in self.branches],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FilterBank":
        """
        Build a bank from its JSON object {"N": int, "coeffs": [[re, im], ...]}

        When "branches" is absent the bank must have N=2 and the high-pass filter is derived.

        :raises InvalidFilterInput: object does not follow the filter bank schema
        """
        try:
            jsonschema.validate(instance=data, schema=_get_schema())
        except jsonschema.ValidationError as e:
            raise InvalidFilterInput(f"filter bank JSON rejected: {e.message}")

        lowpass = [complex(re, im) for re, im in data["coeffs"]]
        if "branches" not in data:
            return cls.from_lowpass(lowpass, data["N"])

        branches = [[complex(re, im) for re, im in b] for b in data["branches"]]
        if not np.allclose(as_coefficients(branches[0]), as_coefficients(lowpass)):
            raise InvalidFilterInput("'coeffs' disagrees with the first entry of 'branches'")
        return cls(data["N"], tuple(branches))

    @classmethod
    def from_json(cls, text:str) -> "FilterBank":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidFilterInput(f"filter bank is not valid JSON: {e}")
        return cls.from_dict(data)


def highpass(bank: FilterBank) -> np.ndarray:
    """
    High-pass coefficients b_k = (-1)^k conj(a_{2D-1-k}), k = 0, ..., 2D-1

    :param bank: two-branch filter bank
    :type bank: FilterBank

    :raises UnsupportedBranching: N != 2

    :return: high-pass coefficients
    :rtype: numpy.ndarray
    """
    if bank.n_branches != 2:
        raise UnsupportedBranching(bank.n_branches, "highpass")
    return alternating_flip(bank.lowpass)

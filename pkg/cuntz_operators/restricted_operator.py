import json
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import jsonschema
import numpy as np

from cuntz_operators.isometries import apply_S_star
from cuntz_operators.operator_exceptions import InvalidSequence, WindowMismatch
from cuntz_operators.sparse_sequence import SparseSequence
from filter_bank.filter_bank import FilterBank

_SCHEMA_PATH = os.path.join(os.path.dirname(os.path.realpath(__file__)), "schemas", "restricted_operator.json")


def _get_schema() -> dict:
    with open(_SCHEMA_PATH, "r") as f:
        return json.load(f)


@dataclass(frozen=True, eq=False)
class RestrictedOperator:
    """
    Compression of a branch adjoint S_i^* to a finite span of basis vectors {e_k : low <= k <= 0}

    Vector position r stands for the basis vector e_{-r}, so e_0 is position 0.

    :param matrix: square complex matrix
    :type matrix: numpy.ndarray

    :param index_window: (low, high) basis index range represented, high = 0
    :type index_window: tuple

    :param branch: index i of the compressed adjoint S_i^*
    :type branch: int

    :param subspace: "M" or "L"
    :type subspace: str
    """
    matrix: np.ndarray
    index_window: Tuple[int, int]
    branch: int
    subspace: str

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        low, high = self.index_window
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] != high - low + 1:
            raise WindowMismatch(f"Matrix of shape {matrix.shape}", self.index_window)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def indices(self) -> List[int]:
        return [-r for r in range(self.dimension)]

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def vector_of(self, xi: SparseSequence) -> np.ndarray:
        """
        Coordinates of a sequence supported in the window

        :raises WindowMismatch: support leaves the window
        """
        support = xi.support()
        low, high = self.index_window
        if support is not None and (support[0] < low or support[1] > high):
            raise WindowMismatch(f"Sequence supported on {support}", self.index_window)
        return xi.to_vector(self.indices)

    def sequence_of(self, vector: np.ndarray) -> SparseSequence:
        return SparseSequence.from_window(self.indices, vector)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subspace": self.subspace,
            "branch": self.branch,
            "index_window": list(self.index_window),
            "rows": [[[v.real, v.imag] for v in row] for row in self.matrix],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RestrictedOperator":
        try:
            jsonschema.validate(instance=data, schema=_get_schema())
        except jsonschema.ValidationError as e:
            raise InvalidSequence(f"restricted operator JSON rejected: {e.message}")
        rows = [[complex(re, im) for re, im in row] for row in data["rows"]]
        return cls(np.array(rows), tuple(data["index_window"]), data["branch"], data["subspace"])


def _compress(bank: FilterBank, branch:int, dimension:int) -> np.ndarray:
    # (row r, col c) <-> (n = -r, k = -c): entry conj(b_{k - N n}) = conj(b_{N r - c})
    coeffs = bank.branch(branch)
    matrix = np.zeros((dimension, dimension), dtype=complex)
    for r in range(dimension):
        for c in range(dimension):
            j = bank.n_branches * r - c
            if 0 <= j < coeffs.size:
                matrix[r, c] = np.conj(coeffs[j])
    return matrix


def restrict_to_M(bank: FilterBank, branch:int) -> RestrictedOperator:
    """
    F_i = S_i^* restricted to M = span{e_k : -(2D-2) <= k <= 0}

    :param bank: filter bank of genus D
    :type bank: FilterBank

    :param branch: branch index i
    :type branch: int

    :return: (2D-1) x (2D-1) matrix with the index window
    :rtype: RestrictedOperator
    """
    dimension = 2 * bank.genus - 1
    return RestrictedOperator(_compress(bank, branch, dimension), (-(dimension - 1), 0), branch, "M")


def restrict_to_L(bank: FilterBank, branch:int) -> RestrictedOperator:
    """
    S_i^* restricted to L = span{e_k : -(2D-1) <= k <= 0}

    :param bank: filter bank of genus D
    :type bank: FilterBank

    :param branch: branch index i
    :type branch: int

    :return: 2D x 2D matrix with the index window
    :rtype: RestrictedOperator
    """
    dimension = 2 * bank.genus
    return RestrictedOperator(_compress(bank, branch, dimension), (-(dimension - 1), 0), branch, "L")


def restricted_operators(bank: FilterBank, subspace:str="M") -> List[RestrictedOperator]:
    restrict = restrict_to_M if subspace == "M" else restrict_to_L
    return [restrict(bank, i) for i in range(bank.n_branches)]


def absorption_depth(bank: FilterBank, n:int, max_iter:int, branch:int=0) -> Optional[int]:
    """
    Smallest k <= max_iter with support(S^{*k} e_n) inside L, or None when not reached

    :param bank: filter bank of genus D
    :type bank: FilterBank

    :param n: starting basis index
    :type n: int

    :param max_iter: largest number of applications tried (>= 1)
    :type max_iter: int

    :raises InvalidSequence: max_iter < 1
    """
    if max_iter < 1:
        raise InvalidSequence(f"max_iter must be >= 1, got {max_iter}")
    low = -(2 * bank.genus - 1)
    coeffs = bank.branch(branch)
    xi = SparseSequence.basis(n)
    for k in range(max_iter + 1):
        support = xi.support()
        if support is None or (support[0] >= low and support[1] <= 0):
            return k
        if k < max_iter:
            xi = apply_S_star(coeffs, xi, bank.n_branches)
    return None

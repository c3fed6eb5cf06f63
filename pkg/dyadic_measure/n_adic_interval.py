from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from dyadic_measure.measure_exceptions import DigitOutOfRange


@dataclass(frozen=True)
class NAdicInterval:
    """
    [x, x + N^{-k}) with x = sum_j i_j N^{-j}; i_1 is the most significant digit

    :param base: N >= 2
    :type base: int

    :param digits: (i_1, ..., i_k), 0 <= i_j < N
    :type digits: tuple of int

    :raises DigitOutOfRange: a digit outside 0..N-1, or N < 2
    """
    base: int
    digits: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.base < 2:
            raise DigitOutOfRange(0, self.base)
        digits = tuple(int(d) for d in self.digits)
        for d in digits:
            if not 0 <= d < self.base:
                raise DigitOutOfRange(d, self.base)
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_string(cls, word:str, base:int=2) -> "NAdicInterval":
        """
        Parse a digit string written most significant first, e.g. "0110"
        """
        digits = []
        for c in word.strip():
            if not c.isdigit() or int(c) >= base:
                raise DigitOutOfRange(c, base)
            digits.append(int(c))
        return cls(base, tuple(digits))

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def left_endpoint_exact(self) -> Fraction:
        x = Fraction(0)
        for j, d in enumerate(self.digits, start=1):
            x += Fraction(d, self.base ** j)
        return x

    @property
    def left_endpoint(self) -> float:
        return float(self.left_endpoint_exact)

    @property
    def length_exact(self) -> Fraction:
        return Fraction(1, self.base ** self.depth)

    @property
    def length(self) -> float:
        return float(self.length_exact)

    @property
    def index(self) -> int:
        """
        Position of the word among all words of its depth in lexicographic order
        """
        value = 0
        for d in self.digits:
            value = value * self.base + d
        return value

    def children(self) -> List["NAdicInterval"]:
        return [NAdicInterval(self.base, self.digits + (d,)) for d in range(self.base)]

    def parent(self) -> "NAdicInterval":
        return NAdicInterval(self.base, self.digits[:-1])

    def count(self, digit:int) -> int:
        return self.digits.count(digit)

    def to_string(self) -> str:
        return "".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return self.to_string()


def word_of_index(index:int, depth:int, base:int) -> Tuple[int, ...]:
    digits = []
    for _ in range(depth):
        index, d = divmod(index, base)
        digits.append(d)
    return tuple(reversed(digits))


def as_interval(word, base:int) -> NAdicInterval:
    if isinstance(word, NAdicInterval):
        return word
    if isinstance(word, str):
        return NAdicInterval.from_string(word, base)
    return NAdicInterval(base, tuple(word))

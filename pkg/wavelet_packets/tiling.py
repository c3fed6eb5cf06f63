from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from wavelet_packets.packet_exceptions import HorizonCrossed, InvalidHorizon, InvalidTilingPair

DEFAULT_HORIZON = 2 ** 16

Pair = Tuple[int, int]


def _is_power_of_two(value:int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def house(pair: Pair) -> Tuple[int, int]:
    """
    [2^p n, 2^p (n+1)) as a (start, stop) pair of integers
    """
    p, n = pair
    return 2 ** p * n, 2 ** p * (n + 1)


@dataclass(frozen=True)
class Tiling:
    """
    Collection of (p, n) pairs, each standing for the integers [2^p n, 2^p (n+1)), checked up to a horizon H

    Pairs are kept as a sequence so a repeated pair shows up as an overlap.

    :raises InvalidHorizon: H is not a power of 2
    :raises InvalidTilingPair: negative p or n
    """
    pairs: Tuple[Pair, ...]
    horizon: int = DEFAULT_HORIZON

    def __post_init__(self):
        if not _is_power_of_two(self.horizon):
            raise InvalidHorizon(self.horizon)
        pairs = []
        for pair in self.pairs:
            p, n = (int(v) for v in pair)
            if p < 0 or n < 0:
                raise InvalidTilingPair(pair, "p and n must be nonnegative")
            pairs.append((p, n))
        object.__setattr__(self, "pairs", tuple(pairs))

    def to_string(self) -> str:
        return ",".join(f"{p}:{n}" for p, n in self.pairs)


@dataclass(frozen=True)
class TilingVerdict:
    """
    Result of a tiling check; on failure, the smallest integer below the horizon that is
    covered zero times (gap) or more than once (overlap)
    """
    valid: bool
    horizon: int
    violation: Optional[str] = None
    integer: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "horizon": self.horizon,
            "violation": self.violation,
            "integer": self.integer,
        }

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return f"invalid: {self.violation} at {self.integer}"


def parse_pairs(text:str) -> Tuple[Pair, ...]:
    """
    Parse "p:n,p:n,..." into pairs

    :raises InvalidTilingPair: malformed item
    """
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 2:
            raise InvalidTilingPair(item, "expected p:n")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidTilingPair(item, "p and n must be integers")
    return tuple(pairs)


def coverage(tiling: Tiling) -> np.ndarray:
    """
    Number of listed intervals containing each integer of [0, H)

    :raises HorizonCrossed: an interval starts below H and ends above it
    """
    counts = np.zeros(tiling.horizon, dtype=np.int64)
    for pair in tiling.pairs:
        start, stop = house(pair)
        if start >= tiling.horizon:
            continue
        if stop > tiling.horizon:
            raise HorizonCrossed(pair, tiling.horizon)
        counts[start:stop] += 1
    return counts


def validate_tiling(tiling: Tiling) -> TilingVerdict:
    """
    Check that the intervals of the tiling cover [0, H) exactly once

    :param tiling: pairs and horizon
    :type tiling: Tiling

    :raises HorizonCrossed: an interval crosses H

    :return: valid verdict, or the first gap/overlap integer
    :rtype: TilingVerdict
    """
    counts = coverage(tiling)
    bad = np.flatnonzero(counts != 1)
    if bad.size == 0:
        return TilingVerdict(True, tiling.horizon)
    first = int(bad[0])
    violation = "gap" if counts[first] == 0 else "overlap"
    return TilingVerdict(False, tiling.horizon, violation, first)


def refine_tiling(tiling: Tiling, pair: Pair) -> Tiling:
    """
    Replace (p, n) by its two halves (p-1, 2n) and (p-1, 2n+1), which cover the same integers

    :raises InvalidTilingPair: pair not in the tiling, or p = 0
    """
    pair = (int(pair[0]), int(pair[1]))
    if pair not in tiling.pairs:
        raise InvalidTilingPair(pair, "not part of the tiling")
    p, n = pair
    if p == 0:
        raise InvalidTilingPair(pair, "a singleton cannot be refined")
    position = tiling.pairs.index(pair)
    pairs = tiling.pairs[:position] + ((p - 1, 2 * n), (p - 1, 2 * n + 1)) + tiling.pairs[position + 1:]
    return Tiling(pairs, tiling.horizon)


def classic_tiling(horizon:int=DEFAULT_HORIZON) -> Tiling:
    """
    {0} followed by the octaves [2^p, 2^{p+1}) up to the horizon
    """
    if not _is_power_of_two(horizon):
        raise InvalidHorizon(horizon)
    levels = horizon.bit_length() - 1
    return Tiling(((0, 0),) + tuple((p, 1) for p in range(levels)), horizon)


def singleton_tiling(horizon:int=DEFAULT_HORIZON) -> Tiling:
    if not _is_power_of_two(horizon):
        raise InvalidHorizon(horizon)
    return Tiling(tuple((0, n) for n in range(horizon)), horizon)


def table_one_tiling(horizon:int=256) -> Tiling:
    """
    (2, 0..3) followed by (p, 1..3) for p = 4, 6, 8, ... up to the horizon

    :raises InvalidHorizon: horizon is not a power of 4 of at least 16
    """
    if not _is_power_of_two(horizon) or horizon < 16 or (horizon.bit_length() - 1) % 2 != 0:
        raise InvalidHorizon(horizon, "must be a power of 4 of at least 16")
    pairs = [(2, n) for n in range(4)]
    p = 4
    while 2 ** (p + 2) <= horizon:
        pairs.extend((p, n) for n in (1, 2, 3))
        p += 2
    return Tiling(tuple(pairs), horizon)


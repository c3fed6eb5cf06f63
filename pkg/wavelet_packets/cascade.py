import time as tm
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Tuple

import numpy as np

from analysis_events.event_register import register_event
from filter_bank.filter_bank import FilterBank
from filter_bank.filter_exceptions import UnsupportedBranching
from wavelet_packets.packet_exceptions import InvalidPacketIndex, InvalidResolution, IterationsExceeded

DEFAULT_MAX_ITERATIONS = 20


@dataclass(frozen=True, eq=False)
class CascadeSamples:
    """
    Samples of an approximation of phi_n at x = j / resolution on [0, support)
    """
    n: int
    iterations: int
    resolution: int
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.values.size) / self.resolution

    @property
    def support(self) -> int:
        return self.values.size // self.resolution

    def integral(self) -> complex:
        return self.values.sum() / self.resolution

    def inner(self, other: "CascadeSamples") -> complex:
        """
        Riemann-sum approximation of <self|other> on the common grid
        """
        if other.resolution != self.resolution or other.values.size != self.values.size:
            raise InvalidResolution(other.resolution)
        return np.vdot(self.values, other.values) / self.resolution

    def rows(self) -> Iterator[Tuple[float, float]]:
        for x, value in zip(self.x, self.values):
            yield float(x), float(np.real(value))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "iterations": self.iterations,
            "resolution": self.resolution,
            "samples": [{"x": x, "value": value} for x, value in self.rows()],
        }


def two_scale_step(coeffs: np.ndarray, phi: np.ndarray, resolution:int) -> np.ndarray:
    """
    psi(x) = sqrt2 sum_k c_k phi(2x - k), both functions sampled on the same grid

    phi is taken to vanish off the grid.
    """
    size = phi.size
    j = np.arange(size)
    out = np.zeros(size, dtype=complex)
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        source = 2 * j - k * resolution
        inside = (source >= 0) & (source < size)
        out[inside] += c * phi[source[inside]]
    return np.sqrt(2.0) * out


def cascade(
        bank: FilterBank,
        n:int,
        iterations:int,
        resolution:int,
        max_iterations:int=DEFAULT_MAX_ITERATIONS) -> CascadeSamples:
    """
    Approximate the packet function phi_n by the cascade algorithm

    phi_0 is approximated by iterating the low-pass two-scale map on the box 1_[0,1);
    the binary digits of n, most significant first, then pick the low-pass (0) or
    high-pass (1) map for each further step.

    :param bank: two-branch filter bank
    :type bank: FilterBank

    :param n: packet index >= 0
    :type n: int

    :param iterations: low-pass iterations applied to the box
    :type iterations: int

    :param resolution: samples per unit interval, a power of 2
    :type resolution: int

    :raises InvalidResolution: resolution is not a positive power of 2
    :raises IterationsExceeded: iterations outside 0..max_iterations
    :raises InvalidPacketIndex: n < 0
    :raises UnsupportedBranching: N != 2

    :rtype: CascadeSamples
    """
    if bank.n_branches != 2:
        raise UnsupportedBranching(bank.n_branches, "cascade")
    if resolution < 1 or resolution & (resolution - 1) != 0:
        raise InvalidResolution(resolution)
    if iterations < 0 or iterations > max_iterations:
        raise IterationsExceeded(iterations, max_iterations)
    if n < 0:
        raise InvalidPacketIndex(n)

    startTime = tm.process_time_ns()
    register_event("wavelet_packets", "cascade", f"Started n={n} iterations={iterations}")
    support = max(2 * bank.genus - 1, 1)
    phi = np.zeros(support * resolution, dtype=complex)
    phi[:resolution] = 1.0
    for _ in range(iterations):
        phi = two_scale_step(bank.lowpass, phi, resolution)

    if n > 0:
        for bit in bin(n)[2:]:
            phi = two_scale_step(bank.branch(int(bit)), phi, resolution)

    if all(np.all(np.isreal(b)) for b in bank.branches):
        phi = phi.real
    register_event("wavelet_packets", "cascade", f"Finished n={n} iterations={iterations}")
    register_event("wavelet_packets", "cascade_time", f"{tm.process_time_ns()-startTime}")
    return CascadeSamples(n, iterations, resolution, phi)

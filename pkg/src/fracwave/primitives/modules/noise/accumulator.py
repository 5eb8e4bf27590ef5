from typing import Literal, Optional

import numpy as np

from fracwave.core.models import NoiseParams, SpectralField, TimeGrid
from fracwave.core.protocols import ConvolutionProtocol

__all__ = [
    "ConvolutionAccumulator",
    "absorb_step",
    "low_order_convolution",
    "high_order_convolution",
    "velocity_convolution",
    "direct_convolution",
]


class ConvolutionAccumulator(ConvolutionProtocol):
    """Running sums that evaluate the stochastic convolution approximations in O(M) per step.

    For every mode j it keeps

        SC_j = sum_k cos(w_j t_k) s_j D_k     SS_j = sum_k sin(w_j t_k) s_j D_k
        WC_j = sum_k cos(w_j t_k) s_j I_k     WS_j = sum_k sin(w_j t_k) s_j I_k

    and recovers the kernels at t_{n+1} through the angle addition formulas.
    """

    def __init__(self, params: NoiseParams, grid: TimeGrid, with_weighted: bool = False):
        self.params = params
        self.grid = grid
        self.with_weighted = with_weighted
        self.reset()

    def reset(self) -> None:
        m = self.params.mode_count
        self.sc = np.zeros(m)
        self.ss = np.zeros(m)
        self.wc = np.zeros(m)
        self.ws = np.zeros(m)
        self.last_step = -1

    def absorb_step(self, k: int, increments: np.ndarray, weighted: Optional[np.ndarray] = None) -> None:
        """Add the terms of sub-interval k.

        Raises:
            ValueError: If k is not the next step, or weighted integrals are missing or unexpected
        """
        if k != self.last_step + 1:
            raise ValueError(f"Expected step {self.last_step + 1}, got {k}")
        if k >= self.grid.steps:
            raise ValueError(f"Step {k} is past the end of the {self.grid.steps}-step grid")
        if self.with_weighted and weighted is None:
            raise ValueError("This accumulator tracks weighted integrals; I_k is required")
        phase = self.params.omegas * self.grid.time(k)
        cos, sin = np.cos(phase), np.sin(phase)
        scaled = self.params.sigma * increments
        self.sc += cos * scaled
        self.ss += sin * scaled
        if self.with_weighted:
            scaled_weighted = self.params.sigma * weighted
            self.wc += cos * scaled_weighted
            self.ws += sin * scaled_weighted
        self.last_step = k

    def _phase(self, time: float) -> tuple[np.ndarray, np.ndarray]:
        phase = self.params.omegas * time
        return np.cos(phase), np.sin(phase)

    def low_order(self, time: float) -> np.ndarray:
        cos, sin = self._phase(time)
        return (sin * self.sc - cos * self.ss) / self.params.omegas

    def high_order(self, time: float) -> np.ndarray:
        if not self.with_weighted:
            raise ValueError("The corrected convolution needs weighted integrals; noise is increments-only")
        cos, sin = self._phase(time)
        return (sin * self.sc - cos * self.ss) / self.params.omegas - (cos * self.wc + sin * self.ws)

    def velocity(self, time: float) -> np.ndarray:
        cos, sin = self._phase(time)
        return cos * self.sc + sin * self.ss


def absorb_step(acc: ConvolutionAccumulator, k: int, increments: np.ndarray,
                weighted: Optional[np.ndarray] = None) -> ConvolutionAccumulator:
    acc.absorb_step(k, increments, weighted)
    return acc


def low_order_convolution(acc: ConvolutionAccumulator, time: float) -> SpectralField:
    """sigma_j / omega_j sum_k sin(omega_j (t - t_k)) D_k."""
    return SpectralField(coeffs=acc.low_order(time))


def high_order_convolution(acc: ConvolutionAccumulator, time: float) -> SpectralField:
    """sigma_j sum_k [sin(omega_j (t - t_k)) D_k / omega_j - cos(omega_j (t - t_k)) I_k]."""
    return SpectralField(coeffs=acc.high_order(time))


def velocity_convolution(acc: ConvolutionAccumulator, time: float) -> SpectralField:
    """sigma_j sum_k cos(omega_j (t - t_k)) D_k."""
    return SpectralField(coeffs=acc.velocity(time))


def direct_convolution(
        params: NoiseParams,
        grid: TimeGrid,
        increments: np.ndarray,
        n: int,
        kind: Literal["low", "high", "velocity"] = "low",
        weighted: Optional[np.ndarray] = None,
) -> np.ndarray:
    """The same sums evaluated term by term over sub-intervals 0..n, as a reference."""
    time = grid.time(n + 1)
    result = np.zeros(params.mode_count)
    for k in range(n + 1):
        lag = params.omegas * (time - grid.time(k))
        if kind == "velocity":
            result += np.cos(lag) * params.sigma * increments[k]
            continue
        result += np.sin(lag) / params.omegas * params.sigma * increments[k]
        if kind == "high":
            result -= np.cos(lag) * params.sigma * weighted[k]
    return result

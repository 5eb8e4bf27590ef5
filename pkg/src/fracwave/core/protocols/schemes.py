from typing import Optional, Protocol, runtime_checkable

import numpy as np

from ..models import SpectralField, StepperState

__all__ = ["TimeSteppingProtocol", "ConvolutionProtocol"]


@runtime_checkable
class ConvolutionProtocol(Protocol):
    """Protocol for running approximations of the stochastic convolution"""

    def absorb_step(self, k: int, increments: np.ndarray, weighted: np.ndarray | None = None) -> None:
        """Add the contribution of sub-interval [t_k, t_{k+1}]"""
        ...

    def low_order(self, time: float) -> np.ndarray:
        """Left-frozen sine kernel approximation at `time`"""
        ...

    def high_order(self, time: float) -> np.ndarray:
        """Corrected approximation using the weighted integrals at `time`"""
        ...


@runtime_checkable
class TimeSteppingProtocol(Protocol):
    """Protocol for time-stepping schemes on the transformed (z, z') system"""

    name: str
    requires_weighted: bool

    def step(self, state: StepperState) -> StepperState:
        """Advance the state from t_n to t_{n+1}

        Args:
            state: State at step n, with f_curr holding the coefficients of f(u_n)

        Returns:
            State at step n + 1; its nonlinearity slots are left for the caller to refresh
        """
        ...

    def reconstruct(self, state: StepperState, accumulator: Optional[ConvolutionProtocol], time: float) -> SpectralField:
        """u at `time` from z and the matching stochastic convolution; u = z when `accumulator` is None"""
        ...

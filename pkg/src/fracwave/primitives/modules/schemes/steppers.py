from typing import Optional

import numpy as np

from fracwave.core.config import ModelConfig
from fracwave.core.models import SpectralField, StepperState
from fracwave.core.protocols import ConvolutionProtocol, TimeSteppingProtocol

__all__ = [
    "LowOrderScheme",
    "HighOrderScheme",
    "SCHEMES",
    "build_scheme",
    "low_order_step",
    "high_order_step",
    "reconstruct_u_low",
    "reconstruct_u_high",
]


def low_order_step(state: StepperState, tau: float, mu: np.ndarray) -> StepperState:
    """Rectangle rule step, solved in closed form per mode.

    zdot_{n+1} = (zdot_n - tau mu z_n + tau f_n) / (1 + tau^2 mu), z_{n+1} = z_n + tau zdot_{n+1}.
    """
    zdot = (state.zdot - tau * mu * state.z + tau * state.f_curr) / (1 + tau * tau * mu)
    z = state.z + tau * zdot
    return StepperState(step=state.step + 1, z=z, zdot=zdot, f_prev=state.f_prev, f_curr=state.f_curr)


def high_order_step(state: StepperState, tau: float, mu: np.ndarray) -> StepperState:
    """Trapezoidal step with the Adams-type extrapolation g = f_n + (f_n - f_{n-1}) / 2."""
    g = state.f_curr + 0.5 * (state.f_curr - state.f_prev)
    quarter = 0.25 * tau * tau * mu
    zdot = (state.zdot * (1 - quarter) - tau * mu * state.z + tau * g) / (1 + quarter)
    z = state.z + 0.5 * tau * (zdot + state.zdot)
    return StepperState(step=state.step + 1, z=z, zdot=zdot, f_prev=state.f_prev, f_curr=state.f_curr)


class LowOrderScheme(TimeSteppingProtocol):
    """Rectangle rule scheme, paired with the left-frozen stochastic convolution."""

    name = "low"
    requires_weighted = False

    def __init__(self, tau: float, mu: np.ndarray):
        self.tau = tau
        self.mu = mu

    def step(self, state: StepperState) -> StepperState:
        return low_order_step(state, self.tau, self.mu)

    def reconstruct(self, state: StepperState, accumulator: Optional[ConvolutionProtocol], time: float) -> SpectralField:
        return reconstruct_u_low(state, accumulator, time)


class HighOrderScheme(TimeSteppingProtocol):
    """Trapezoidal scheme, paired with the corrected stochastic convolution."""

    name = "high"
    requires_weighted = True

    def __init__(self, tau: float, mu: np.ndarray):
        self.tau = tau
        self.mu = mu

    def step(self, state: StepperState) -> StepperState:
        return high_order_step(state, self.tau, self.mu)

    def reconstruct(self, state: StepperState, accumulator: Optional[ConvolutionProtocol], time: float) -> SpectralField:
        return reconstruct_u_high(state, accumulator, time)


SCHEMES: dict[str, type[TimeSteppingProtocol]] = {
    "low": LowOrderScheme,
    "high": HighOrderScheme,
}


def build_scheme(config: ModelConfig, mu: np.ndarray) -> TimeSteppingProtocol:
    try:
        scheme_class = SCHEMES[config.scheme]
    except KeyError:
        raise ValueError(f"Unknown scheme {config.scheme!r}; expected one of {sorted(SCHEMES)}")
    return scheme_class(config.tau, mu)


def reconstruct_u_low(state: StepperState, conv: Optional[ConvolutionProtocol], time: float) -> SpectralField:
    """u_{n+1} = z_{n+1} + low order convolution at t_{n+1}; u = z without noise."""
    if conv is None:
        return SpectralField(coeffs=state.z.copy())
    return SpectralField(coeffs=state.z + conv.low_order(time))


def reconstruct_u_high(state: StepperState, conv: Optional[ConvolutionProtocol], time: float) -> SpectralField:
    """u_{n+1} = z_{n+1} + corrected convolution at t_{n+1}; u = z without noise."""
    if conv is None:
        return SpectralField(coeffs=state.z.copy())
    return SpectralField(coeffs=state.z + conv.high_order(time))

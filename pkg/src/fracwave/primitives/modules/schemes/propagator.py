import numpy as np

from fracwave.core.config import ModelConfig
from fracwave.core.models import SpectralField
from fracwave.primitives.modules.spectral import build_eigenbasis

__all__ = ["exact_deterministic"]


def exact_deterministic(config: ModelConfig, time: float) -> tuple[SpectralField, SpectralField]:
    """Exact (u, v) at `time` for zero noise and f = 0: the wave group applied to (u0, v0).

    Raises:
        ValueError: If the configuration has a nonzero nonlinearity
    """
    if config.nonlinearity != "zero":
        raise ValueError(f"The exact propagator needs f = zero, got {config.nonlinearity!r}")
    omegas = build_eigenbasis(config.modes).eigenvalues ** (config.alpha / 2)
    u0, v0 = config.initial_fields()
    cos, sin = np.cos(omegas * time), np.sin(omegas * time)
    u = cos * u0.coeffs + sin / omegas * v0.coeffs
    v = -omegas * sin * u0.coeffs + cos * v0.coeffs
    return SpectralField(coeffs=u), SpectralField(coeffs=v)

import csv
import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from fracwave.core.config import ModelConfig
from fracwave.core.models import ModeNoise, SpectralField, StepperState, TimeGrid
from fracwave.primitives.modules.noise import ConvolutionAccumulator, build_noise_params
from fracwave.primitives.modules.spectral import SineTransform, build_eigenbasis, fractional_eigenvalues

from .nonlinearity import evaluate_nonlinearity, resolve_nonlinearity
from .steppers import build_scheme

__all__ = ["Trajectory", "run", "write_trajectory"]

logger = logging.getLogger(__name__)


class Trajectory(BaseModel):
    """Result of one scheme run: terminal values and, on request, the whole path."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: ModelConfig
    terminal: SpectralField
    terminal_z: np.ndarray
    terminal_zdot: np.ndarray
    terminal_velocity: Optional[SpectralField] = None
    times: Optional[np.ndarray] = None
    history: Optional[np.ndarray] = None


def _check_noise(config: ModelConfig, noise: ModeNoise, requires_weighted: bool):
    if noise.grid.steps != config.steps or not np.isclose(noise.grid.horizon, config.horizon):
        raise ValueError(
            f"Noise lives on a {noise.grid.steps}-step grid over [0, {noise.grid.horizon}], "
            f"run needs {config.steps} steps over [0, {config.horizon}]"
        )
    if noise.increments.ndim != 2 or noise.mode_count != config.modes:
        raise ValueError(
            f"Noise must hold one column per mode ({config.modes}), got shape {noise.increments.shape}"
        )
    if requires_weighted and not noise.has_weighted:
        raise ValueError("The high order scheme needs weighted integrals I_k; noise is increments-only")


def run(config: ModelConfig, noise: Optional[ModeNoise] = None, record: bool = False) -> Trajectory:
    """Integrate the semi-discrete system from t = 0 to the horizon.

    The deterministic part z is advanced by the configured scheme; the stochastic convolution
    is added back after every step, and f is always evaluated on the reconstructed u.

    Args:
        config: Model and discretization parameters
        noise: Unscaled fBm increments for every mode, shape (N, M). Required unless
            `config.noise` is False
        record: Keep u at every node in `history`, shape (N + 1, M)

    Returns:
        The trajectory

    Raises:
        ValueError: If the noise does not match the configuration
    """
    basis = build_eigenbasis(config.modes)
    mu = fractional_eigenvalues(basis, 2 * config.alpha)
    grid = TimeGrid(horizon=config.horizon, steps=config.steps)
    transform = SineTransform(config.modes, config.collocation_size)
    nonlinearity = resolve_nonlinearity(config.nonlinearity)
    scheme = build_scheme(config, mu)

    accumulator = None
    if config.noise:
        if noise is None:
            raise ValueError("A noise path is required unless the configuration disables noise")
        _check_noise(config, noise, scheme.requires_weighted)
        accumulator = ConvolutionAccumulator(
            build_noise_params(basis, config.alpha, config.rho), grid, with_weighted=scheme.requires_weighted
        )

    u0, v0 = config.initial_fields()
    f0 = evaluate_nonlinearity(u0, config, transform, nonlinearity).coeffs
    state = StepperState.initial(u0.coeffs.copy(), v0.coeffs.copy(), f0)
    u = u0.coeffs
    history = None
    if record:
        history = np.empty((config.steps + 1, config.modes))
        history[0] = u

    for n in range(config.steps):
        state = scheme.step(state)
        time = grid.time(n + 1)
        if accumulator is not None:
            accumulator.absorb_step(
                n,
                noise.increments[n],
                noise.weighted[n] if scheme.requires_weighted else None,
            )
        if not (np.all(np.isfinite(state.z)) and np.all(np.isfinite(state.zdot))):
            raise FloatingPointError(f"Non-finite coefficients after step {n + 1} of {config.steps}")
        u_field = scheme.reconstruct(state, accumulator, time)
        u = u_field.coeffs
        f_next = evaluate_nonlinearity(u_field, config, transform, nonlinearity).coeffs
        state = state.model_copy(update={"f_prev": state.f_curr, "f_curr": f_next})
        if history is not None:
            history[n + 1] = u

    velocity = state.zdot
    if accumulator is not None:
        velocity = state.zdot + accumulator.velocity(grid.horizon)
    logger.debug(f"Ran {scheme.name} scheme: {config.steps} steps, {config.modes} modes, alpha={config.alpha}")
    return Trajectory(
        config=config,
        terminal=SpectralField(coeffs=u),
        terminal_z=state.z,
        terminal_zdot=state.zdot,
        terminal_velocity=SpectralField(coeffs=velocity),
        times=grid.nodes if record else None,
        history=history,
    )


def write_trajectory(trajectory: Trajectory, path: str | Path, modes: Optional[Sequence[int]] = None) -> Path:
    """Write a recorded trajectory as CSV with columns step, t, l2_norm and u_j for the chosen modes.

    Args:
        trajectory: A trajectory run with `record=True`
        path: Target file
        modes: 1-based modes to include; all modes when omitted

    Raises:
        ValueError: If the trajectory has no recorded history or a mode is out of range
    """
    if trajectory.history is None:
        raise ValueError("Trajectory was run without record=True; nothing to write")
    mode_count = trajectory.history.shape[1]
    modes = list(modes) if modes is not None else list(range(1, mode_count + 1))
    for mode in modes:
        if not 1 <= mode <= mode_count:
            raise ValueError(f"Mode {mode} is outside 1..{mode_count}")
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["step", "t", "l2_norm"] + [f"u_{mode}" for mode in modes])
        for step, (time, row) in enumerate(zip(trajectory.times, trajectory.history)):
            writer.writerow(
                [step, repr(float(time)), repr(float(np.sqrt(np.dot(row, row))))]
                + [repr(float(row[mode - 1])) for mode in modes]
            )
    logger.debug(f"Wrote {len(trajectory.history)} trajectory rows to {path}")
    return path

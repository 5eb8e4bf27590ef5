import csv
import logging
from pathlib import Path

import numpy as np

from fracwave.core.models import ModeNoise, NoiseCovariance

__all__ = [
    "mode_stream",
    "draw",
    "sample_mode_noise",
    "sample_noise_bundle",
    "coarsen",
    "coarsening_operator",
    "write_noise_path",
]

logger = logging.getLogger(__name__)


def mode_stream(seed: int, sample_index: int, mode_index: int) -> np.random.Generator:
    """Independent generator for one (sample, mode) pair derived from a named seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(sample_index, mode_index)))


def draw(cov: NoiseCovariance, rng: np.random.Generator, size: int) -> np.ndarray:
    """`size` joint draws of the stacked (D, I) vector, one per row."""
    normals = rng.standard_normal((cov.order, size))
    return (cov.cholesky_factor @ normals).T


def _split(cov: NoiseCovariance, stacked: np.ndarray) -> ModeNoise:
    steps = cov.grid.steps
    return ModeNoise(
        grid=cov.grid,
        hurst=cov.hurst,
        increments=stacked[:steps],
        weighted=stacked[steps:] if cov.with_weighted else None,
    )


def sample_mode_noise(cov: NoiseCovariance, rng: np.random.Generator) -> ModeNoise:
    """One mode's path: the Cholesky factor applied to a standard normal vector from `rng`."""
    return _split(cov, cov.cholesky_factor @ rng.standard_normal(cov.order))


def sample_noise_bundle(cov: NoiseCovariance, seed: int, sample_index: int, mode_count: int) -> ModeNoise:
    """Independent paths for modes 1..M of one Monte Carlo sample, stacked column-wise."""
    normals = np.empty((cov.order, mode_count))
    for j in range(mode_count):
        normals[:, j] = mode_stream(seed, sample_index, j).standard_normal(cov.order)
    return _split(cov, cov.cholesky_factor @ normals)


def coarsen(noise: ModeNoise, factor: int) -> ModeNoise:
    """Aggregate a path to the grid with `factor` times larger steps.

    D'_k = sum_m D_{ak+m} and I'_k = sum_m [I_{ak+m} + m tau_f D_{ak+m}], m = 0..a-1,
    which holds pathwise.

    Raises:
        ValueError: If the factor is below 2 or does not divide the number of steps
    """
    steps = noise.grid.steps
    if factor < 2 or steps % factor != 0:
        raise ValueError(f"Coarsening factor {factor} must be >= 2 and divide {steps} steps")
    shape = (steps // factor, factor) + noise.increments.shape[1:]
    fine_increments = noise.increments.reshape(shape)
    increments = fine_increments.sum(axis=1)
    weighted = None
    if noise.weighted is not None:
        offsets = (np.arange(factor) * noise.grid.tau).reshape((1, factor) + (1,) * (len(shape) - 2))
        weighted = (noise.weighted.reshape(shape) + offsets * fine_increments).sum(axis=1)
    return ModeNoise(
        grid=noise.grid.coarsen(factor),
        hurst=noise.hurst,
        increments=increments,
        weighted=weighted,
    )


def coarsening_operator(steps: int, factor: int, fine_tau: float, with_weighted: bool = True) -> np.ndarray:
    """Matrix P mapping the fine stacked vector (D, I) to the coarse one, so C_coarse = P C_fine P^T."""
    if factor < 2 or steps % factor != 0:
        raise ValueError(f"Coarsening factor {factor} must be >= 2 and divide {steps} steps")
    coarse = steps // factor
    fine_index = np.arange(steps)
    block = np.zeros((coarse, steps))
    block[fine_index // factor, fine_index] = 1.0
    if not with_weighted:
        return block
    shift = np.zeros((coarse, steps))
    shift[fine_index // factor, fine_index] = (fine_index % factor) * fine_tau
    return np.block([[block, np.zeros((coarse, steps))], [shift, block]])


def write_noise_path(noise: ModeNoise, path: str | Path, mode: int = 1) -> Path:
    """Dump one mode's path as CSV with columns k, t_k, D_k, I_k."""
    path = Path(path)
    increments = noise.increments if noise.increments.ndim == 1 else noise.increments[:, mode - 1]
    weighted = None
    if noise.weighted is not None:
        weighted = noise.weighted if noise.weighted.ndim == 1 else noise.weighted[:, mode - 1]
    nodes = noise.grid.nodes
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["k", "t_k", "D_k", "I_k"])
        for k in range(noise.grid.steps):
            writer.writerow([k, repr(float(nodes[k])), repr(float(increments[k])),
                             "" if weighted is None else repr(float(weighted[k]))])
    logger.debug(f"Wrote noise path for mode {mode} to {path}")
    return path

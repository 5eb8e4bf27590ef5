import logging
from typing import Callable, Mapping, Optional

import numpy as np
from scipy.fft import dst

from fracwave.core.errors import ConstraintViolationError
from fracwave.core.models import SpectralField

__all__ = [
    "SineTransform",
    "collocation_grid",
    "evaluate",
    "project",
    "project_function",
    "project_sine_series",
]

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)


def collocation_grid(size: int) -> np.ndarray:
    """Interior points x_m = m / Q, m = 1..Q-1."""
    return np.arange(1, size, dtype=float) / size


class SineTransform:
    """Transforms between sine coefficients and values on the uniform interior grid.

    With Q = `collocation` the grid is x_m = m / Q and both directions are type-I discrete
    sine transforms of length Q - 1:

        u(x_m)  = sum_j u_j sqrt(2) sin(j pi x_m)
        u_j    ~= (1 / Q) sum_m u(x_m) sqrt(2) sin(j pi x_m)

    `project(evaluate(u)) == u` holds up to rounding whenever M <= Q - 1.
    """

    def __init__(self, mode_count: int, collocation: Optional[int] = None):
        """
        Args:
            mode_count: Number of sine modes M
            collocation: Grid size Q (default 4 M); must be at least 2 M

        Raises:
            ConstraintViolationError: If Q < 2 M
        """
        self.mode_count = mode_count
        self.collocation = collocation if collocation is not None else 4 * mode_count
        if self.collocation < 2 * mode_count:
            raise ConstraintViolationError(
                f"Collocation size {self.collocation} is below 2 * modes = {2 * mode_count}; "
                "the nonlinearity would alias"
            )
        self.points = collocation_grid(self.collocation)

    def evaluate(self, coeffs: np.ndarray) -> np.ndarray:
        padded = np.zeros(self.collocation - 1)
        padded[:self.mode_count] = coeffs
        return dst(padded, type=1) / SQRT2

    def project(self, values: np.ndarray) -> np.ndarray:
        if values.shape != (self.collocation - 1,):
            raise ValueError(
                f"Expected {self.collocation - 1} grid values, got shape {values.shape}"
            )
        return dst(values, type=1)[:self.mode_count] / (SQRT2 * self.collocation)

    def l2_norm(self, values: np.ndarray) -> float:
        """Rectangle-rule L2 norm of grid values (exact for trigonometric polynomials of degree < Q)."""
        return float(np.sqrt(np.sum(values ** 2) / self.collocation))


def evaluate(field: SpectralField, points: np.ndarray) -> np.ndarray:
    """Values u(x) = sum_j u_j sqrt(2) sin(j pi x) at arbitrary points in (0, 1)."""
    points = np.asarray(points, dtype=float)
    j = np.arange(1, field.mode_count + 1)
    return SQRT2 * np.sin(np.pi * np.outer(points, j)) @ field.coeffs


def project(values: np.ndarray, mode_count: int) -> SpectralField:
    """Sine coefficients of grid values given on x_m = m / Q, m = 1..Q-1.

    Raises:
        ConstraintViolationError: If Q < 2 M
    """
    values = np.asarray(values, dtype=float)
    transform = SineTransform(mode_count, collocation=values.shape[0] + 1)
    return SpectralField(coeffs=transform.project(values))


def project_function(func: Callable[[np.ndarray], np.ndarray], mode_count: int,
                     collocation: Optional[int] = None) -> SpectralField:
    """Sample `func` on the collocation grid and project it."""
    transform = SineTransform(mode_count, collocation)
    return SpectralField(coeffs=transform.project(np.asarray(func(transform.points), dtype=float)))


def project_sine_series(amplitudes: Mapping[int, float], mode_count: int) -> SpectralField:
    """Exact coefficients of sum_j a_j sin(j pi x): u_j = a_j / sqrt(2). No quadrature involved."""
    coeffs = np.zeros(mode_count)
    for mode, amplitude in amplitudes.items():
        if mode > mode_count:
            logger.warning(f"Dropping sine mode {mode}; only {mode_count} modes are resolved")
            continue
        coeffs[mode - 1] = amplitude / SQRT2
    return SpectralField(coeffs=coeffs)

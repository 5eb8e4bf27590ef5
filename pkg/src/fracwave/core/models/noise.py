from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .fields import frozen_array
from .grid import TimeGrid

__all__ = ["ModeNoise", "NoiseCovariance", "NoiseParams"]


class ModeNoise(BaseModel):
    """fBm increments D_k and weighted integrals I_k = int_{t_k}^{t_{k+1}} (s - t_k) dB_H(s).

    Arrays have the time index on axis 0. A single mode is stored with shape (N,); a
    bundle of independent modes with shape (N, M), column j holding mode j + 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: TimeGrid
    hurst: float
    increments: np.ndarray
    weighted: Optional[np.ndarray] = None

    @field_validator("increments", "weighted", mode="before")
    @classmethod
    def _freeze(cls, value, info):
        if value is None:
            return None
        return frozen_array(value, info.field_name)

    @model_validator(mode="after")
    def _check_shapes(self):
        if self.increments.shape[0] != self.grid.steps:
            raise ValueError(
                f"increments cover {self.increments.shape[0]} steps, grid has {self.grid.steps}"
            )
        if self.weighted is not None and self.weighted.shape != self.increments.shape:
            raise ValueError(
                f"weighted shape {self.weighted.shape} differs from increments shape {self.increments.shape}"
            )
        return self

    @property
    def has_weighted(self) -> bool:
        return self.weighted is not None

    @property
    def mode_count(self) -> int:
        return 1 if self.increments.ndim == 1 else self.increments.shape[1]


class NoiseCovariance(BaseModel):
    """Covariance of the stacked vector (D_0..D_{N-1}, I_0..I_{N-1}) and its Cholesky factor."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: TimeGrid
    hurst: float
    with_weighted: bool
    matrix: np.ndarray
    cholesky_factor: np.ndarray
    jitter: float = 0.0

    @field_validator("matrix", "cholesky_factor", mode="before")
    @classmethod
    def _freeze(cls, value, info):
        return frozen_array(value, info.field_name)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


class NoiseParams(BaseModel):
    """Mode weights sigma_j = lambda_j^(-rho) and frequencies omega_j = lambda_j^(alpha/2)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rho: float = Field(ge=0)
    alpha: float = Field(gt=0, le=1)
    sigma: np.ndarray
    omegas: np.ndarray

    @field_validator("sigma", "omegas", mode="before")
    @classmethod
    def _freeze(cls, value, info):
        return frozen_array(value, info.field_name)

    @model_validator(mode="after")
    def _check_monotone(self):
        if np.any(self.sigma <= 0) or np.any(np.diff(self.sigma) > 0):
            raise ValueError("sigma must be positive and non-increasing")
        if np.any(np.diff(self.omegas) <= 0):
            raise ValueError("omegas must be increasing")
        return self

    @property
    def mode_count(self) -> int:
        return self.sigma.shape[0]

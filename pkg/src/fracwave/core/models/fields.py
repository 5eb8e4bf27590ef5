import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

__all__ = ["EigenBasis", "SpectralField", "frozen_array"]


def frozen_array(value, name: str) -> np.ndarray:
    """Copy `value` into a read-only float64 array, rejecting non-finite entries."""
    array = np.array(value, dtype=float)
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} contains non-finite entries")
    array.flags.writeable = False
    return array


class EigenBasis(BaseModel):
    """Dirichlet eigenpairs of -Laplace on (0, 1), truncated at `mode_count` modes.

    The eigenfunctions are phi_j(x) = sqrt(2) sin(j pi x), so the basis is orthonormal
    in L2(0, 1) and lambda_j = (j pi)^2.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mode_count: int
    eigenvalues: np.ndarray

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def _freeze_eigenvalues(cls, value):
        return frozen_array(value, "eigenvalues")

    @model_validator(mode="after")
    def _check_spectrum(self):
        if self.mode_count < 1:
            raise ValueError(f"mode_count must be at least 1, got {self.mode_count}")
        if self.eigenvalues.shape != (self.mode_count,):
            raise ValueError(
                f"Expected {self.mode_count} eigenvalues, got shape {self.eigenvalues.shape}"
            )
        if np.any(self.eigenvalues <= 0) or np.any(np.diff(self.eigenvalues) <= 0):
            raise ValueError("eigenvalues must be positive and strictly increasing")
        return self

    @property
    def indices(self) -> np.ndarray:
        return np.arange(1, self.mode_count + 1)


class SpectralField(BaseModel):
    """Coefficients of a function against the orthonormal sine eigenbasis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: np.ndarray

    @field_validator("coeffs", mode="before")
    @classmethod
    def _freeze_coeffs(cls, value):
        array = frozen_array(value, "coeffs")
        if array.ndim != 1:
            raise ValueError(f"coeffs must be one-dimensional, got shape {array.shape}")
        return array

    @classmethod
    def zeros(cls, mode_count: int) -> "SpectralField":
        return cls(coeffs=np.zeros(mode_count))

    @classmethod
    def unit(cls, mode: int, mode_count: int, amplitude: float = 1.0) -> "SpectralField":
        """Field with a single nonzero coefficient on 1-based `mode`."""
        coeffs = np.zeros(mode_count)
        coeffs[mode - 1] = amplitude
        return cls(coeffs=coeffs)

    @property
    def mode_count(self) -> int:
        return self.coeffs.shape[0]

    def l2_norm(self) -> float:
        """L2 norm via Parseval."""
        return float(np.sqrt(np.dot(self.coeffs, self.coeffs)))

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(coeffs=self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(coeffs=self.coeffs - other.coeffs)

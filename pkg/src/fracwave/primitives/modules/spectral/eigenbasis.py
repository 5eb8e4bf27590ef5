import numpy as np

from fracwave.core.errors import ConstraintViolationError
from fracwave.core.models import EigenBasis, SpectralField

__all__ = ["build_eigenbasis", "apply_fractional", "sobolev_norm", "fractional_eigenvalues"]


def build_eigenbasis(mode_count: int) -> EigenBasis:
    """Dirichlet eigenbasis of -Laplace on (0, 1) with lambda_j = (j pi)^2, j = 1..M.

    Raises:
        ConstraintViolationError: If fewer than one mode is requested
    """
    if mode_count < 1:
        raise ConstraintViolationError(f"The eigenbasis needs at least one mode, got {mode_count}")
    j = np.arange(1, mode_count + 1, dtype=float)
    return EigenBasis(mode_count=mode_count, eigenvalues=(j * np.pi) ** 2)


def fractional_eigenvalues(basis: EigenBasis, power: float) -> np.ndarray:
    """lambda_j^(power / 2), the symbol of A^(power / 2)."""
    return basis.eigenvalues ** (power / 2)


def _check_length(field: SpectralField, basis: EigenBasis):
    if field.mode_count != basis.mode_count:
        raise ValueError(
            f"Field has {field.mode_count} coefficients but the basis has {basis.mode_count} modes"
        )


def apply_fractional(field: SpectralField, basis: EigenBasis, power: float) -> SpectralField:
    """Apply A^(power / 2): coefficient j is scaled by lambda_j^(power / 2). `power` may be negative."""
    _check_length(field, basis)
    return SpectralField(coeffs=fractional_eigenvalues(basis, power) * field.coeffs)


def sobolev_norm(field: SpectralField, basis: EigenBasis, nu: float) -> float:
    """The H^nu norm (sum_j lambda_j^nu u_j^2)^(1/2)."""
    _check_length(field, basis)
    return float(np.sqrt(np.sum(basis.eigenvalues ** nu * field.coeffs ** 2)))

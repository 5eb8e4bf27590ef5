from fracwave.core.models import EigenBasis, NoiseParams

__all__ = ["build_noise_params"]


def build_noise_params(basis: EigenBasis, alpha: float, rho: float) -> NoiseParams:
    """sigma_j = lambda_j^(-rho), omega_j = lambda_j^(alpha / 2)."""
    return NoiseParams(
        rho=rho,
        alpha=alpha,
        sigma=basis.eigenvalues ** (-rho),
        omegas=basis.eigenvalues ** (alpha / 2),
    )

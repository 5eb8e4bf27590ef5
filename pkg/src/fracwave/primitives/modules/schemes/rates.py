from typing import Optional

from fracwave.core.models import PredictedRates

__all__ = ["gamma_param"]


def gamma_param(alpha: float, rho: float, epsilon: float, hurst: Optional[float] = None,
                dimension: int = 1) -> PredictedRates:
    """Regularity index gamma = alpha + 2 rho - (d + epsilon) / 2 and the predicted strong rates.

    The low order scheme is expected to converge with min(gamma / alpha, 1), the high order
    scheme with 1 + min((gamma - alpha) / alpha, H). The latter needs `hurst` and is only
    backed by theory when gamma > alpha.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    gamma = alpha + 2 * rho - (dimension + epsilon) / 2
    high = None
    if hurst is not None:
        high = 1 + min((gamma - alpha) / alpha, hurst)
    return PredictedRates(gamma=gamma, low_order_rate=min(gamma / alpha, 1.0), high_order_rate=high)

from typing import Optional, Protocol, runtime_checkable

import numpy as np

__all__ = ["NonlinearityProtocol"]


@runtime_checkable
class NonlinearityProtocol(Protocol):
    """Protocol for the pointwise source term f(u) of the wave equation"""

    name: str
    lipschitz: Optional[float]

    def __call__(self, values: np.ndarray) -> np.ndarray:
        """Apply f pointwise to function values on the collocation grid

        Args:
            values: Function values u(x_m)

        Returns:
            Values f(u(x_m)), same shape as the input
        """
        ...

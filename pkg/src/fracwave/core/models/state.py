import numpy as np
from pydantic import BaseModel, ConfigDict

__all__ = ["StepperState"]


class StepperState(BaseModel):
    """Coefficients of z(t_n), z'(t_n) and of the nonlinearity at steps n - 1 and n."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    step: int
    z: np.ndarray
    zdot: np.ndarray
    f_prev: np.ndarray
    f_curr: np.ndarray

    @classmethod
    def initial(cls, z0: np.ndarray, zdot0: np.ndarray, f0: np.ndarray) -> "StepperState":
        return cls(step=0, z=z0, zdot=zdot0, f_prev=f0, f_curr=f0)

    def energy(self, mu: np.ndarray) -> np.ndarray:
        """Per-mode discrete energy zdot^2 + mu z^2."""
        return self.zdot ** 2 + mu * self.z ** 2

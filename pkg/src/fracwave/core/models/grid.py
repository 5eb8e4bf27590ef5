import numpy as np
from pydantic import BaseModel, ConfigDict, Field

__all__ = ["TimeGrid"]


class TimeGrid(BaseModel):
    """Uniform time grid t_k = k * tau on [0, horizon] with `steps` sub-intervals."""

    model_config = ConfigDict(frozen=True)

    horizon: float = Field(gt=0)
    steps: int = Field(ge=1)

    @property
    def tau(self) -> float:
        return self.horizon / self.steps

    @property
    def nodes(self) -> np.ndarray:
        """All nodes t_0..t_N; the last one is exactly the horizon."""
        nodes = np.arange(self.steps + 1, dtype=float) * self.tau
        nodes[-1] = self.horizon
        return nodes

    def time(self, k: int) -> float:
        if k == self.steps:
            return self.horizon
        return k * self.tau

    def coarsen(self, factor: int) -> "TimeGrid":
        if factor < 1 or self.steps % factor != 0:
            raise ValueError(f"Coarsening factor {factor} does not divide {self.steps} steps")
        return TimeGrid(horizon=self.horizon, steps=self.steps // factor)

from typing import Any, Optional

from pydantic import BaseModel

__all__ = ["PredictedRates", "RateRow", "RateReport", "MomentCheck", "NoiseStatsReport"]


class PredictedRates(BaseModel):
    """Regularity index gamma and the strong rates the two schemes are expected to reach."""

    gamma: float
    low_order_rate: float
    high_order_rate: Optional[float] = None


class RateRow(BaseModel):
    steps: int
    tau: float
    error: float
    stderr: float = 0.0
    order: Optional[float] = None


class RateReport(BaseModel):
    """Mean-squared errors per resolution and observed orders between adjacent resolutions."""

    alpha: float
    hurst: float
    rho: float
    modes: int
    samples: int
    seed: Optional[int] = None
    scheme: str
    refinement: int
    rows: list[RateRow]
    fitted_slope: Optional[float] = None
    predicted: Optional[PredictedRates] = None
    wall_time: float = 0.0
    metadata: dict[str, Any] = {}

    @property
    def errors(self) -> list[float]:
        return [row.error for row in self.rows]

    @property
    def orders(self) -> list[float]:
        return [row.order for row in self.rows if row.order is not None]


class MomentCheck(BaseModel):
    """A sample moment compared with its exact value."""

    name: str
    expected: float
    estimate: float
    stderr: float

    @property
    def z_score(self) -> float:
        if self.stderr == 0:
            return 0.0 if self.estimate == self.expected else float("inf")
        return (self.estimate - self.expected) / self.stderr

    def within(self, tolerance: float = 3.0) -> bool:
        return abs(self.z_score) <= tolerance


class NoiseStatsReport(BaseModel):
    """Sampler validation: selected moments, the worst entrywise deviation and the coarsening residual."""

    hurst: float
    steps: int
    tau: float
    draws: int
    seed: int
    checks: list[MomentCheck]
    max_abs_z_score: float
    coarsening_residual: float
    jitter: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.within() for check in self.checks) and self.coarsening_residual <= 1e-10

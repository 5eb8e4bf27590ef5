import logging
import math
import time
from typing import Optional, Sequence

import numpy as np

from fracwave.core.config import ExperimentPlan, ModelConfig
from fracwave.core.models import RateReport, RateRow, SpectralField, TimeGrid
from fracwave.core.study import ConvergenceStudy
from fracwave.primitives.modules.fbm import assemble_covariance, coarsen, sample_noise_bundle
from fracwave.primitives.modules.schemes import exact_deterministic, run

__all__ = [
    "estimate_order",
    "mean_squared_l2",
    "error_stderr",
    "fitted_slope",
    "terminal_values",
    "sample_squared_differences",
    "build_rate_report",
    "run_convergence_study",
    "deterministic_order_study",
]

logger = logging.getLogger(__name__)


def estimate_order(e_coarse: float, e_fine: float, refinement: int) -> float:
    """Observed order ln(e_coarse / e_fine) / ln a between two resolutions a apart.

    Raises:
        ValueError: If an error is not positive or a < 2
    """
    if e_coarse <= 0 or e_fine <= 0:
        raise ValueError(f"Errors must be positive to estimate an order, got {e_coarse} and {e_fine}")
    if refinement < 2:
        raise ValueError(f"Refinement factor must be at least 2, got {refinement}")
    return math.log(e_coarse / e_fine) / math.log(refinement)


def _root_mean(squared: Sequence[float]) -> float:
    if not squared:
        raise ValueError("At least one sample is required")
    return math.sqrt(math.fsum(squared) / len(squared))


def mean_squared_l2(differences: Sequence[SpectralField | np.ndarray]) -> float:
    """sqrt(mean_s sum_j (du_j^(s))^2), summed in sample order with compensated summation."""
    squared = []
    for diff in differences:
        coeffs = diff.coeffs if isinstance(diff, SpectralField) else np.asarray(diff, dtype=float)
        squared.append(math.fsum(coeffs * coeffs))
    return _root_mean(squared)


def error_stderr(squared: Sequence[float]) -> float:
    """Standard error of sqrt(mean(d)) by the delta method: sd(d) / (2 sqrt(S) sqrt(mean(d)))."""
    count = len(squared)
    if count < 2 or min(squared) == max(squared):
        return 0.0
    mean = math.fsum(squared) / count
    variance = math.fsum((d - mean) ** 2 for d in squared) / (count - 1)
    return math.sqrt(variance / count) / (2 * math.sqrt(mean))


def fitted_slope(taus: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Least squares slope of ln(error) against ln(tau); None with fewer than two positive errors."""
    points = [(t, e) for t, e in zip(taus, errors) if e > 0]
    if len(points) < 2:
        return None
    x = np.log([t for t, _ in points])
    y = np.log([e for _, e in points])
    return float(np.polyfit(x, y, 1)[0])


def terminal_values(plan: ExperimentPlan, sample_index: int) -> dict[int, np.ndarray]:
    """Terminal coefficients of u for the finest grid and every planned resolution of one sample.

    A single noise path is drawn on the finest grid a * max(N) and coarsened step by step, so
    all resolutions of the sample see the same Brownian path.
    """
    config = plan.config
    steps = plan.finest_steps
    noise = None
    if config.noise:
        covariance = assemble_covariance(
            TimeGrid(horizon=config.horizon, steps=steps),
            config.hurst,
            with_weighted=config.scheme == "high",
        )
        noise = sample_noise_bundle(covariance, plan.seed, sample_index, config.modes)

    terminals: dict[int, np.ndarray] = {}
    coarsest = min(plan.resolutions)
    while True:
        terminals[steps] = run(plan.config_for(steps), noise).terminal.coeffs
        if steps == coarsest:
            return terminals
        steps //= plan.refinement
        if noise is not None:
            noise = coarsen(noise, plan.refinement)


def sample_squared_differences(plan: ExperimentPlan, sample_index: int) -> list[float]:
    """||u_T^(aN) - u_T^(N)||^2 for every resolution N of the plan, for one sample."""
    terminals = terminal_values(plan, sample_index)
    squared = []
    for steps in plan.resolutions:
        diff = terminals[plan.refinement * steps] - terminals[steps]
        squared.append(math.fsum(diff * diff))
    return squared


def build_rate_report(plan: ExperimentPlan, per_sample: Sequence[Sequence[float]], wall_time: float = 0.0) -> RateReport:
    """Aggregate per-sample squared differences into errors, standard errors and orders.

    The order of a row compares it with the next coarser row.
    """
    rows: list[RateRow] = []
    for i, steps in enumerate(plan.resolutions):
        squared = [sample[i] for sample in per_sample]
        error = _root_mean(squared)
        order = None
        if rows and rows[-1].error > 0 and error > 0:
            order = estimate_order(rows[-1].error, error, plan.refinement)
        rows.append(RateRow(
            steps=steps,
            tau=plan.config.horizon / steps,
            error=error,
            stderr=error_stderr(squared),
            order=order,
        ))
    return RateReport(
        alpha=plan.config.alpha,
        hurst=plan.config.hurst,
        rho=plan.config.rho,
        modes=plan.config.modes,
        samples=plan.samples,
        seed=plan.seed,
        scheme=plan.scheme,
        refinement=plan.refinement,
        rows=rows,
        fitted_slope=fitted_slope([r.tau for r in rows], [r.error for r in rows]),
        predicted=plan.config.predicted_rates(),
        wall_time=wall_time,
        metadata={
            "horizon": plan.config.horizon,
            "nonlinearity": plan.config.nonlinearity,
            "epsilon": plan.config.epsilon,
            "collocation": plan.config.collocation_size,
            "noise": plan.config.noise,
            "workers": plan.workers,
        },
    )


def run_convergence_study(plan: ExperimentPlan, study: Optional[ConvergenceStudy] = None) -> RateReport:
    """Strong convergence study with common random numbers across resolutions.

    Args:
        plan: The experiment plan
        study: Orchestrator carrying event listeners; a fresh one is used when omitted

    Returns:
        Errors e_N = (mean ||u_T^(aN) - u_T^(N)||^2)^(1/2) and observed orders

    Raises:
        StudyError: If any sample fails
    """
    plan.config.check_regime()
    study = study or ConvergenceStudy()
    started = time.perf_counter()
    per_sample = study.map_samples(plan, sample_squared_differences)
    report = build_rate_report(plan, per_sample, wall_time=time.perf_counter() - started)
    logger.info(
        f"alpha={plan.config.alpha} H={plan.config.hurst}: errors "
        f"{[f'{e:.3e}' for e in report.errors]}, orders {[f'{o:.3f}' for o in report.orders]}"
    )
    return report


def deterministic_order_study(config: ModelConfig, resolutions: Sequence[int], refinement: int = 2) -> RateReport:
    """Errors of the scheme against the exact wave propagator, for zero noise and f = 0.

    Raises:
        ValueError: If the configuration has noise or a nonzero nonlinearity
    """
    if config.noise or config.nonlinearity != "zero":
        raise ValueError("The deterministic study needs noise disabled and f = zero")
    exact, _ = exact_deterministic(config, config.horizon)
    started = time.perf_counter()
    rows: list[RateRow] = []
    for steps in resolutions:
        error = (run(config.model_copy(update={"steps": steps})).terminal - exact).l2_norm()
        order = None
        if rows and rows[-1].error > 0 and error > 0:
            order = estimate_order(rows[-1].error, error, refinement)
        rows.append(RateRow(steps=steps, tau=config.horizon / steps, error=error, order=order))
    return RateReport(
        alpha=config.alpha,
        hurst=config.hurst,
        rho=config.rho,
        modes=config.modes,
        samples=1,
        scheme=config.scheme,
        refinement=refinement,
        rows=rows,
        fitted_slope=fitted_slope([r.tau for r in rows], [r.error for r in rows]),
        wall_time=time.perf_counter() - started,
        metadata={"horizon": config.horizon, "reference": "exact propagator"},
    )

import logging

import numpy as np

from fracwave.core.models import MomentCheck, NoiseStatsReport, TimeGrid
from fracwave.primitives.modules.fbm import assemble_covariance, coarsening_operator, draw, mode_stream

__all__ = ["moment_check", "coarsening_residual", "sampler_statistics"]

logger = logging.getLogger(__name__)


def moment_check(name: str, products: np.ndarray, expected: float) -> MomentCheck:
    """Compare the mean of i.i.d. products X_a X_b with its exact value E[X_a X_b]."""
    return MomentCheck(
        name=name,
        expected=float(expected),
        estimate=float(np.mean(products)),
        stderr=float(np.std(products, ddof=1) / np.sqrt(products.shape[0])),
    )


def coarsening_residual(fine_steps: int, factor: int, hurst: float, fine_tau: float = 1.0) -> float:
    """max |P C_fine P^T - C_coarse|, relative to the largest coarse entry."""
    fine = assemble_covariance(TimeGrid(horizon=fine_steps * fine_tau, steps=fine_steps), hurst)
    coarse = assemble_covariance(fine.grid.coarsen(factor), hurst)
    operator = coarsening_operator(fine_steps, factor, fine.grid.tau, with_weighted=True)
    pushed = operator @ fine.matrix @ operator.T
    return float(np.max(np.abs(pushed - coarse.matrix)) / np.max(np.abs(coarse.matrix)))


def sampler_statistics(hurst: float, draws: int = 10_000, steps: int = 4, seed: int = 0,
                       factor: int = 2) -> NoiseStatsReport:
    """Validate the joint (D, I) sampler at unit step size.

    Checks Var(D_0) = 1 and Cov(D_0, I_0) = 1/2 against the sample moments, records the largest
    entrywise z-score over the whole covariance, and the coarsening identity residual.
    """
    grid = TimeGrid(horizon=float(steps), steps=steps)
    covariance = assemble_covariance(grid, hurst, with_weighted=True)
    samples = draw(covariance, mode_stream(seed, 0, 0), draws)
    increments, weighted = samples[:, :steps], samples[:, steps:]

    checks = [
        moment_check("var_D0", increments[:, 0] ** 2, 1.0),
        moment_check("cov_D0_I0", increments[:, 0] * weighted[:, 0], 0.5),
        moment_check("var_I0", weighted[:, 0] ** 2, covariance.matrix[steps, steps]),
    ]
    if steps > 1:
        checks.append(moment_check("cov_D0_D1", increments[:, 0] * increments[:, 1], covariance.matrix[0, 1]))

    products = samples[:, :, None] * samples[:, None, :]
    estimate = products.mean(axis=0)
    stderr = products.std(axis=0, ddof=1) / np.sqrt(draws)
    z_scores = np.abs(estimate - covariance.matrix) / stderr

    residual = coarsening_residual(factor * steps, factor, hurst)
    report = NoiseStatsReport(
        hurst=hurst,
        steps=steps,
        tau=grid.tau,
        draws=draws,
        seed=seed,
        checks=checks,
        max_abs_z_score=float(np.max(z_scores)),
        coarsening_residual=residual,
        jitter=covariance.jitter,
    )
    for check in checks:
        logger.info(f"{check.name}: {check.estimate:.5f} vs {check.expected:.5f} (z = {check.z_score:+.2f})")
    logger.info(f"Coarsening residual {residual:.3e}, largest |z| {report.max_abs_z_score:.2f}")
    return report

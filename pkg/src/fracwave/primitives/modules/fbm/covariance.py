"""Covariances of fBm increments D_k and weighted integrals I_k on a uniform grid.

All three laws are stationary in the lag m = k - j, and self-similarity reduces them
to a unit step: Cov(D_j, D_k) = tau^(2H) c_DD(m), Cov(D_j, I_k) = tau^(2H+1) c_DI(m),
Cov(I_j, I_k) = tau^(2H+2) c_II(m). The unit-step functions integrate the kernel
H(2H-1)|s-r|^(2H-2) with its inner integral done analytically. For |m| <= 1 the kernel
is singular inside the cells and the outer integral is done analytically as well; for
|m| >= 2 the integrand is smooth and Gauss-Legendre quadrature is used.
"""
import logging
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, cholesky, toeplitz

from fracwave.core.errors import ConstraintViolationError, FactorizationError
from fracwave.core.models import NoiseCovariance, TimeGrid

__all__ = [
    "check_hurst",
    "increment_covariance",
    "cross_covariance",
    "weighted_covariance",
    "unit_increment_covariance",
    "unit_cross_covariance",
    "unit_weighted_covariance",
    "assemble_covariance",
    "covariance_cache_clear",
]

logger = logging.getLogger(__name__)

GAUSS_NODES = 24
JITTER = 1e-14
MAX_JITTER_RETRIES = 3

_nodes, _weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
_S = 0.5 * (_nodes + 1.0)
_W = 0.5 * _weights


def check_hurst(hurst: float):
    if not 0.5 < hurst < 1.0:
        raise ConstraintViolationError(f"Hurst index must lie in (1/2, 1), got {hurst}")


def _psi(w, hurst):
    return np.sign(w) * np.abs(w) ** (2 * hurst - 1)


def _antiderivative(w, hurst, order):
    """Successive antiderivatives of psi(w) = sign(w)|w|^(2H-1), vanishing at w = 0."""
    w = np.asarray(w, dtype=float)
    h2 = 2 * hurst
    if order == 1:
        return np.abs(w) ** h2 / h2
    if order == 2:
        return np.sign(w) * np.abs(w) ** (h2 + 1) / (h2 * (h2 + 1))
    if order == 3:
        return np.abs(w) ** (h2 + 2) / (h2 * (h2 + 1) * (h2 + 2))
    raise ValueError(f"Unsupported antiderivative order {order}")


def unit_increment_covariance(lag, hurst: float) -> np.ndarray:
    """Cov(D_j, D_{j+m}) for tau = 1."""
    m = np.abs(np.asarray(lag, dtype=float))
    h2 = 2 * hurst
    return 0.5 * (np.abs(m + 1) ** h2 + np.abs(m - 1) ** h2 - 2 * m ** h2)


def _cross_closed(m, hurst):
    p1 = lambda w: _antiderivative(w, hurst, 1)
    p2 = lambda w: _antiderivative(w, hurst, 2)
    return hurst * (p1(m + 1) - p2(m + 1) + 2 * p2(m) - p1(m) - p2(m - 1))


def _cross_quadrature(m, hurst):
    s = _S[None, :]
    m = m[:, None]
    integrand = s * hurst * (_psi(s + m, hurst) - _psi(s + m - 1, hurst))
    return integrand @ _W


def _weighted_closed(m, hurst):
    p1 = lambda w: _antiderivative(w, hurst, 1)
    p2 = lambda w: _antiderivative(w, hurst, 2)
    p3 = lambda w: _antiderivative(w, hurst, 3)
    # int_0^1 s psi(s - c) ds and int_0^1 s Psi1(s - c) ds
    a = lambda c: p1(1 - c) - p2(1 - c) + p2(-c)
    b = lambda c: p2(1 - c) - p3(1 - c) + p3(-c)
    return hurst * (-a(m + 1) + b(m) - b(m + 1))


def _weighted_quadrature(m, hurst):
    s = _S[None, :]
    m = m[:, None]
    p1 = lambda w: _antiderivative(w, hurst, 1)
    inner = hurst * (-_psi(s - m - 1, hurst) + p1(s - m) - p1(s - m - 1))
    return (s * inner) @ _W


def _by_lag(lag, hurst, closed, quadrature) -> np.ndarray:
    m = np.atleast_1d(np.asarray(lag, dtype=float))
    out = np.empty_like(m)
    near = np.abs(m) <= 1
    if np.any(near):
        out[near] = closed(m[near], hurst)
    if np.any(~near):
        out[~near] = quadrature(m[~near], hurst)
    return out if np.ndim(lag) else out[0]


def unit_cross_covariance(lag, hurst: float) -> np.ndarray:
    """Cov(D_j, I_{j+m}) for tau = 1. Not symmetric in m."""
    return _by_lag(lag, hurst, _cross_closed, _cross_quadrature)


def unit_weighted_covariance(lag, hurst: float) -> np.ndarray:
    """Cov(I_j, I_{j+m}) for tau = 1."""
    return _by_lag(np.abs(np.asarray(lag, dtype=float)), hurst, _weighted_closed, _weighted_quadrature)


def _check_indices(j: int, k: int, grid: TimeGrid):
    for index in (j, k):
        if not 0 <= index < grid.steps:
            raise ValueError(f"Index {index} is outside 0..{grid.steps - 1}")


def increment_covariance(j: int, k: int, grid: TimeGrid, hurst: float) -> float:
    """Cov(D_j, D_k) = 1/2 (|t_{j+1}-t_k|^2H + |t_j-t_{k+1}|^2H - |t_j-t_k|^2H - |t_{j+1}-t_{k+1}|^2H)."""
    check_hurst(hurst)
    _check_indices(j, k, grid)
    return float(grid.tau ** (2 * hurst) * unit_increment_covariance(k - j, hurst))


def cross_covariance(j: int, k: int, grid: TimeGrid, hurst: float) -> float:
    """Cov(D_j, I_k)."""
    check_hurst(hurst)
    _check_indices(j, k, grid)
    return float(grid.tau ** (2 * hurst + 1) * unit_cross_covariance(k - j, hurst))


def weighted_covariance(j: int, k: int, grid: TimeGrid, hurst: float) -> float:
    """Cov(I_j, I_k)."""
    check_hurst(hurst)
    _check_indices(j, k, grid)
    return float(grid.tau ** (2 * hurst + 2) * unit_weighted_covariance(k - j, hurst))


def _unit_matrix(steps: int, hurst: float, with_weighted: bool) -> np.ndarray:
    lags = np.arange(steps)
    dd = toeplitz(unit_increment_covariance(lags, hurst))
    if not with_weighted:
        return dd
    di = toeplitz(unit_cross_covariance(-lags, hurst), unit_cross_covariance(lags, hurst))
    ii = toeplitz(unit_weighted_covariance(lags, hurst))
    return np.block([[dd, di], [di.T, ii]])


def _factorize(matrix: np.ndarray, steps: int, horizon: float, hurst: float) -> tuple[np.ndarray, float]:
    shift = JITTER * float(np.max(np.diag(matrix)))
    jitter = 0.0
    for attempt in range(MAX_JITTER_RETRIES + 1):
        try:
            factor = cholesky(matrix + jitter * np.eye(matrix.shape[0]), lower=True)
            if attempt:
                logger.warning(f"Noise covariance needed jitter {jitter:.3e} (N={steps}, H={hurst})")
            return factor, jitter
        except LinAlgError:
            jitter += shift
    raise FactorizationError(
        f"Noise covariance is not positive definite after {MAX_JITTER_RETRIES} jitter retries "
        f"(N={steps}, T={horizon}, H={hurst})"
    )


@lru_cache(maxsize=32)
def _assemble_cached(steps: int, horizon: float, hurst: float, with_weighted: bool) -> NoiseCovariance:
    grid = TimeGrid(horizon=horizon, steps=steps)
    unit = _unit_matrix(steps, hurst, with_weighted)
    unit_factor, jitter = _factorize(unit, steps, horizon, hurst)

    # C_tau = S C_1 S with S = diag(tau^H, ..., tau^(H+1), ...), so L_tau = S L_1
    scale = np.full(unit.shape[0], grid.tau ** hurst)
    if with_weighted:
        scale[steps:] *= grid.tau
    return NoiseCovariance(
        grid=grid,
        hurst=hurst,
        with_weighted=with_weighted,
        matrix=np.outer(scale, scale) * unit,
        cholesky_factor=scale[:, None] * unit_factor,
        jitter=jitter,
    )


def assemble_covariance(grid: TimeGrid, hurst: float, with_weighted: bool = True) -> NoiseCovariance:
    """Covariance of (D_0..D_{N-1}[, I_0..I_{N-1}]) with its lower Cholesky factor.

    Results are cached per (grid, H, with_weighted); the law is the same for every mode.

    Raises:
        ConstraintViolationError: If H is not in (1/2, 1)
        FactorizationError: If the matrix cannot be factorized
    """
    check_hurst(hurst)
    logger.debug(f"Assembling noise covariance N={grid.steps}, H={hurst}, weighted={with_weighted}")
    return _assemble_cached(grid.steps, grid.horizon, hurst, with_weighted)


def covariance_cache_clear():
    _assemble_cached.cache_clear()

import csv

import numpy as np
import pytest

from fracwave.core.config import ModelConfig
from fracwave.core.models import ModeNoise, StepperState, TimeGrid
from fracwave.experiments import deterministic_order_study
from fracwave.primitives.modules.fbm import assemble_covariance, sample_noise_bundle
from fracwave.primitives.modules.schemes import (
    evaluate_nonlinearity,
    exact_deterministic,
    high_order_step,
    run,
    write_trajectory,
)
from fracwave.primitives.modules.spectral import build_eigenbasis


def _config(**kwargs):
    defaults = dict(alpha=0.6, hurst=0.8, modes=8, steps=32, nonlinearity="sin")
    return ModelConfig(**{**defaults, **kwargs})


def _noise(config, seed=0, with_weighted=None):
    with_weighted = config.scheme == "high" if with_weighted is None else with_weighted
    cov = assemble_covariance(TimeGrid(horizon=config.horizon, steps=config.steps), config.hurst, with_weighted)
    return sample_noise_bundle(cov, seed, 0, config.modes)


def test_exact_propagator_at_zero():
    config = _config(noise=False, nonlinearity="zero")
    u, v = exact_deterministic(config, 0.0)
    u0, v0 = config.initial_fields()
    np.testing.assert_array_equal(u.coeffs, u0.coeffs)
    np.testing.assert_array_equal(v.coeffs, v0.coeffs)


def test_exact_propagator_quarter_period():
    config = _config(noise=False, nonlinearity="zero", u0={1: np.sqrt(2)}, v0={})
    omega = build_eigenbasis(8).eigenvalues[0] ** 0.3
    u, v = exact_deterministic(config, np.pi / (2 * omega))
    assert np.abs(u.coeffs).max() < 1e-15
    assert v.coeffs[0] == pytest.approx(-omega)


def test_exact_propagator_conserves_energy():
    config = _config(noise=False, nonlinearity="zero")
    omegas = build_eigenbasis(8).eigenvalues ** 0.3
    energies = []
    for t in np.linspace(0, 2, 9):
        u, v = exact_deterministic(config, t)
        energies.append(v.coeffs ** 2 + omegas ** 2 * u.coeffs ** 2)
    np.testing.assert_allclose(energies, np.broadcast_to(energies[0], (9, 8)), rtol=1e-12, atol=1e-15)


def test_exact_propagator_requires_zero_nonlinearity():
    with pytest.raises(ValueError, match="f = zero"):
        exact_deterministic(_config(noise=False), 0.1)


@pytest.mark.parametrize("scheme", ["low", "high"])
def test_zero_noise_reconstruction_is_z(scheme):
    trajectory = run(_config(scheme=scheme, noise=False))
    np.testing.assert_array_equal(trajectory.terminal.coeffs, trajectory.terminal_z)
    np.testing.assert_array_equal(trajectory.terminal_velocity.coeffs, trajectory.terminal_zdot)


@pytest.mark.parametrize("scheme,expected_order", [("low", 1.0), ("high", 2.0)])
def test_deterministic_orders(scheme, expected_order):
    config = _config(scheme=scheme, noise=False, nonlinearity="zero")
    report = deterministic_order_study(config, [64, 128, 256, 512, 1024])
    for order in report.orders:
        assert order == pytest.approx(expected_order, abs=0.1)
    assert report.rows[-1].error < 1e-3


@pytest.mark.parametrize("scheme", ["low", "high"])
def test_run_is_deterministic(scheme):
    config = _config(scheme=scheme)
    noise = _noise(config, seed=3)
    first = run(config, noise, record=True)
    second = run(config, noise, record=True)
    np.testing.assert_array_equal(first.history, second.history)
    np.testing.assert_array_equal(first.terminal_velocity.coeffs, second.terminal_velocity.coeffs)


def test_first_high_order_step_uses_current_nonlinearity():
    config = _config(scheme="high", steps=1, noise=False)
    u0, v0 = config.initial_fields()
    f0 = evaluate_nonlinearity(u0, config).coeffs
    mu = build_eigenbasis(config.modes).eigenvalues ** config.alpha
    expected = high_order_step(StepperState.initial(u0.coeffs, v0.coeffs, f0), config.tau, mu)
    trajectory = run(config)
    np.testing.assert_array_equal(trajectory.terminal_z, expected.z)
    np.testing.assert_array_equal(trajectory.terminal_zdot, expected.zdot)


def test_noise_is_required_when_enabled():
    with pytest.raises(ValueError, match="noise path is required"):
        run(_config())


def test_high_order_rejects_increments_only_noise():
    config = _config(scheme="high")
    with pytest.raises(ValueError, match="increments-only"):
        run(config, _noise(config, with_weighted=False))


def test_noise_grid_must_match():
    config = _config()
    with pytest.raises(ValueError, match="grid"):
        run(config.model_copy(update={"steps": 16}), _noise(config))


def test_noise_modes_must_match():
    config = _config()
    noise = _noise(config)
    single = ModeNoise(grid=noise.grid, hurst=noise.hurst, increments=noise.increments[:, 0])
    with pytest.raises(ValueError, match="one column per mode"):
        run(config, single)


def test_solution_stays_bounded_under_refinement():
    config = _config(modes=16, nonlinearity="sin")
    means = {}
    for steps in (64, 256, 1024):
        step_config = config.model_copy(update={"steps": steps})
        norms = [run(step_config, _noise(step_config, seed=s)).terminal.l2_norm() ** 2 for s in range(10)]
        means[steps] = np.mean(norms)
    assert all(np.isfinite(v) and v < 10 * means[64] for v in means.values())


def test_write_trajectory(tmp_path):
    config = _config(steps=4, noise=False)
    trajectory = run(config, record=True)
    path = write_trajectory(trajectory, tmp_path / "trajectory.csv", modes=[2, 3])
    with path.open() as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["step", "t", "l2_norm", "u_2", "u_3"]
    assert len(rows) == 6
    assert float(rows[1][3]) == pytest.approx(0.5)
    assert float(rows[-1][1]) == config.horizon


def test_write_trajectory_requires_history(tmp_path):
    with pytest.raises(ValueError, match="record=True"):
        write_trajectory(run(_config(noise=False)), tmp_path / "t.csv")

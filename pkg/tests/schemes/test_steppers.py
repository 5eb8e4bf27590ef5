import numpy as np
import pytest

from fracwave.core.models import StepperState, TimeGrid
from fracwave.primitives.modules.noise import ConvolutionAccumulator, build_noise_params
from fracwave.primitives.modules.schemes import (
    HighOrderScheme,
    LowOrderScheme,
    high_order_step,
    low_order_step,
    reconstruct_u_high,
    reconstruct_u_low,
)
from fracwave.primitives.modules.spectral import build_eigenbasis

MU_ONE = np.array([np.pi ** 2])


def _state(z, zdot, f=None):
    z = np.atleast_1d(np.asarray(z, dtype=float))
    zdot = np.atleast_1d(np.asarray(zdot, dtype=float))
    f = np.zeros_like(z) if f is None else f
    return StepperState.initial(z, zdot, f)


def _iterate(step, state, tau, mu, steps):
    energies = [state.energy(mu)]
    for _ in range(steps):
        state = step(state, tau, mu)
        energies.append(state.energy(mu))
    return state, np.array(energies)


@pytest.mark.parametrize("step", [low_order_step, high_order_step])
def test_zero_state_stays_zero(step):
    state, _ = _iterate(step, _state(np.zeros(3), np.zeros(3)), 0.1, np.array([1.0, 2.0, 3.0]), 50)
    assert np.all(state.z == 0) and np.all(state.zdot == 0)
    assert state.step == 50


def test_low_order_single_step_by_hand():
    state = low_order_step(_state(1.0, 0.0), 0.1, MU_ONE)
    zdot = -0.1 * np.pi ** 2 / (1 + 0.01 * np.pi ** 2)
    assert state.zdot[0] == pytest.approx(zdot, rel=1e-12)
    assert state.zdot[0] == pytest.approx(-0.8983016, abs=1e-7)
    assert state.z[0] == pytest.approx(1 + 0.1 * zdot, rel=1e-12)


def test_high_order_single_step_by_hand():
    state = high_order_step(_state(1.0, 0.0), 0.1, MU_ONE)
    zdot = -0.1 * np.pi ** 2 / (1 + 0.0025 * np.pi ** 2)
    assert state.zdot[0] == pytest.approx(zdot, rel=1e-12)
    assert state.zdot[0] == pytest.approx(-0.9631946, abs=1e-7)
    assert state.z[0] == pytest.approx(1 + 0.05 * zdot, rel=1e-12)
    assert state.energy(MU_ONE)[0] == pytest.approx(np.pi ** 2, abs=1e-10)


def test_low_order_energy_non_increasing():
    mu = build_eigenbasis(8).eigenvalues ** 0.8
    rng = np.random.default_rng(0)
    _, energies = _iterate(low_order_step, _state(rng.standard_normal(8), rng.standard_normal(8)), 0.5 / 10_000, mu, 10_000)
    assert np.all(np.diff(energies, axis=0) <= 0)


def test_high_order_energy_conserved():
    mu = build_eigenbasis(8).eigenvalues ** 0.8
    rng = np.random.default_rng(1)
    _, energies = _iterate(high_order_step, _state(rng.standard_normal(8), rng.standard_normal(8)), 0.5 / 10_000, mu, 10_000)
    drift = np.abs(energies - energies[0]) / energies[0]
    assert drift.max() < 1e-9


def test_high_order_adams_correction():
    # with f_prev == f_curr the extrapolation reduces to f_n
    f = np.array([0.4])
    state = StepperState(step=0, z=np.array([0.2]), zdot=np.array([0.1]), f_prev=f, f_curr=f)
    shifted = state.model_copy(update={"f_prev": np.array([0.0])})
    base = high_order_step(state, 0.1, MU_ONE)
    corrected = high_order_step(shifted, 0.1, MU_ONE)
    quarter = 0.25 * 0.01 * np.pi ** 2
    assert corrected.zdot[0] - base.zdot[0] == pytest.approx(0.1 * 0.2 / (1 + quarter))


def test_scheme_classes():
    low = LowOrderScheme(0.1, MU_ONE)
    high = HighOrderScheme(0.1, MU_ONE)
    assert not low.requires_weighted and high.requires_weighted
    state = _state(1.0, 0.0)
    np.testing.assert_array_equal(low.step(state).z, low_order_step(state, 0.1, MU_ONE).z)
    np.testing.assert_array_equal(high.step(state).z, high_order_step(state, 0.1, MU_ONE).z)


@pytest.mark.parametrize("reconstruct", [reconstruct_u_low, reconstruct_u_high])
def test_reconstruct_without_noise_is_z(reconstruct):
    state = high_order_step(_state([1.0, 0.5], [0.0, -0.2]), 0.1, np.array([1.0, 4.0]))
    np.testing.assert_array_equal(reconstruct(state, None, 0.1).coeffs, state.z)


def test_reconstruct_single_mode_single_step_by_hand():
    params = build_noise_params(build_eigenbasis(1), alpha=1.0, rho=0.25)
    grid = TimeGrid(horizon=1.0, steps=10)
    acc = ConvolutionAccumulator(params, grid, with_weighted=True)
    acc.absorb_step(0, np.array([0.3]), np.array([0.02]))
    state = low_order_step(_state(1.0, 0.0), grid.tau, MU_ONE)
    sigma, omega, t1 = params.sigma[0], params.omegas[0], grid.time(1)

    low = reconstruct_u_low(state, acc, t1).coeffs[0]
    high = reconstruct_u_high(state, acc, t1).coeffs[0]
    assert low == pytest.approx(state.z[0] + sigma / omega * np.sin(omega * t1) * 0.3)
    assert high == pytest.approx(low - sigma * np.cos(omega * t1) * 0.02)


def test_schemes_reconstruct_with_their_convolution():
    params = build_noise_params(build_eigenbasis(3), alpha=0.8, rho=0.25)
    grid = TimeGrid(horizon=0.5, steps=4)
    acc = ConvolutionAccumulator(params, grid, with_weighted=True)
    acc.absorb_step(0, np.array([0.1, -0.2, 0.3]), np.array([0.01, 0.02, -0.01]))
    state = _state([0.2, 0.1, 0.0], [0.0, 0.0, 0.0])
    mu = np.ones(3)
    np.testing.assert_array_equal(
        LowOrderScheme(grid.tau, mu).reconstruct(state, acc, grid.time(1)).coeffs,
        reconstruct_u_low(state, acc, grid.time(1)).coeffs,
    )
    np.testing.assert_array_equal(
        HighOrderScheme(grid.tau, mu).reconstruct(state, acc, grid.time(1)).coeffs,
        reconstruct_u_high(state, acc, grid.time(1)).coeffs,
    )


def test_reconstruct_high_needs_weighted_integrals():
    params = build_noise_params(build_eigenbasis(1), alpha=1.0, rho=0.25)
    acc = ConvolutionAccumulator(params, TimeGrid(horizon=1.0, steps=10))
    acc.absorb_step(0, np.array([0.3]))
    with pytest.raises(ValueError, match="weighted integrals"):
        reconstruct_u_high(_state(1.0, 0.0), acc, 0.1)

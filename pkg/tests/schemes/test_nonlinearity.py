import numpy as np
import pytest

from fracwave.core.config import ModelConfig
from fracwave.core.models import SpectralField
from fracwave.core.protocols import NonlinearityProtocol
from fracwave.primitives.modules.schemes import evaluate_nonlinearity, resolve_nonlinearity


def damped_sine(values):
    return 0.5 * np.sin(values)


damped_sine.lipschitz = 0.5


def _config(nonlinearity="sin", modes=8):
    return ModelConfig(alpha=0.8, modes=modes, nonlinearity=nonlinearity)


def test_zero_nonlinearity():
    u = SpectralField(coeffs=np.linspace(-1, 1, 8))
    assert evaluate_nonlinearity(u, _config("zero")).l2_norm() == 0.0


def test_sine_of_zero_field():
    assert evaluate_nonlinearity(SpectralField.zeros(8), _config()).l2_norm() == 0.0


def test_sine_small_amplitude_is_linear():
    c = 1e-3
    f = evaluate_nonlinearity(SpectralField.unit(2, 8, amplitude=c), _config())
    assert f.coeffs[1] == pytest.approx(c, abs=1e-8)
    assert np.abs(np.delete(f.coeffs, 1)).max() < 1e-8


def test_sine_matches_direct_projection():
    u = SpectralField(coeffs=[0.0, 0.5, 0.25, 0.0])
    config = _config(modes=4)
    f = evaluate_nonlinearity(u, config)
    x = np.arange(1, 16) / 16
    values = np.sin(np.sqrt(2) * (0.5 * np.sin(2 * np.pi * x) + 0.25 * np.sin(3 * np.pi * x)))
    expected = [np.sum(values * np.sqrt(2) * np.sin(j * np.pi * x)) / 16 for j in range(1, 5)]
    np.testing.assert_allclose(f.coeffs, expected, atol=1e-14)


def test_builtin_nonlinearities():
    sine = resolve_nonlinearity("sin")
    assert isinstance(sine, NonlinearityProtocol)
    assert sine.lipschitz == 1.0
    zero = resolve_nonlinearity("zero")
    assert zero.is_zero
    np.testing.assert_array_equal(zero(np.ones(3)), np.zeros(3))


def test_custom_nonlinearity_with_lipschitz(caplog):
    nonlinearity = resolve_nonlinearity("tests.schemes.test_nonlinearity.damped_sine")
    assert nonlinearity.lipschitz == 0.5
    assert "Lipschitz" not in caplog.text
    u = SpectralField.unit(1, 8, amplitude=0.1)
    half = evaluate_nonlinearity(u, _config("tests.schemes.test_nonlinearity.damped_sine"))
    full = evaluate_nonlinearity(u, _config())
    np.testing.assert_allclose(half.coeffs, 0.5 * full.coeffs, atol=1e-15)


def test_custom_nonlinearity_without_lipschitz_warns(caplog):
    nonlinearity = resolve_nonlinearity("numpy.tanh")
    assert nonlinearity.lipschitz is None
    assert "declares no Lipschitz bound" in caplog.text


def test_unknown_nonlinearity():
    with pytest.raises(ImportError):
        resolve_nonlinearity("fracwave.does_not_exist")
    with pytest.raises(ImportError):
        resolve_nonlinearity("cosine")

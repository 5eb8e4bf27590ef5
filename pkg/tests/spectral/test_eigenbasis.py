import numpy as np
import pytest

from fracwave.core.errors import ConstraintViolationError
from fracwave.core.models import SpectralField
from fracwave.primitives.modules.spectral import apply_fractional, build_eigenbasis, sobolev_norm


def test_single_mode_eigenvalue():
    basis = build_eigenbasis(1)
    assert basis.eigenvalues[0] == pytest.approx(9.8696044, abs=1e-7)


def test_eigenvalue_growth_is_quadratic():
    basis = build_eigenbasis(32)
    assert basis.eigenvalues[3] / basis.eigenvalues[0] == pytest.approx(16)
    np.testing.assert_allclose(basis.eigenvalues / basis.indices ** 2, np.pi ** 2, rtol=1e-14)
    assert np.all(np.diff(basis.eigenvalues) > 0)


def test_zero_modes_rejected():
    with pytest.raises(ConstraintViolationError):
        build_eigenbasis(0)


def test_basis_is_immutable():
    basis = build_eigenbasis(4)
    with pytest.raises(ValueError):
        basis.eigenvalues[0] = 1.0


def test_apply_fractional_examples():
    basis = build_eigenbasis(4)
    field = SpectralField(coeffs=[0.3, -1.2, 0.5, 2.0])
    np.testing.assert_array_equal(apply_fractional(field, basis, 0).coeffs, field.coeffs)

    scaled = apply_fractional(SpectralField.unit(1, 4), basis, 2)
    assert scaled.coeffs[0] == pytest.approx(np.pi ** 2)

    inverse = apply_fractional(SpectralField.unit(2, 4), basis, -1)
    assert inverse.coeffs[1] == pytest.approx(1 / (2 * np.pi))


def test_apply_fractional_inverse_round_trip():
    basis = build_eigenbasis(16)
    rng = np.random.default_rng(3)
    field = SpectralField(coeffs=rng.standard_normal(16))
    back = apply_fractional(apply_fractional(field, basis, 1.3), basis, -1.3)
    np.testing.assert_allclose(back.coeffs, field.coeffs, rtol=1e-12)


def test_apply_fractional_length_mismatch():
    with pytest.raises(ValueError, match="coefficients"):
        apply_fractional(SpectralField.zeros(3), build_eigenbasis(4), 1.0)


def test_sobolev_norm_examples():
    basis = build_eigenbasis(2)
    assert sobolev_norm(SpectralField.unit(1, 2), basis, 0) == pytest.approx(1.0)
    assert sobolev_norm(SpectralField.unit(1, 2), basis, 2) == pytest.approx(np.pi ** 2)
    assert sobolev_norm(SpectralField(coeffs=[1.0, 1.0]), basis, 0) == pytest.approx(np.sqrt(2))


def test_sobolev_norm_monotone_in_nu():
    basis = build_eigenbasis(8)
    field = SpectralField(coeffs=np.linspace(1.0, -1.0, 8))
    norms = [sobolev_norm(field, basis, nu) for nu in (-1.0, 0.0, 0.5, 1.0, 2.0)]
    assert norms == sorted(norms)

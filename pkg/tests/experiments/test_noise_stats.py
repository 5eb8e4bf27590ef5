import pytest

from fracwave.experiments import coarsening_residual, sampler_statistics


@pytest.mark.parametrize("hurst", [0.6, 0.8])
def test_sampler_moments_within_three_standard_errors(hurst):
    report = sampler_statistics(hurst, draws=10_000, seed=0)
    checks = {check.name: check for check in report.checks}
    assert checks["var_D0"].expected == 1.0
    assert checks["cov_D0_I0"].expected == 0.5
    assert checks["var_D0"].within(3.0)
    assert checks["cov_D0_I0"].within(3.0)
    assert report.tau == 1.0


@pytest.mark.parametrize("hurst", [0.55, 0.75, 0.95])
def test_coarsening_identity(hurst):
    assert coarsening_residual(16, 2, hurst) <= 1e-10
    assert coarsening_residual(12, 3, hurst, fine_tau=0.1) <= 1e-10


def test_report_is_reproducible():
    first = sampler_statistics(0.8, draws=500, seed=4)
    second = sampler_statistics(0.8, draws=500, seed=4)
    assert first.model_dump() == second.model_dump()

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from fracwave import ConvergenceStudy, __version__
from fracwave.core.config import RunManifest, StudySettings, resolve_settings
from fracwave.core.errors import ConfigurationError, ConfigValueError, ConstraintViolationError

logger = logging.getLogger(__name__)

SETTING_FLAGS = {
    "alpha": dict(nargs="+", help="Fractional power(s) alpha in (0, 1]"),
    "hurst": dict(nargs="+", help="Hurst index(es) H in (1/2, 1)"),
    "rho": dict(help="Noise regularity rho >= 0"),
    "T": dict(help="Final time"),
    "N_list": dict(nargs="+", help="Time step counts, growing by the factor a"),
    "M": dict(help="Number of sine modes"),
    "samples": dict(help="Monte Carlo samples (draws for noise-stats)"),
    "seed": dict(help="Base seed; every (sample, mode) stream derives from it"),
    "scheme": dict(help="Time stepping scheme: low or high"),
    "f": dict(help="Nonlinearity: sin, zero or a dotted import path"),
    "epsilon": dict(help="Regularity slack entering gamma and the predicted rates"),
    "a": dict(help="Refinement factor between resolutions"),
    "outdir": dict(help="Output directory"),
    "workers": dict(help="Worker processes (default: machine parallelism)"),
    "collocation": dict(help="Collocation grid size for the nonlinearity (default 4 M)"),
}

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "table1": {
        "alpha": [0.6, 0.8, 1.0], "hurst": [0.8], "rho": 0.25, "T": 0.5, "N_list": [32, 64, 128],
        "M": 256, "samples": 200, "scheme": "low", "f": "sin", "a": 2, "outdir": "results/table1",
    },
    "rates-high": {
        "alpha": [0.6, 0.8], "hurst": [0.6, 0.8], "rho": 1.5, "T": 0.5, "N_list": [16, 32, 64, 128],
        "M": 64, "samples": 200, "scheme": "high", "f": "sin", "a": 2, "outdir": "results/rates-high",
    },
    "deterministic": {
        "alpha": [0.6], "hurst": [0.8], "T": 0.5, "N_list": [64, 128, 256, 512, 1024],
        "M": 8, "f": "zero", "a": 2, "outdir": "results/deterministic",
    },
    "noise-stats": {
        "hurst": [0.6, 0.8], "samples": 10_000, "outdir": "results/noise-stats",
    },
}


def _overrides(args) -> dict[str, Any]:
    return {key: getattr(args, key) for key in SETTING_FLAGS}


def parse_config(command: str, config_path: Optional[str], overrides: dict[str, Any]) -> RunManifest:
    """Resolve defaults, an optional configuration file and flag overrides into a run manifest.

    Raises:
        ConfigurationError: If the configuration cannot be read or is invalid
    """
    file_text = None
    if config_path is not None:
        try:
            file_text = Path(config_path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigValueError(f"Cannot read configuration file {config_path}: {e}") from e
    settings = resolve_settings(COMMAND_DEFAULTS[command], file_text, overrides)
    return RunManifest(
        command=command,
        settings=settings,
        seed=settings.seed,
        outdir=settings.outdir,
        version=__version__,
    )


def _prepare(args) -> tuple[RunManifest, Path]:
    from fracwave.experiments import write_manifest

    manifest = parse_config(args.command, args.config, _overrides(args))
    outdir = Path(manifest.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_manifest(manifest, outdir / "manifest.json")
    return manifest, outdir


def _study() -> ConvergenceStudy:
    study = ConvergenceStudy()

    def progress(event):
        if event.total_samples and (event.sample_index + 1) % max(1, event.total_samples // 10) == 0:
            logger.info(f"  sample {event.sample_index + 1}/{event.total_samples}")

    study.register_event_listener("study.sample", progress)
    return study


def _run_studies(args) -> tuple[list, Path]:
    from fracwave.experiments import format_rate_table, run_convergence_study, write_results_csv, write_summary_json

    manifest, outdir = _prepare(args)
    study = _study()
    reports = [run_convergence_study(plan, study) for plan in manifest.settings.plans()]
    write_results_csv(reports, outdir / "results.csv")
    write_summary_json(reports, outdir / "summary.json", manifest.command)
    print(format_rate_table(reports))
    return reports, outdir


def table1(args):
    """Low order scheme, Table 1 style rate table."""
    _run_studies(args)


def rates_high(args):
    """High order scheme for several H, with log-log plot data and reference slopes."""
    from fracwave.experiments import write_rate_plot_data

    reports, outdir = _run_studies(args)
    write_rate_plot_data(reports, outdir / "rates_high_plot.csv")


def deterministic(args):
    """Order study of both schemes against the exact wave propagator, zero noise and f = 0."""
    from fracwave.experiments import (
        deterministic_order_study,
        format_rate_table,
        write_rate_plot_data,
        write_results_csv,
        write_summary_json,
    )

    manifest, outdir = _prepare(args)
    settings: StudySettings = manifest.settings
    if settings.f != "zero":
        raise ConstraintViolationError(f"The deterministic study needs f = zero, got {settings.f!r}")
    schemes = [settings.scheme] if settings.scheme is not None else ["low", "high"]
    reports = []
    for scheme in schemes:
        for hurst in settings.hurst:
            for alpha in settings.alpha:
                config = settings.build_model_config(alpha, hurst, noise=False).model_copy(update={"scheme": scheme})
                reports.append(deterministic_order_study(config, settings.N_list, settings.a))
    write_results_csv(reports, outdir / "results.csv")
    write_summary_json(reports, outdir / "summary.json", manifest.command)
    write_rate_plot_data(reports, outdir / "deterministic_plot.csv")
    print(format_rate_table(reports))


def noise_stats(args):
    """Statistical validation of the fBm sampler at unit step size."""
    from fracwave.experiments import sampler_statistics, write_noise_stats

    manifest, outdir = _prepare(args)
    settings: StudySettings = manifest.settings
    reports = [sampler_statistics(hurst, draws=settings.samples, seed=settings.seed) for hurst in settings.hurst]
    write_noise_stats(reports, outdir / "summary.json")
    for report in reports:
        status = "ok" if report.passed else "FAILED"
        print(f"H={report.hurst}: {status}, max |z| = {report.max_abs_z_score:.2f}, "
              f"coarsening residual = {report.coarsening_residual:.2e}")
        if not report.passed:
            logger.warning(f"Sampler statistics for H={report.hurst} are outside 3 standard errors")


COMMANDS: dict[str, tuple[Callable, str]] = {
    "table1": (table1, "Low order strong convergence table"),
    "rates-high": (rates_high, "High order strong convergence rates and plot data"),
    "deterministic": (deterministic, "Deterministic order study against the exact propagator"),
    "noise-stats": (noise_stats, "fBm sampler statistics"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='fracwave command line interface', add_help=True)
    parser.add_argument('--version', action='version', version=f'fracwave {__version__}')
    subparsers = parser.add_subparsers(dest="command")

    for name, (func, help_text) in COMMANDS.items():
        defaults = {**StudySettings().model_dump(), **COMMAND_DEFAULTS[name]}
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("--config", type=str, default=None,
                         help="YAML/JSON settings file or a previous manifest.json")
        sub.add_argument("--log-level", type=str, default="INFO",
                         choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level (default: INFO)")
        for key, options in SETTING_FLAGS.items():
            flag = "--" + key.replace("_", "-")
            sub.add_argument(flag, dest=key, type=str, default=None,
                             help=f"{options['help']} (default: {defaults.get(key)})",
                             **{k: v for k, v in options.items() if k != "help"})
        sub.set_defaults(func=func)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 0

    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except ConfigurationError as e:
        logger.error(str(e))
        return e.exit_code
    except Exception as e:
        logger.exception(f"{args.command} failed: {e}")
        return getattr(e, "exit_code", 5)
    return 0


if __name__ == "__main__":
    sys.exit(main())

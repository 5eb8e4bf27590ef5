import csv
import json
import logging
from pathlib import Path
from typing import Sequence

from fracwave.core.config import RunManifest
from fracwave.core.models import NoiseStatsReport, RateReport

__all__ = [
    "RESULT_COLUMNS",
    "write_results_csv",
    "write_summary_json",
    "write_manifest",
    "write_rate_plot_data",
    "write_noise_stats",
    "format_rate_table",
]

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["alpha", "H", "rho", "M", "N", "samples", "error", "stderr", "order"]


def _number(value) -> str:
    if value is None:
        return ""
    return repr(float(value)) if isinstance(value, float) else str(value)


def write_results_csv(reports: Sequence[RateReport], path: str | Path) -> Path:
    """One row per (report, resolution); floats are written with repr so files compare bitwise."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for report in reports:
            for row in report.rows:
                writer.writerow([_number(v) for v in (
                    report.alpha, report.hurst, report.rho, report.modes, row.steps,
                    report.samples, row.error, row.stderr, row.order,
                )])
    logger.info(f"Wrote {path}")
    return path


def write_summary_json(reports: Sequence[RateReport], path: str | Path, command: str) -> Path:
    path = Path(path)
    summary = {
        "command": command,
        "studies": [report.model_dump(mode="json") for report in reports],
    }
    path.write_text(json.dumps(summary, indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_manifest(manifest: RunManifest, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_rate_plot_data(reports: Sequence[RateReport], path: str | Path) -> Path:
    """Log-log plot data: tau, error and a reference line C tau^rate through the coarsest point.

    The rate is the high order prediction when present, the low order one otherwise.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["alpha", "H", "tau", "error", "stderr", "reference_rate", "reference"])
        for report in reports:
            if not report.rows or report.predicted is None:
                continue
            rate = report.predicted.high_order_rate if report.scheme == "high" else report.predicted.low_order_rate
            anchor = report.rows[0]
            constant = anchor.error / anchor.tau ** rate
            for row in report.rows:
                writer.writerow([_number(v) for v in (
                    report.alpha, report.hurst, row.tau, row.error, row.stderr, rate, constant * row.tau ** rate,
                )])
    logger.info(f"Wrote {path}")
    return path


def write_noise_stats(reports: Sequence[NoiseStatsReport], path: str | Path) -> Path:
    path = Path(path)
    payload = [
        {**report.model_dump(mode="json"), "passed": report.passed}
        for report in reports
    ]
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def format_rate_table(reports: Sequence[RateReport]) -> str:
    """Text table with one column block per study and one row per resolution."""
    if not reports:
        return ""
    header = f"{'N':>6}" + "".join(
        f" | a={r.alpha:<4g} H={r.hurst:<4g} {'error':>10} {'order':>6}" for r in reports
    )
    lines = [header, "-" * len(header)]
    for i, first in enumerate(reports[0].rows):
        cells = []
        for report in reports:
            row = report.rows[i]
            order = f"{row.order:6.3f}" if row.order is not None else f"{'-':>6}"
            cells.append(f" | {'':<14} {row.error:10.3e} {order}")
        lines.append(f"{first.steps:>6}" + "".join(cells))
    return "\n".join(lines)

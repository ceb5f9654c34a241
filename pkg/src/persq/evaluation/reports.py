"""CSV emission of evaluation results (fold metrics, sweep table, histogram)."""

from __future__ import annotations

import csv
from pathlib import Path

from .metrics import MetricsReport, error_histogram


def _fmt(value: float) -> str:
    return repr(float(value))


def write_fold_csv(path, model_name: str, folds, aggregate: MetricsReport) -> None:
    """Rows `model,fold,mae,mse,rmse,r2` with a trailing aggregate row."""
    with open(Path(path), "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("model", "fold", "mae", "mse", "rmse", "r2"))
        for fold in folds:
            m = fold.metrics
            writer.writerow((model_name, fold.held_out_user,
                             _fmt(m.mae), _fmt(m.mse), _fmt(m.rmse), _fmt(m.r2)))
        writer.writerow((model_name, "aggregate",
                         _fmt(aggregate.mae), _fmt(aggregate.mse),
                         _fmt(aggregate.rmse), _fmt(aggregate.r2)))


def write_sweep_csv(path, model_name: str, sweep_results) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("model", "t", "rmse"))
        for t, rmse in sweep_results:
            writer.writerow((model_name, t, _fmt(rmse)))


def write_histogram_csv(path, per_day, bin_width: float = 0.5) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("bin_lo", "bin_hi", "count"))
        for lo, count in error_histogram(per_day, bin_width):
            writer.writerow((_fmt(lo), _fmt(lo + bin_width), count))

"""Regression metrics and error-distribution binning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricsReport:
    mae: float
    mse: float
    rmse: float
    r2: float  # NaN flags an undefined value (constant truth)
    n: int


def compute_metrics(truth, pred) -> MetricsReport:
    """MAE/MSE/RMSE on the given scale plus r2 = 1 - SS_res/SS_tot.

    Constant truth makes SS_tot zero; r2 is then reported as NaN rather than
    silently zero-filled.
    """
    truth = np.asarray(truth, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.float64)
    if truth.shape != pred.shape or truth.ndim != 1:
        raise ValueError(f"truth and pred must be equal-length vectors, got "
                         f"{truth.shape} vs {pred.shape}")
    if truth.size == 0:
        raise ValueError("cannot compute metrics on empty vectors")
    err = pred - truth
    mae = float(np.mean(np.abs(err)))
    mse = float(np.mean(np.square(err)))
    rmse = math.sqrt(mse)
    ss_res = float(np.sum(np.square(err)))
    ss_tot = float(np.sum(np.square(truth - truth.mean())))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else float("nan")
    return MetricsReport(mae=mae, mse=mse, rmse=rmse, r2=r2, n=truth.size)


def error_histogram(per_day, bin_width: float = 0.5) -> list[tuple[float, int]]:
    """Counts of (prediction - truth) in half-open bins [lo, lo + width).

    `per_day` holds (date, truth, prediction) triples as emitted by the
    cross-validation folds. Returns (bin lower edge, count) sorted by edge;
    counts always sum to the number of pairs.
    """
    if bin_width <= 0:
        raise ValueError(f"bin_width must be > 0, got {bin_width}")
    counts: dict[int, int] = {}
    for _, truth, pred in per_day:
        index = math.floor((pred - truth) / bin_width)
        counts[index] = counts.get(index, 0) + 1
    return [(index * bin_width, counts[index]) for index in sorted(counts)]

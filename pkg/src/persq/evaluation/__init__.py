"""Metrics, leave-one-out evaluation, window sweep and result reporting."""

from .loocv import FoldResult, loocv
from .metrics import MetricsReport, compute_metrics, error_histogram
from .reports import write_fold_csv, write_histogram_csv, write_sweep_csv
from .sweep import window_sweep
from .trainers import LinearTrainer, MlpTrainer, PerSQTrainer

__all__ = [
    "MetricsReport", "compute_metrics", "error_histogram",
    "FoldResult", "loocv", "window_sweep",
    "PerSQTrainer", "LinearTrainer", "MlpTrainer",
    "write_fold_csv", "write_sweep_csv", "write_histogram_csv",
]

"""Leave-one-out cross-validation: one fold per held-out user.

The scaler and the model are fitted on the remaining users only, so no
held-out information leaks into training artifacts. The aggregate report
pools every fold's per-day pairs (micro-average).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..features.scaler import fit_scaler
from .metrics import MetricsReport, compute_metrics


@dataclass(frozen=True)
class FoldResult:
    held_out_user: str
    metrics: MetricsReport
    per_day: tuple  # (date, truth, prediction) triples


def loocv(dataset, trainer, t: int) -> tuple[list[FoldResult], MetricsReport]:
    dataset = sorted(dataset, key=lambda s: s.user_id)
    if len(dataset) < 2:
        raise ValueError(f"leave-one-out needs at least 2 users, got {len(dataset)}")
    folds = []
    pooled_truth, pooled_pred = [], []
    for held_out in dataset:
        train_series = [s for s in dataset if s.user_id != held_out.user_id]
        scaler = fit_scaler(train_series)
        predictor = trainer.fit(train_series, scaler, t)
        per_day = predictor.predict_days(held_out)
        if not per_day:
            warnings.warn(f"fold {held_out.user_id}: no evaluable windows, skipping")
            continue
        truth = [p[1] for p in per_day]
        pred = [p[2] for p in per_day]
        folds.append(FoldResult(
            held_out_user=held_out.user_id,
            metrics=compute_metrics(truth, pred),
            per_day=tuple(per_day),
        ))
        pooled_truth.extend(truth)
        pooled_pred.extend(pred)
    if not folds:
        raise ValueError("no fold produced evaluable windows")
    return folds, compute_metrics(pooled_truth, pooled_pred)

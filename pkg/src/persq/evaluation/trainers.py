"""Trainer adapters plugged into the LOOCV harness.

A trainer fits on the training users' series (scaler already fitted on those
users only) and returns a predictor mapping a held-out series to per-day
(date, truth, prediction) triples on the percent scale.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

from ..features.scaler import Scaler
from ..features.windows import build_dataset_windows, build_windows, stack_windows
from ..ingest.records import UserSeries
from ..model.baselines import (
    baseline_samples,
    fit_linear_baseline,
    fit_mlp_baseline,
    predict_linear,
    predict_mlp,
)
from ..model.network import ModelConfig, init_model, predict_batch
from ..model.training import TrainConfig, train


class Predictor(Protocol):
    def predict_days(self, series: UserSeries) -> list[tuple]: ...


class Trainer(Protocol):
    name: str

    def fit(self, train_series: list[UserSeries], scaler: Scaler, t: int) -> Predictor: ...


class PerSQTrainer:
    name = "persq"

    def __init__(self, hidden_sizes=(50, 30, 20), dropout_rate=0.2,
                 train_cfg: TrainConfig | None = None, seed: int = 0):
        self.hidden_sizes = tuple(hidden_sizes)
        self.dropout_rate = dropout_rate
        self.train_cfg = train_cfg if train_cfg is not None else TrainConfig(seed=seed)
        self.seed = seed

    def fit(self, train_series, scaler, t):
        samples = build_dataset_windows(train_series, scaler, t)
        model = init_model(ModelConfig(
            input_size=scaler.size,
            hidden_sizes=self.hidden_sizes,
            dropout_rate=self.dropout_rate,
            window_t=t,
            seed=self.seed,
        ))
        model.scaler = scaler
        trained, _ = train(model, samples, self.train_cfg)
        return _PerSQPredictor(trained, scaler, t)


class _PerSQPredictor:
    def __init__(self, model, scaler, t):
        self.model = model
        self.scaler = scaler
        self.t = t

    def predict_days(self, series):
        windows = build_windows(series, self.scaler, self.t)
        if not windows:
            return []
        preds = predict_batch(self.model, stack_windows(windows))
        return [(w.target_date, w.target_sq, float(p)) for w, p in zip(windows, preds)]


class _FlatPredictor:
    """Shared eval path for the flattened-input baselines."""

    def __init__(self, predict_fn, scaler, t):
        self.predict_fn = predict_fn
        self.scaler = scaler
        self.t = t

    def predict_days(self, series):
        x, y, dates = baseline_samples(series, self.scaler, self.t)
        if not dates:
            return []
        preds = self.predict_fn(x)
        out = []
        for date, truth_norm, pred_norm in zip(dates, y, preds):
            truth = truth_norm * (self.scaler.sq_max - self.scaler.sq_min) + self.scaler.sq_min
            out.append((date, float(truth), self.scaler.inverse_transform_sq(float(pred_norm))))
        return out


class LinearTrainer:
    name = "linear"

    def fit(self, train_series, scaler, t):
        parts = [baseline_samples(series, scaler, t) for series in train_series]
        x = np.vstack([p[0] for p in parts])
        y = np.concatenate([p[1] for p in parts])
        model = fit_linear_baseline(x, y)
        return _FlatPredictor(lambda xs: predict_linear(model, xs), scaler, t)


class MlpTrainer:
    name = "mlp"

    def __init__(self, hidden=(8, 8), train_cfg: TrainConfig | None = None, seed: int = 0):
        self.hidden = tuple(hidden)
        self.train_cfg = train_cfg if train_cfg is not None else TrainConfig(seed=seed)

    def fit(self, train_series, scaler, t):
        parts = [baseline_samples(series, scaler, t) for series in train_series]
        x = np.vstack([p[0] for p in parts])
        y = np.concatenate([p[1] for p in parts])
        model, _ = fit_mlp_baseline(x, y, hidden=self.hidden, cfg=self.train_cfg)
        return _FlatPredictor(lambda xs: predict_mlp(model, xs), scaler, t)

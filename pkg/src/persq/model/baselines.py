"""Comparison baselines: ordinary least squares and a small ReLU MLP.

Both consume the flattened representation used for the fairness-adjusted
comparison: the target day's feature vector plus the previous day's
normalized SQ as one extra input.
"""

from __future__ import annotations

import datetime as dt
import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import DivergenceError
from ..features.scaler import Scaler
from ..ingest.records import UserSeries


def baseline_samples(series: UserSeries, scaler: Scaler, t: int):
    """Flattened samples for one user: rows (encoded day m + prev-day SQ).

    A date m is eligible when days m-t..m are all encodable (the same run
    requirement PerSQ windows impose, keeping evaluation days aligned) and
    both day m and day m-1 carry ground-truth SQ.
    """
    from ..features.windows import encode_days

    encoded = encode_days(series, scaler)
    sq_by_date = {d.date: d.sq for d in series.days if d.sq is not None}
    rows, targets, dates = [], [], []
    history = max(t, 1)
    for target_date, target_sq in sorted(sq_by_date.items()):
        prev_date = target_date - dt.timedelta(days=1)
        run = [target_date - dt.timedelta(days=k) for k in range(history, -1, -1)]
        if prev_date not in sq_by_date or not all(d in encoded for d in run):
            continue
        rows.append(np.append(encoded[target_date], scaler.normalize_sq(sq_by_date[prev_date])))
        targets.append(scaler.normalize_sq(target_sq))
        dates.append(target_date)
    if not rows:
        return np.empty((0, scaler.size + 1)), np.empty(0), []
    return np.array(rows), np.array(targets), dates


@dataclass
class LinearModel:
    coef: np.ndarray
    intercept: float


def fit_linear_baseline(x: np.ndarray, y: np.ndarray, ridge: float = 1e-8) -> LinearModel:
    """OLS via the normal equations; falls back to a small ridge penalty when
    the Gram matrix is singular (or there are fewer samples than features)."""
    if x.ndim != 2 or len(x) != len(y) or len(y) == 0:
        raise ValueError("x must be (n, p) with matching non-empty y")
    a = np.hstack([x, np.ones((len(x), 1))])
    gram = a.T @ a
    rhs = a.T @ y
    n, p = a.shape
    use_ridge = n < p
    if use_ridge:
        warnings.warn(f"linear baseline: {n} samples < {p} features, using ridge fallback")
    else:
        try:
            theta = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError:
            use_ridge = True
            warnings.warn("linear baseline: singular Gram matrix, using ridge fallback")
    if use_ridge:
        scale = max(np.trace(gram) / p, 1.0)
        theta = np.linalg.solve(gram + ridge * scale * np.eye(p), rhs)
    return LinearModel(coef=theta[:-1], intercept=float(theta[-1]))


def predict_linear(model: LinearModel, x: np.ndarray) -> np.ndarray:
    """Normalized-space predictions; de-normalize with the shared scaler."""
    return np.asarray(x) @ model.coef + model.intercept


@dataclass
class MlpModel:
    """Fully-connected ReLU regressor, e.g. 8-8-1."""

    weights: list[np.ndarray]  # (out, in) per layer
    biases: list[np.ndarray]

    def param_arrays(self) -> list[np.ndarray]:
        arrays = []
        for w, b in zip(self.weights, self.biases):
            arrays.extend((w, b))
        return arrays

    def copy(self) -> "MlpModel":
        return MlpModel([w.copy() for w in self.weights], [b.copy() for b in self.biases])


def init_mlp(input_size: int, hidden: tuple[int, ...] = (8, 8), seed: int = 0) -> MlpModel:
    if input_size <= 0 or any(h <= 0 for h in hidden):
        raise ValueError(f"layer sizes must be positive, got input={input_size}, hidden={hidden}")
    rng = np.random.default_rng(seed)
    sizes = (input_size, *hidden, 1)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes, sizes[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(weights=weights, biases=biases)


def mlp_forward(model: MlpModel, x: np.ndarray):
    """Returns (predictions (n,), per-layer activation cache)."""
    acts = [np.asarray(x, dtype=np.float64)]
    current = acts[0]
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = current @ w.T + b
        current = z if i == last else np.maximum(z, 0.0)
        acts.append(current)
    return current[:, 0], acts


def mlp_backward(model: MlpModel, acts: list[np.ndarray], dpred: np.ndarray):
    """Gradients matching param_arrays order, given dLoss/dprediction."""
    grads_w = [None] * len(model.weights)
    grads_b = [None] * len(model.biases)
    delta = np.asarray(dpred)[:, None]
    for i in range(len(model.weights) - 1, -1, -1):
        grads_w[i] = delta.T @ acts[i]
        grads_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ model.weights[i]) * (acts[i] > 0)
    arrays = []
    for gw, gb in zip(grads_w, grads_b):
        arrays.extend((gw, gb))
    return arrays


def fit_mlp_baseline(x: np.ndarray, y: np.ndarray, hidden: tuple[int, ...] = (8, 8),
                     cfg=None, seed: int = 0) -> tuple[MlpModel, list[float]]:
    """Same trainer contract as the PerSQ trainer: seeded Adam mini-batches,
    optional validation-gated early stopping, divergence detection."""
    from .training import Adam, TrainConfig

    if cfg is None:
        cfg = TrainConfig(seed=seed)
    cfg.validate()
    if len(x) == 0:
        raise ValueError("cannot train on an empty sample list")

    model = init_mlp(x.shape[1], hidden, seed=cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    n = len(x)
    n_val = 0
    if cfg.early_stop_patience is not None and n >= 5:
        n_val = max(1, int(round(cfg.val_fraction * n)))
    order = rng.permutation(n)
    val_idx, train_idx = order[:n_val], order[n_val:]
    x_train, y_train = x[train_idx], y[train_idx]
    x_val, y_val = x[val_idx], y[val_idx]

    params = model.param_arrays()
    optimizer = Adam(params, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
    best_val, best_params, stale = np.inf, None, 0
    history = []
    for epoch in range(cfg.epochs):
        perm = rng.permutation(len(x_train))
        losses = []
        for start in range(0, len(perm), cfg.batch_size):
            idx = perm[start:start + cfg.batch_size]
            pred, acts = mlp_forward(model, x_train[idx])
            loss = float(0.5 * np.mean(np.square(pred - y_train[idx])))
            if not np.isfinite(loss):
                raise DivergenceError(epoch)
            losses.append(loss)
            dpred = (pred - y_train[idx]) / len(idx)
            optimizer.step(mlp_backward(model, acts, dpred))
        history.append(float(np.mean(losses)))
        if n_val:
            val_pred, _ = mlp_forward(model, x_val)
            val_loss = float(0.5 * np.mean(np.square(val_pred - y_val)))
            if not np.isfinite(val_loss):
                raise DivergenceError(epoch, "non-finite validation loss")
            if val_loss < best_val - 1e-12:
                best_val, best_params, stale = val_loss, [p.copy() for p in params], 0
            else:
                stale += 1
                if stale >= cfg.early_stop_patience:
                    break
    if best_params is not None:
        for p, best in zip(params, best_params):
            p[...] = best
    return model, history


def predict_mlp(model: MlpModel, x: np.ndarray) -> np.ndarray:
    pred, _ = mlp_forward(model, x)
    return pred

"""Mini-batch training with Adam-style adaptive steps.

Per-sample loss is 0.5 * (prediction - normalized target)^2; batch gradients
average the per-sample gradients. Everything is driven by one seeded
generator, so identical (model, samples, config) runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DivergenceError, StateError
from ..features.windows import WindowedSample, stack_windows
from .network import PerSQModel, backward_batch, forward_batch


@dataclass
class TrainConfig:
    learning_rate: float = 1e-3
    epochs: int = 200
    batch_size: int = 16
    seed: int = 0
    early_stop_patience: int | None = 20
    val_fraction: float = 0.1
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def validate(self):
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")


class Adam:
    """Adam on a list of parameter arrays, updated in place."""

    def __init__(self, params: list[np.ndarray], lr: float,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, grads: list[np.ndarray]):
        self.t += 1
        correct1 = 1.0 - self.beta1 ** self.t
        correct2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * np.square(g)
            p -= self.lr * (m / correct1) / (np.sqrt(v / correct2) + self.eps)


def _half_mse(pred: np.ndarray, target: np.ndarray) -> float:
    return float(0.5 * np.mean(np.square(pred - target)))


def train(model: PerSQModel, samples: list[WindowedSample],
          cfg: TrainConfig) -> tuple[PerSQModel, list[float]]:
    """Train a copy of `model`; returns (trained model, per-epoch mean loss).

    With early_stop_patience set, a seeded 10% validation split gates the
    epochs and the best-validation parameters are restored at the end.
    """
    cfg.validate()
    if not samples:
        raise ValueError("cannot train on an empty sample list")
    if model.scaler is None:
        raise StateError("model needs a scaler to normalize targets; set model.scaler")

    model = model.copy()
    x_all = stack_windows(samples)
    y_all = np.array([model.scaler.normalize_sq(s.target_sq) for s in samples])

    rng = np.random.default_rng(cfg.seed)
    n = len(samples)
    n_val = 0
    if cfg.early_stop_patience is not None and n >= 5:
        n_val = max(1, int(round(cfg.val_fraction * n)))
    order = rng.permutation(n)
    val_idx, train_idx = order[:n_val], order[n_val:]
    x_train, y_train = x_all[train_idx], y_all[train_idx]
    x_val, y_val = x_all[val_idx], y_all[val_idx]

    params = model.param_arrays()
    optimizer = Adam(params, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)

    best_val = np.inf
    best_params = None
    stale_epochs = 0
    history: list[float] = []

    for epoch in range(cfg.epochs):
        perm = rng.permutation(len(x_train))
        batch_losses = []
        for start in range(0, len(perm), cfg.batch_size):
            idx = perm[start:start + cfg.batch_size]
            pred, cache = forward_batch(model, x_train[idx], mode="train", rng=rng)
            loss = _half_mse(pred, y_train[idx])
            if not np.isfinite(loss):
                raise DivergenceError(epoch)
            batch_losses.append(loss)
            dpred = (pred - y_train[idx]) / len(idx)
            grads = backward_batch(model, cache, dpred)
            optimizer.step(grads.param_arrays())
            model.version += 1
        history.append(float(np.mean(batch_losses)))

        if n_val:
            val_pred, _ = forward_batch(model, x_val, mode="eval")
            val_loss = _half_mse(val_pred, y_val)
            if not np.isfinite(val_loss):
                raise DivergenceError(epoch, "non-finite validation loss")
            if val_loss < best_val - 1e-12:
                best_val = val_loss
                best_params = [p.copy() for p in params]
                stale_epochs = 0
            else:
                stale_epochs += 1
                if stale_epochs >= cfg.early_stop_patience:
                    break

    if best_params is not None:
        for p, best in zip(params, best_params):
            p[...] = best
        model.version += 1
    return model, history


def personalize(population_model: PerSQModel, personal_samples: list[WindowedSample],
                cfg: TrainConfig | None = None) -> tuple[PerSQModel, list[float]]:
    """Warm-start fine-tuning for a new user: continue from the population
    model with a lower learning rate as personal data arrives."""
    if cfg is None:
        cfg = TrainConfig(learning_rate=1e-4, epochs=50, early_stop_patience=10)
    return train(population_model, personal_samples, cfg)

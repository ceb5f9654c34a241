"""Analytic gradients vs central finite differences, per backend."""

import numpy as np
import pytest

from persq.errors import StateError
from persq.model.backend import available_backends
from persq.model.network import (
    ModelConfig,
    backward,
    backward_batch,
    forward,
    forward_batch,
    init_model,
)

from _helpers import check_gradients

BACKENDS = list(available_backends())


def _toy_model(rng, steps, input_size=3, hidden=(3, 4, 2), scale=2.0):
    model = init_model(ModelConfig(
        input_size=input_size, hidden_sizes=hidden, dropout_rate=0.0,
        window_t=steps - 1, seed=int(rng.integers(0, 2 ** 31)),
    ))
    for p in model.param_arrays():
        p *= scale  # O(1) activations so gradients are not trivially tiny
    model.version += 1
    return model


def _loss_fn(model, x, y):
    def loss():
        pred, _ = forward_batch(model, x, mode="eval")
        return float(0.5 * np.mean((pred - y) ** 2))
    return loss


@pytest.mark.parametrize("backend", BACKENDS)
def test_layer_gradients_match_finite_differences(backend, monkeypatch):
    from persq.model import backend as dispatch
    monkeypatch.setattr(dispatch, "_impl", dispatch.available_backends()[backend])

    rng = np.random.default_rng(3)
    for _ in range(5):
        steps = int(rng.integers(1, 4))
        model = _toy_model(rng, steps)
        x = rng.random((int(rng.integers(1, 5)), steps, 3)) * 2 - 1
        y = rng.random(x.shape[0])
        pred, cache = forward_batch(model, x, mode="eval")
        grads = backward_batch(model, cache, (pred - y) / len(y))
        violations = check_gradients(
            model.param_arrays(), grads.param_arrays(), _loss_fn(model, x, y))
        assert not violations, violations[:5]


def test_zero_loss_gives_zero_gradients():
    rng = np.random.default_rng(4)
    model = _toy_model(rng, steps=2)
    x = rng.random((2, 3))
    pred, cache = forward(model, x, mode="eval")
    grads = backward(model, x, target_normalized=pred, cache=cache)
    for g in grads.param_arrays():
        assert np.all(g == 0.0)


def test_unused_recurrent_weights_with_single_step_window():
    rng = np.random.default_rng(5)
    model = _toy_model(rng, steps=1)
    x = rng.random((1, 3))
    pred, cache = forward(model, x, mode="eval")
    grads = backward(model, x, target_normalized=0.2, cache=cache)
    batch = x[None, :, :]
    y = np.array([0.2])
    violations = check_gradients(
        model.param_arrays(), grads.param_arrays(), _loss_fn(model, batch, y))
    assert not violations
    # recurrent weights never see a previous hidden state at T=1
    for layer_grads in grads.layers:
        assert np.all(layer_grads.wh == 0.0)


def test_dropout_gradients_match_replayed_mask():
    rng = np.random.default_rng(6)
    model = _toy_model(rng, steps=3)
    model.dropout_rate = 0.5
    x = rng.random((2, 3, 3))
    y = np.array([0.3, 0.7])
    seed = 99
    pred, cache = forward_batch(model, x, mode="train", rng=np.random.default_rng(seed))
    grads = backward_batch(model, cache, (pred - y) / 2)

    def loss():
        p, _ = forward_batch(model, x, mode="train", rng=np.random.default_rng(seed))
        return float(0.5 * np.mean((p - y) ** 2))

    violations = check_gradients(model.param_arrays(), grads.param_arrays(), loss)
    assert not violations


def test_stale_cache_rejected():
    rng = np.random.default_rng(7)
    model = _toy_model(rng, steps=2)
    x = rng.random((2, 3))
    _, cache = forward(model, x, mode="eval")
    model.version += 1  # simulate a parameter update after forward
    with pytest.raises(StateError):
        backward(model, x, target_normalized=0.1, cache=cache)

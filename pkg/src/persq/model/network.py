"""The PerSQ regressor: three stacked LSTM sub-layers with inverted dropout
after each, and a dense head reading the final hidden state."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeError, StateError
from ..features.scaler import Scaler
from ..features.windows import WindowedSample
from . import backend

DEFAULT_HIDDEN_SIZES = (50, 30, 20)


@dataclass
class LstmLayerParams:
    """One sub-layer's weights; gate blocks stacked [input, forget, cell, output]."""

    wx: np.ndarray  # (4H, I)
    wh: np.ndarray  # (4H, H)
    b: np.ndarray   # (4H,)

    @property
    def input_size(self) -> int:
        return self.wx.shape[1]

    @property
    def hidden_size(self) -> int:
        return self.wh.shape[1]

    def validate(self):
        four_h = 4 * self.hidden_size
        if self.wx.shape[0] != four_h or self.wh.shape[0] != four_h or self.b.shape != (four_h,):
            raise ShapeError(
                f"inconsistent LSTM layer shapes wx{self.wx.shape} wh{self.wh.shape} b{self.b.shape}"
            )


@dataclass
class ModelConfig:
    input_size: int
    hidden_sizes: tuple[int, ...] = DEFAULT_HIDDEN_SIZES
    dropout_rate: float = 0.2
    window_t: int = 3
    seed: int = 0


@dataclass
class PerSQModel:
    layers: list[LstmLayerParams]
    dense_w: np.ndarray  # (1, H_last)
    dense_b: np.ndarray  # (1,)
    dropout_rate: float
    window_t: int
    seed: int
    scaler: Scaler | None = None
    version: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        for layer in self.layers:
            layer.validate()
        for below, above in zip(self.layers, self.layers[1:]):
            if above.input_size != below.hidden_size:
                raise ShapeError(
                    f"layer input size {above.input_size} != previous hidden size "
                    f"{below.hidden_size}"
                )
        if self.dense_w.shape != (1, self.layers[-1].hidden_size):
            raise ShapeError(f"dense weights {self.dense_w.shape} do not fit final layer")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")

    @property
    def input_size(self) -> int:
        return self.layers[0].input_size

    @property
    def hidden_sizes(self) -> tuple[int, ...]:
        return tuple(layer.hidden_size for layer in self.layers)

    def param_arrays(self) -> list[np.ndarray]:
        """All trainable arrays in a fixed order (shared with ModelGrads)."""
        arrays = []
        for layer in self.layers:
            arrays.extend((layer.wx, layer.wh, layer.b))
        arrays.extend((self.dense_w, self.dense_b))
        return arrays

    def copy(self) -> "PerSQModel":
        dup = copy.deepcopy(self)
        dup.version = 0
        return dup


@dataclass
class ModelGrads:
    layers: list[LstmLayerParams]
    dense_w: np.ndarray
    dense_b: np.ndarray

    def param_arrays(self) -> list[np.ndarray]:
        arrays = []
        for layer in self.layers:
            arrays.extend((layer.wx, layer.wh, layer.b))
        arrays.extend((self.dense_w, self.dense_b))
        return arrays


@dataclass
class ForwardCache:
    x: np.ndarray
    layer_inputs: list[np.ndarray]
    hs: list[np.ndarray]
    cs: list[np.ndarray]
    gates: list[np.ndarray]
    masks: list[np.ndarray | None]
    v: np.ndarray
    pred: np.ndarray
    mode: str
    model_ref: object
    model_version: int


def _uniform(rng, fan_in, shape):
    bound = 1.0 / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=shape)


def init_model(config: ModelConfig) -> PerSQModel:
    """Seeded initialization: weights uniform in +/-1/sqrt(fan_in), biases zero
    except the forget gate's, which starts at 1."""
    if config.input_size <= 0:
        raise ValueError(f"input_size must be positive, got {config.input_size}")
    if not config.hidden_sizes or any(h <= 0 for h in config.hidden_sizes):
        raise ValueError(f"hidden sizes must all be positive, got {config.hidden_sizes}")
    if config.window_t < 0:
        raise ValueError(f"window_t must be >= 0, got {config.window_t}")
    rng = np.random.default_rng(config.seed)
    layers = []
    in_size = config.input_size
    for hidden in config.hidden_sizes:
        wx = _uniform(rng, in_size, (4 * hidden, in_size))
        wh = _uniform(rng, hidden, (4 * hidden, hidden))
        b = np.zeros(4 * hidden)
        b[hidden:2 * hidden] = 1.0
        layers.append(LstmLayerParams(wx=wx, wh=wh, b=b))
        in_size = hidden
    dense_w = _uniform(rng, in_size, (1, in_size))
    dense_b = np.zeros(1)
    return PerSQModel(
        layers=layers,
        dense_w=dense_w,
        dense_b=dense_b,
        dropout_rate=config.dropout_rate,
        window_t=config.window_t,
        seed=config.seed,
    )


def _check_input(model: PerSQModel, x: np.ndarray):
    if x.ndim != 3:
        raise ShapeError(f"expected (batch, steps, features), got shape {x.shape}")
    if x.shape[1] != model.window_t + 1:
        raise ShapeError(
            f"window length {x.shape[1]} != model.window_t+1 = {model.window_t + 1}"
        )
    if x.shape[2] != model.input_size:
        raise ShapeError(f"feature width {x.shape[2]} != model input size {model.input_size}")


def forward_batch(model: PerSQModel, x: np.ndarray, mode: str = "eval",
                  rng: np.random.Generator | None = None) -> tuple[np.ndarray, ForwardCache]:
    """Run the network on a (B, T, F) batch. Train mode draws one inverted
    dropout mask per sub-layer output from `rng`; eval mode is deterministic."""
    if mode not in ("train", "eval"):
        raise ValueError(f"mode must be 'train' or 'eval', got {mode!r}")
    x = np.asarray(x, dtype=np.float64)
    _check_input(model, x)
    use_dropout = mode == "train" and model.dropout_rate > 0.0
    if use_dropout and rng is None:
        raise ValueError("train-mode forward with dropout needs an rng")

    layer_inputs, hs, cs, gates_list, masks = [], [], [], [], []
    current = x
    for layer in model.layers:
        layer_inputs.append(current)
        h, c, gates = backend.lstm_forward(current, layer.wx, layer.wh, layer.b)
        hs.append(h)
        cs.append(c)
        gates_list.append(gates)
        if use_dropout:
            keep = 1.0 - model.dropout_rate
            mask = (rng.random(h.shape) < keep).astype(np.float64) / keep
            current = h * mask
        else:
            mask = None
            current = h
        masks.append(mask)
    v = current[:, -1, :]
    pred = v @ model.dense_w.T + model.dense_b
    pred = pred[:, 0]
    cache = ForwardCache(
        x=x, layer_inputs=layer_inputs, hs=hs, cs=cs, gates=gates_list, masks=masks,
        v=v, pred=pred, mode=mode, model_ref=model, model_version=model.version,
    )
    return pred, cache


def backward_batch(model: PerSQModel, cache: ForwardCache, dpred: np.ndarray) -> ModelGrads:
    """Exact gradients via backpropagation through time, given dLoss/dpred."""
    if cache.model_ref is not model or cache.model_version != model.version:
        raise StateError("stale forward cache: model parameters changed since forward")
    dpred = np.asarray(dpred, dtype=np.float64)
    ddense_w = dpred[None, :] @ cache.v
    ddense_b = np.array([dpred.sum()])
    dcurrent_last = dpred[:, None] @ model.dense_w  # gradient on final masked output

    grads_layers: list[LstmLayerParams | None] = [None] * len(model.layers)
    dh_seq = None
    for idx in range(len(model.layers) - 1, -1, -1):
        h = cache.hs[idx]
        if dh_seq is None:
            dh_seq = np.zeros_like(h)
            dh_seq[:, -1, :] = dcurrent_last
        mask = cache.masks[idx]
        if mask is not None:
            dh_seq = dh_seq * mask
        dx, dwx, dwh, db = backend.lstm_backward(
            cache.layer_inputs[idx], h, cache.cs[idx], cache.gates[idx],
            model.layers[idx].wx, model.layers[idx].wh, dh_seq,
        )
        grads_layers[idx] = LstmLayerParams(wx=dwx, wh=dwh, b=db)
        dh_seq = dx
    return ModelGrads(layers=grads_layers, dense_w=ddense_w, dense_b=ddense_b)


def _window_array(window) -> np.ndarray:
    if isinstance(window, WindowedSample):
        return window.window[None, :, :]
    return np.asarray(window, dtype=np.float64)[None, :, :]


def forward(model: PerSQModel, window, mode: str = "eval",
            rng: np.random.Generator | None = None) -> tuple[float, ForwardCache]:
    """Single-sample forward; returns (normalized prediction, cache)."""
    pred, cache = forward_batch(model, _window_array(window), mode=mode, rng=rng)
    return float(pred[0]), cache


def backward(model: PerSQModel, window, target_normalized: float,
             cache: ForwardCache) -> ModelGrads:
    """Gradients of 0.5 * (prediction - target)^2 for one sample."""
    dpred = cache.pred - float(target_normalized)
    return backward_batch(model, cache, dpred)


def predict(model: PerSQModel, window) -> float:
    """Eval-mode prediction mapped back to the percent scale, in [0, 100]."""
    if model.scaler is None:
        raise StateError("model has no fitted scaler attached; train it first")
    normalized, _ = forward(model, window, mode="eval")
    return model.scaler.inverse_transform_sq(normalized)


def predict_batch(model: PerSQModel, x: np.ndarray) -> np.ndarray:
    if model.scaler is None:
        raise StateError("model has no fitted scaler attached; train it first")
    normalized, _ = forward_batch(model, x, mode="eval")
    return np.array([model.scaler.inverse_transform_sq(value) for value in normalized])

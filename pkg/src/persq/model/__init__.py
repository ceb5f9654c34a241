"""PerSQ regressor, training loop, baselines and checkpoints."""

from .backend import BACKEND, available_backends
from .baselines import (
    LinearModel,
    MlpModel,
    baseline_samples,
    fit_linear_baseline,
    fit_mlp_baseline,
    init_mlp,
    mlp_backward,
    mlp_forward,
    predict_linear,
    predict_mlp,
)
from .checkpoint import load_model, save_model
from .network import (
    DEFAULT_HIDDEN_SIZES,
    ForwardCache,
    LstmLayerParams,
    ModelConfig,
    ModelGrads,
    PerSQModel,
    backward,
    backward_batch,
    forward,
    forward_batch,
    init_model,
    predict,
    predict_batch,
)
from .training import Adam, TrainConfig, personalize, train

__all__ = [
    "BACKEND", "available_backends", "DEFAULT_HIDDEN_SIZES",
    "ModelConfig", "PerSQModel", "LstmLayerParams", "ModelGrads", "ForwardCache",
    "init_model", "forward", "forward_batch", "backward", "backward_batch",
    "predict", "predict_batch", "TrainConfig", "Adam", "train", "personalize",
    "LinearModel", "MlpModel", "baseline_samples", "fit_linear_baseline",
    "predict_linear", "init_mlp", "mlp_forward", "mlp_backward",
    "fit_mlp_baseline", "predict_mlp", "save_model", "load_model",
]

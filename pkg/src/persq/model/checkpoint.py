"""Model checkpoints: one self-describing JSON file.

Weight matrices are stored row-major as base64 float64 buffers next to their
declared dimensions; loading validates every dimension against the declared
architecture and rejects inconsistent files.
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

import numpy as np

from ..errors import CheckpointError, ShapeError
from ..features.scaler import Scaler
from .network import LstmLayerParams, PerSQModel

_FORMAT = "persq-checkpoint"
_VERSION = 1


def _pack(array: np.ndarray) -> dict:
    array = np.ascontiguousarray(array, dtype=np.float64)
    return {
        "shape": list(array.shape),
        "data": base64.b64encode(array.tobytes()).decode("ascii"),
    }


def _unpack(entry: dict, expected_shape: tuple[int, ...]) -> np.ndarray:
    shape = tuple(entry["shape"])
    if shape != expected_shape:
        raise CheckpointError(f"dimension mismatch: stored {shape}, expected {expected_shape}")
    try:
        raw = base64.b64decode(entry["data"])
        array = np.frombuffer(raw, dtype=np.float64)
    except ValueError as exc:
        raise CheckpointError(f"corrupt weight payload: {exc}") from None
    if array.size != int(np.prod(expected_shape)):
        raise CheckpointError(
            f"payload size {array.size} does not match declared shape {shape}"
        )
    return array.reshape(expected_shape).copy()


def save_model(model: PerSQModel, path) -> None:
    payload = {
        "format": _FORMAT,
        "version": _VERSION,
        "architecture": {
            "input_size": model.input_size,
            "hidden_sizes": list(model.hidden_sizes),
            "dropout_rate": model.dropout_rate,
            "window_t": model.window_t,
        },
        "seed": model.seed,
        "scaler": model.scaler.to_dict() if model.scaler is not None else None,
        "layers": [
            {"wx": _pack(layer.wx), "wh": _pack(layer.wh), "b": _pack(layer.b)}
            for layer in model.layers
        ],
        "dense": {"w": _pack(model.dense_w), "b": _pack(model.dense_b)},
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def load_model(path) -> PerSQModel:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from None
    if payload.get("format") != _FORMAT or payload.get("version") != _VERSION:
        raise CheckpointError(
            f"unsupported checkpoint format {payload.get('format')!r} "
            f"v{payload.get('version')!r}"
        )
    arch = payload["architecture"]
    hidden = [int(h) for h in arch["hidden_sizes"]]
    if len(payload["layers"]) != len(hidden):
        raise CheckpointError(
            f"{len(payload['layers'])} stored layers but {len(hidden)} declared"
        )
    in_size = int(arch["input_size"])
    layers = []
    for entry, h in zip(payload["layers"], hidden):
        layers.append(LstmLayerParams(
            wx=_unpack(entry["wx"], (4 * h, in_size)),
            wh=_unpack(entry["wh"], (4 * h, h)),
            b=_unpack(entry["b"], (4 * h,)),
        ))
        in_size = h
    dense_w = _unpack(payload["dense"]["w"], (1, hidden[-1]))
    dense_b = _unpack(payload["dense"]["b"], (1,))
    scaler = Scaler.from_dict(payload["scaler"]) if payload.get("scaler") else None
    try:
        return PerSQModel(
            layers=layers,
            dense_w=dense_w,
            dense_b=dense_b,
            dropout_rate=float(arch["dropout_rate"]),
            window_t=int(arch["window_t"]),
            seed=int(payload["seed"]),
            scaler=scaler,
        )
    except (ShapeError, ValueError) as exc:
        raise CheckpointError(str(exc)) from None

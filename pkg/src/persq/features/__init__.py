"""Feature pipeline: scaling, one-hot encoding, carry-over windowing."""

from .scaler import CATEGORICAL_FEATURES, FEATURE_SCHEMA, NUMERIC_FEATURES, Scaler, fit_scaler
from .windows import (
    WindowedSample,
    build_dataset_windows,
    build_windows,
    encode_days,
    stack_windows,
)

__all__ = [
    "FEATURE_SCHEMA", "NUMERIC_FEATURES", "CATEGORICAL_FEATURES",
    "Scaler", "fit_scaler", "WindowedSample", "build_windows",
    "build_dataset_windows", "encode_days", "stack_windows",
]

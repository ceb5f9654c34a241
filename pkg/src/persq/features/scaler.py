"""Min-max scaling and one-hot encoding of day records into model vectors.

Feature schema (fixed order, shared across a dataset):
  activity block   : 11 numeric features (7 activity counters + 4 HR zones)
  wellness block   : 5 numeric features
  demographic block: age (min-max scaled), gender one-hot, chronotype one-hot
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import EncodeError, StateError
from ..ingest.records import (
    ACTIVITY_FIELDS,
    CHRONOTYPES,
    DayRecord,
    GENDERS,
    UserProfile,
    WELLNESS_FIELDS,
)

NUMERIC_FEATURES = ACTIVITY_FIELDS + WELLNESS_FIELDS + ("age",)
CATEGORICAL_FEATURES = {"gender": list(GENDERS), "chronotype": list(CHRONOTYPES)}

FEATURE_SCHEMA = tuple(NUMERIC_FEATURES) + tuple(
    f"{name}={category}"
    for name, categories in CATEGORICAL_FEATURES.items()
    for category in categories
)

_FORMAT = "persq-scaler/1"


@dataclass
class Scaler:
    """Fitted per-feature min/max bounds plus the categorical maps.

    Constant features (min == max) are flagged and encode to 0. The target
    bounds sq_min/sq_max drive normalization and inverse transformation of
    sleep-quality values.
    """

    numeric: dict[str, tuple[float, float]] = field(default_factory=dict)
    categorical: dict[str, list[str]] = field(default_factory=dict)
    constant: frozenset[str] = frozenset()
    sq_min: float | None = None
    sq_max: float | None = None

    @property
    def fitted(self) -> bool:
        return bool(self.numeric) and self.sq_min is not None

    @property
    def schema(self) -> tuple[str, ...]:
        return FEATURE_SCHEMA

    @property
    def size(self) -> int:
        return len(FEATURE_SCHEMA)

    def _require_fitted(self):
        if not self.fitted:
            raise StateError("scaler is not fitted")

    def scale_value(self, name: str, value: float) -> float:
        lo, hi = self.numeric[name]
        if name in self.constant or hi == lo:
            return 0.0
        return min(1.0, max(0.0, (value - lo) / (hi - lo)))

    def encode(self, record: DayRecord, profile: UserProfile) -> np.ndarray:
        """Encode one user-day; raises EncodeError naming any missing variable."""
        self._require_fitted()
        values = np.empty(self.size, dtype=np.float64)
        pos = 0
        for name in ACTIVITY_FIELDS + WELLNESS_FIELDS:
            value = record.get(name)
            if value is None:
                raise EncodeError(f"variable '{name}' missing on {record.date}")
            values[pos] = self.scale_value(name, value)
            pos += 1
        values[pos] = self.scale_value("age", float(profile.age))
        pos += 1
        for name, categories in CATEGORICAL_FEATURES.items():
            chosen = getattr(profile, name)
            for category in categories:
                values[pos] = 1.0 if chosen == category else 0.0
                pos += 1
        return values

    def normalize_sq(self, sq: float) -> float:
        self._require_fitted()
        span = self.sq_max - self.sq_min
        if span == 0:
            return 0.0
        return (sq - self.sq_min) / span

    def inverse_transform_sq(self, normalized: float) -> float:
        """Back to the percent scale, clamped to [0, 100]."""
        self._require_fitted()
        sq = normalized * (self.sq_max - self.sq_min) + self.sq_min
        return min(100.0, max(0.0, sq))

    def to_dict(self) -> dict:
        return {
            "format": _FORMAT,
            "numeric": {name: {"min": lo, "max": hi} for name, (lo, hi) in self.numeric.items()},
            "categorical": dict(self.categorical),
            "constant": sorted(self.constant),
            "sq": {"min": self.sq_min, "max": self.sq_max},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scaler":
        if data.get("format") != _FORMAT:
            raise StateError(f"unsupported scaler format {data.get('format')!r}")
        return cls(
            numeric={name: (v["min"], v["max"]) for name, v in data["numeric"].items()},
            categorical={name: list(v) for name, v in data["categorical"].items()},
            constant=frozenset(data.get("constant", ())),
            sq_min=data["sq"]["min"],
            sq_max=data["sq"]["max"],
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True),
                              encoding="utf-8")

    @classmethod
    def load(cls, path) -> "Scaler":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def fit_scaler(dataset) -> Scaler:
    """Fit min/max bounds over every present value in the given series.

    Fit on training users only when cross-validating; the held-out user's
    values are clamped into [0,1] at encode time.
    """
    dataset = list(dataset)
    if not dataset:
        raise ValueError("cannot fit scaler on an empty dataset")
    mins: dict[str, float] = {}
    maxs: dict[str, float] = {}

    def observe(name: str, value: float):
        if name not in mins or value < mins[name]:
            mins[name] = value
        if name not in maxs or value > maxs[name]:
            maxs[name] = value

    for series in dataset:
        observe("age", float(series.profile.age))
        for day in series.days:
            for name in ACTIVITY_FIELDS + WELLNESS_FIELDS:
                value = day.get(name)
                if value is not None:
                    observe(name, value)
            if day.sq is not None:
                observe("sq", day.sq)

    numeric = {}
    constant = set()
    for name in NUMERIC_FEATURES:
        lo = mins.get(name, 0.0)
        hi = maxs.get(name, 0.0)
        numeric[name] = (lo, hi)
        if lo == hi:
            constant.add(name)

    sq_min = mins.get("sq", 0.0)
    sq_max = maxs.get("sq", 0.0)
    return Scaler(
        numeric=numeric,
        categorical={k: list(v) for k, v in CATEGORICAL_FEATURES.items()},
        constant=frozenset(constant),
        sq_min=sq_min,
        sq_max=sq_max,
    )

"""Immutable startup snapshot the service reads from.

Everything is loaded once; reloading means restarting the process. Requests
never mutate the snapshot, so concurrent handling needs no locking.
"""

from __future__ import annotations

import datetime as dt
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from ..config import AppConfig
from ..feedback.catalog import load_catalog
from ..ingest.canonical import load_canonical
from ..ingest.records import ACTIVITY_FIELDS, DayRecord, UserProfile, UserSeries, WELLNESS_FIELDS
from ..mining.patterns import PatternSets, load_pattern_sets
from ..mining.thresholds import (
    MINED_VARIABLES,
    ThresholdConfig,
    default_thresholds,
    load_thresholds,
)
from ..model.checkpoint import load_model
from ..model.network import PerSQModel

# Day-m variables a what-if request may override, plus the chronotype switch.
MUTABLE_FIELDS = ACTIVITY_FIELDS + WELLNESS_FIELDS
MUTABLE_VARIABLES = MUTABLE_FIELDS + ("chronotype",)


@dataclass(frozen=True)
class ServiceSnapshot:
    users: dict[str, UserSeries]
    model: PerSQModel | None
    patterns: PatternSets | None
    thresholds: ThresholdConfig
    catalog: dict[str, str]
    versions: dict[str, str] = field(default_factory=dict)

    @property
    def window_t(self) -> int:
        return self.model.window_t if self.model is not None else 0

    def series_for(self, user_id: str) -> UserSeries | None:
        return self.users.get(user_id)

    def window_days(self, series: UserSeries, date: dt.date) -> list[DayRecord] | None:
        """Days date-t..date from stored data, or None when any is missing."""
        day_map = series.day_map()
        days = []
        for offset in range(self.window_t, -1, -1):
            day = day_map.get(date - dt.timedelta(days=offset))
            if day is None:
                return None
            days.append(day)
        return days

    def variable_meta(self) -> dict:
        """Slider metadata for the dashboard: native-unit bounds per mutable
        variable plus its discretization cuts."""
        scaler = self.model.scaler if self.model is not None else None
        meta = {}
        for field_name in MUTABLE_FIELDS:
            entry: dict = {"mutable": True}
            if scaler is not None and field_name in scaler.numeric:
                lo, hi = scaler.numeric[field_name]
                entry["min"] = lo
                entry["max"] = hi
            item_variable = MINED_VARIABLES.get(field_name)
            if item_variable and item_variable in self.thresholds.variable_cuts:
                entry["item_variable"] = item_variable
                entry["cuts"] = list(self.thresholds.variable_cuts[item_variable])
            meta[field_name] = entry
        meta["chronotype"] = {"mutable": True, "categories": ["A", "B"]}
        return meta


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:12]


def load_snapshot(cfg: AppConfig) -> ServiceSnapshot:
    cfg.validate_for_service()
    dataset = load_canonical(cfg.data_dir)
    users = {series.user_id: series for series in dataset}

    versions = {}
    model = None
    if cfg.model_path is not None:
        model = load_model(cfg.model_path)
        versions["model"] = _digest(Path(cfg.model_path))

    patterns = None
    if cfg.patterns_dir is not None:
        patterns = load_pattern_sets(cfg.patterns_dir)
        joined = "".join(
            sorted(_digest(p) for p in Path(cfg.patterns_dir).glob("patterns_*.csv"))
        )
        versions["patterns"] = hashlib.sha256(joined.encode()).hexdigest()[:12]

    base = default_thresholds(dataset)
    thresholds = (
        load_thresholds(cfg.thresholds_path, base=base)
        if cfg.thresholds_path is not None else base
    )
    catalog = load_catalog(cfg.catalog_path)
    return ServiceSnapshot(
        users=users, model=model, patterns=patterns,
        thresholds=thresholds, catalog=catalog, versions=versions,
    )


def apply_overrides(day: DayRecord, profile: UserProfile,
                    overrides: dict) -> tuple[DayRecord, UserProfile]:
    """Hypothetical day m: native-unit overrides on mutable variables only.

    Raises ValueError on unknown or immutable variables and propagates record
    validation errors (out-of-range values), which the service maps to 400.
    """
    field_changes = {}
    new_profile = profile
    for name, value in overrides.items():
        if name == "chronotype":
            if value not in ("A", "B"):
                raise ValueError(f"chronotype must be 'A' or 'B', got {value!r}")
            new_profile = UserProfile(
                user_id=profile.user_id, age=profile.age,
                gender=profile.gender, chronotype=value,
            )
        elif name in MUTABLE_FIELDS:
            try:
                field_changes[name] = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"override {name!r} must be numeric, got {value!r}") from None
        else:
            raise ValueError(f"variable {name!r} is unknown or immutable")
    return day.replace(**field_changes), new_profile

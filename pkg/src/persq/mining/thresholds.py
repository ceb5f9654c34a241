"""Discretization thresholds for life-event variables and SQ groups.

Continuous variables get two cut points forming {low, normal, high} levels;
defaults come from empirical quantiles and any variable can be overridden
from a YAML config (`variable: [cut1, cut2]` plus an `sq:` entry). Intervals
are half-open: a value exactly on a cut belongs to the upper level.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

# Canonical DayRecord field -> item variable name used in patterns/feedback.
MINED_VARIABLES = {
    "calories": "calories",
    "distance": "distance",
    "steps": "numsteps",
    "sedentary_min": "sedentary",
    "lightly_active_min": "lightAct",
    "moderately_active_min": "moderAct",
    "very_active_min": "veryAct",
    "zone0_min": "InZone0",
    "zone1_min": "InZone1",
    "zone2_min": "InZone2",
    "zone3_min": "InZone3",
    "fatigue": "fatigue",
    "mood": "mood",
    "readiness": "readiness",
    "soreness": "soreness",
    "stress": "stress",
}
ITEM_TO_FIELD = {item: field_name for field_name, item in MINED_VARIABLES.items()}
CHRONOTYPE_VARIABLE = "AorB"

LEVELS = ("low", "normal", "high")
LEVEL_RANK = {level: rank for rank, level in enumerate(LEVELS)}
# Chronotype A (early riser) is the level feedback steers towards.
CHRONOTYPE_RANK = {"B": 0, "A": 1}

# Default quantiles: thirds for life-event variables; SQ group cuts sized to
# a roughly 16% / 63.5% / 20.5% low/normal/high split.
VARIABLE_QUANTILES = (1.0 / 3.0, 2.0 / 3.0)
SQ_QUANTILES = (0.16, 0.795)


@dataclass(frozen=True)
class ThresholdConfig:
    variable_cuts: dict[str, tuple[float, float]]
    sq_cuts: tuple[float, float]
    excluded: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for name, cuts in {**self.variable_cuts, "sq": self.sq_cuts}.items():
            if len(cuts) != 2 or not cuts[0] <= cuts[1]:
                raise ValueError(f"cuts for {name!r} must be two non-decreasing values, got {cuts}")

    def level_for(self, variable: str, value: float) -> str:
        cut1, cut2 = self.variable_cuts[variable]
        return classify(value, cut1, cut2)

    def sq_group(self, sq: float) -> str:
        return classify(sq, *self.sq_cuts)


def classify(value: float, cut1: float, cut2: float) -> str:
    if value < cut1:
        return "low"
    if value < cut2:
        return "normal"
    return "high"


def default_thresholds(dataset) -> ThresholdConfig:
    """Empirical-quantile cuts over every user-day in the dataset."""
    dataset = list(dataset)
    if not dataset:
        raise ValueError("cannot derive thresholds from an empty dataset")
    values: dict[str, list[float]] = {item: [] for item in MINED_VARIABLES.values()}
    sq_values: list[float] = []
    for series in dataset:
        for day in series.days:
            for field_name, item in MINED_VARIABLES.items():
                value = day.get(field_name)
                if value is not None:
                    values[item].append(value)
            if day.sq is not None:
                sq_values.append(day.sq)
    if not sq_values:
        raise ValueError("dataset has no ground-truth SQ values")

    variable_cuts = {}
    excluded = []
    for item, observed in values.items():
        if not observed or min(observed) == max(observed):
            warnings.warn(f"variable {item}: constant or absent, excluded from itemsets")
            excluded.append(item)
            continue
        cut1, cut2 = np.quantile(observed, VARIABLE_QUANTILES)
        variable_cuts[item] = (float(cut1), float(cut2))
    sq_cut1, sq_cut2 = np.quantile(sq_values, SQ_QUANTILES)
    return ThresholdConfig(
        variable_cuts=variable_cuts,
        sq_cuts=(float(sq_cut1), float(sq_cut2)),
        excluded=tuple(excluded),
    )


def save_thresholds(config: ThresholdConfig, path) -> None:
    data = {name: [cut1, cut2] for name, (cut1, cut2) in sorted(config.variable_cuts.items())}
    data["sq"] = list(config.sq_cuts)
    Path(path).write_text(yaml.safe_dump(data, sort_keys=True), encoding="utf-8")


def load_thresholds(path, base: ThresholdConfig | None = None) -> ThresholdConfig:
    """Read cuts from YAML; with `base` given, entries override its defaults."""
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    known = set(MINED_VARIABLES.values())
    variable_cuts = dict(base.variable_cuts) if base else {}
    sq_cuts = base.sq_cuts if base else None
    for name, cuts in data.items():
        if name == "sq":
            sq_cuts = (float(cuts[0]), float(cuts[1]))
        elif name in known:
            variable_cuts[name] = (float(cuts[0]), float(cuts[1]))
        else:
            raise ValueError(f"{path}: unknown variable {name!r} in threshold config")
    if sq_cuts is None:
        raise ValueError(f"{path}: threshold config needs an 'sq' entry")
    excluded = tuple(base.excluded) if base else ()
    excluded = tuple(name for name in excluded if name not in variable_cuts)
    return ThresholdConfig(variable_cuts=variable_cuts, sq_cuts=sq_cuts, excluded=excluded)

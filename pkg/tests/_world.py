"""The hand-built case-study world: a deterministic snapshot predicting SQ 75
('low') for user u01 on 2024-03-10, where the best-matching pattern leaves
numsteps and distance unmatched. Shared by the feedback/service/acceptance
tests and by the frontend fixture recorder."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from persq.feedback.catalog import default_catalog
from persq.features.scaler import Scaler
from persq.ingest.records import DayRecord, UserProfile, UserSeries
from persq.mining.patterns import Pattern, PatternSets
from persq.mining.thresholds import ThresholdConfig
from persq.mining.transactions import Item
from persq.model.network import ModelConfig, PerSQModel, init_model
from persq.service.snapshot import ServiceSnapshot

from _helpers import full_day


def fixture_scaler() -> Scaler:
    numeric = {
        "calories": (1000.0, 4000.0), "distance": (0.0, 1500000.0),
        "steps": (0.0, 20000.0), "sedentary_min": (400.0, 1100.0),
        "lightly_active_min": (50.0, 400.0), "moderately_active_min": (0.0, 120.0),
        "very_active_min": (0.0, 120.0), "zone0_min": (600.0, 1400.0),
        "zone1_min": (0.0, 300.0), "zone2_min": (0.0, 120.0), "zone3_min": (0.0, 60.0),
        "fatigue": (1.0, 5.0), "mood": (1.0, 5.0), "readiness": (1.0, 10.0),
        "soreness": (1.0, 5.0), "stress": (1.0, 5.0), "age": (20.0, 60.0),
    }
    return Scaler(
        numeric=numeric,
        categorical={"gender": ["male", "female"], "chronotype": ["A", "B"]},
        constant=frozenset(),
        sq_min=70.0,
        sq_max=95.0,
    )


def fixture_thresholds() -> ThresholdConfig:
    return ThresholdConfig(
        variable_cuts={
            "calories": (1800.0, 3000.0), "distance": (450000.0, 800000.0),
            "numsteps": (6000.0, 10000.0), "sedentary": (600.0, 900.0),
            "lightAct": (150.0, 300.0), "moderAct": (15.0, 45.0),
            "veryAct": (20.0, 50.0), "InZone0": (800.0, 1200.0),
            "InZone1": (60.0, 180.0), "InZone2": (15.0, 45.0),
            "InZone3": (10.0, 25.0), "fatigue": (2.0, 4.0), "mood": (2.0, 4.0),
            "readiness": (4.0, 8.0), "soreness": (2.0, 4.0), "stress": (2.0, 4.0),
        },
        sq_cuts=(80.0, 90.0),
    )


def _items(*texts) -> tuple[Item, ...]:
    return tuple(Item.parse(t) for t in texts)


def fixture_patterns() -> PatternSets:
    p_wellness = Pattern(
        items=_items("soreness_normal", "mood_normal", "stress_normal", "fatigue_normal"),
        support_count=272, group="normal",
    )
    p_activity = Pattern(
        items=_items("numsteps_normal", "distance_normal", "soreness_normal",
                     "InZone3_normal", "veryAct_normal"),
        support_count=86, group="high",
    )
    p_lifestyle = Pattern(
        items=_items("AorB_A", "numsteps_normal", "InZone3_normal", "distance_normal"),
        support_count=76, group="high",
    )
    return PatternSets(low=(), normal=(p_wellness,), high=(p_activity, p_lifestyle))


def zero_model(scaler: Scaler, bias: float, window_t: int = 1) -> PerSQModel:
    """All-zero network whose prediction is exactly the dense bias."""
    model = init_model(ModelConfig(
        input_size=scaler.size, hidden_sizes=(3, 3, 2), dropout_rate=0.0,
        window_t=window_t, seed=0,
    ))
    for p in model.param_arrays():
        p[...] = 0.0
    model.dense_b[0] = bias
    model.scaler = scaler
    model.version += 1
    return model


@dataclass
class CaseStudyWorld:
    snapshot: ServiceSnapshot
    profile: UserProfile
    day_prev: DayRecord
    day_m: DayRecord
    patterns: PatternSets
    thresholds: ThresholdConfig
    catalog: dict
    target_date: dt.date


def build_case_study() -> CaseStudyWorld:
    scaler = fixture_scaler()
    thresholds = fixture_thresholds()
    patterns = fixture_patterns()
    catalog = default_catalog()
    # normalized 0.2 -> 0.2 * (95 - 70) + 70 = 75.0 exactly
    model = zero_model(scaler, bias=0.2, window_t=1)

    profile = UserProfile(user_id="u01", age=34, gender="male", chronotype="B")
    target_date = dt.date(2024, 3, 10)
    day_prev = full_day(target_date - dt.timedelta(days=1))
    day_m = full_day(
        target_date,
        calories=2000.0, distance=300000.0, steps=4000.0, sedentary_min=800.0,
        lightly_active_min=200.0, moderately_active_min=20.0, very_active_min=30.0,
        zone0_min=1000.0, zone1_min=100.0, zone2_min=25.0, zone3_min=15.0,
        fatigue=5.0, mood=1.0, readiness=5.0, soreness=3.0, stress=5.0,
        minutes_asleep=None, time_in_bed=None,
    )
    series = UserSeries(profile=profile, days=(day_prev, day_m))
    snapshot = ServiceSnapshot(
        users={"u01": series}, model=model, patterns=patterns,
        thresholds=thresholds, catalog=catalog,
        versions={"model": "fixture", "patterns": "fixture"},
    )
    return CaseStudyWorld(
        snapshot=snapshot, profile=profile, day_prev=day_prev, day_m=day_m,
        patterns=patterns, thresholds=thresholds, catalog=catalog,
        target_date=target_date,
    )

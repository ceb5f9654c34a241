"""Adapter from the original PMData layout to the canonical schemas.

PMData ships one directory per participant (p01..p16) with three sources.
Mapping to canonical fields:

    fitbit/calories.json                   -> calories        (per-minute entries, summed per day)
    fitbit/distance.json                   -> distance        (centimeters, per-minute, summed)
    fitbit/steps.json                      -> steps           (per-minute, summed)
    fitbit/sedentary_minutes.json          -> sedentary_min   (daily totals)
    fitbit/lightly_active_minutes.json     -> lightly_active_min
    fitbit/moderately_active_minutes.json  -> moderately_active_min
    fitbit/very_active_minutes.json        -> very_active_min
    fitbit/time_in_heart_rate_zones.json   -> zone0..zone3_min via valuesInZones
         BELOW_DEFAULT_ZONE_1 -> zone0_min, IN_DEFAULT_ZONE_1..3 -> zone1..3_min
    fitbit/sleep.json                      -> minutes_asleep/time_in_bed keyed by
         dateOfSleep (wake-up date); multi-segment nights summed downstream
    pmsys/wellness.csv                     -> fatigue, mood, readiness, soreness,
         stress keyed by effective_time_frame (extra columns ignored)

Fitbit scalar files use `[{"dateTime": "MM/DD/YY HH:MM:SS", "value": ...}]`.
Demographics (age, gender, chronotype A/B) are not machine-readable in
PMData; supply them as a canonical profile file per participant.

Wellness values outside the declared scales (PMSys allows readiness 0,
our contract is 1-10) are treated as not-reported and skipped.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from pathlib import Path

from ..errors import SchemaError
from .parsing import RawSeries
from .records import UserProfile, WELLNESS_RANGES

SCALAR_FITBIT_FILES = {
    "calories.json": "calories",
    "distance.json": "distance",
    "steps.json": "steps",
    "sedentary_minutes.json": "sedentary_min",
    "lightly_active_minutes.json": "lightly_active_min",
    "moderately_active_minutes.json": "moderately_active_min",
    "very_active_minutes.json": "very_active_min",
}
ZONE_KEYS = {
    "BELOW_DEFAULT_ZONE_1": "zone0_min",
    "IN_DEFAULT_ZONE_1": "zone1_min",
    "IN_DEFAULT_ZONE_2": "zone2_min",
    "IN_DEFAULT_ZONE_3": "zone3_min",
}
PMSYS_WELLNESS_COLUMNS = ("fatigue", "mood", "readiness", "soreness", "stress")


def _fitbit_stamp(text: str) -> dt.datetime:
    return dt.datetime.strptime(text, "%m/%d/%y %H:%M:%S")


def _iso_stamp(text: str) -> dt.datetime:
    stamp = dt.datetime.fromisoformat(text.replace("Z", "+00:00"))
    return stamp.replace(tzinfo=None)


def convert_pmdata_user(participant_dir, profile: UserProfile) -> RawSeries:
    """Read one PMData participant directory into a raw (pre-resample) series."""
    participant_dir = Path(participant_dir)
    fitbit = participant_dir / "fitbit"
    if not fitbit.is_dir():
        raise SchemaError(f"{participant_dir}: no fitbit/ subdirectory")
    raw = RawSeries(profile=profile)

    for file_name, field_name in SCALAR_FITBIT_FILES.items():
        path = fitbit / file_name
        if not path.exists():
            continue  # whole-variable absence is the exclusion rule's job
        for entry in json.loads(path.read_text(encoding="utf-8")):
            stamp = _fitbit_stamp(entry["dateTime"])
            raw.activity.append((stamp, {field_name: float(entry["value"])}))

    zones_path = fitbit / "time_in_heart_rate_zones.json"
    if zones_path.exists():
        for entry in json.loads(zones_path.read_text(encoding="utf-8")):
            stamp = _fitbit_stamp(entry["dateTime"])
            zones = entry["value"]["valuesInZones"]
            values = {
                field: float(zones[key]) for key, field in ZONE_KEYS.items() if key in zones
            }
            if values:
                raw.activity.append((stamp, values))

    sleep_path = fitbit / "sleep.json"
    if sleep_path.exists():
        for entry in json.loads(sleep_path.read_text(encoding="utf-8")):
            wake_date = dt.date.fromisoformat(entry["dateOfSleep"])
            raw.sleep.append(
                (wake_date, float(entry["minutesAsleep"]), float(entry["timeInBed"]))
            )

    wellness_path = participant_dir / "pmsys" / "wellness.csv"
    if wellness_path.exists():
        with open(wellness_path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if "effective_time_frame" not in (reader.fieldnames or ()):
                raise SchemaError(f"{wellness_path}: missing effective_time_frame column")
            for row in reader:
                stamp = _iso_stamp(row["effective_time_frame"])
                values = {}
                for column in PMSYS_WELLNESS_COLUMNS:
                    cell = (row.get(column) or "").strip()
                    if not cell:
                        continue
                    value = float(cell)
                    lo, hi = WELLNESS_RANGES[column]
                    if lo <= value <= hi:
                        values[column] = value
                raw.wellness.append((stamp, values))

    return raw


def convert_pmdata_dir(pmdata_root, profiles: dict[str, UserProfile]) -> list[RawSeries]:
    """Convert every participant directory that has a supplied profile.

    `profiles` maps directory name (p01, p02, ...) to its UserProfile.
    """
    pmdata_root = Path(pmdata_root)
    converted = []
    for name in sorted(profiles):
        participant_dir = pmdata_root / name
        if not participant_dir.is_dir():
            raise SchemaError(f"{participant_dir}: participant directory not found")
        converted.append(convert_pmdata_user(participant_dir, profiles[name]))
    return converted

"""Parsers for the canonical source files of one user.

Column contracts:
  activity CSV : date,calories,distance,steps,sedentary_min,lightly_min,
                 moderately_min,very_min,zone0_min,zone1_min,zone2_min,zone3_min
                 (a `datetime` column may replace `date` for sub-day entries)
  wellness CSV : datetime,fatigue,mood,readiness,soreness,stress
  sleep CSV    : date,minutes_asleep,time_in_bed   (date = wake-up date)
  profile file : `key: value` lines with keys user_id, age, gender, chronotype

Unknown columns are ignored. Empty cells mean "not reported".
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import RowError, SchemaError
from .records import CHRONOTYPES, GENDERS, UserProfile, WELLNESS_RANGES

# Activity CSV column -> DayRecord field.
ACTIVITY_COLUMNS = {
    "calories": "calories",
    "distance": "distance",
    "steps": "steps",
    "sedentary_min": "sedentary_min",
    "lightly_min": "lightly_active_min",
    "moderately_min": "moderately_active_min",
    "very_min": "very_active_min",
    "zone0_min": "zone0_min",
    "zone1_min": "zone1_min",
    "zone2_min": "zone2_min",
    "zone3_min": "zone3_min",
}
WELLNESS_COLUMNS = ("fatigue", "mood", "readiness", "soreness", "stress")


@dataclass
class RawSeries:
    """Parsed sources for one user, prior to day-interval resampling.

    Activity and wellness entries carry timestamps (sub-day granularity is
    retained); sleep entries are already keyed by wake-up date.
    """

    profile: UserProfile
    activity: list[tuple[dt.datetime, dict[str, float]]] = field(default_factory=list)
    wellness: list[tuple[dt.datetime, dict[str, float]]] = field(default_factory=list)
    sleep: list[tuple[dt.date, float, float]] = field(default_factory=list)


def _parse_date(text, path, line, column) -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError as exc:
        raise RowError(path, line, column, f"bad date {text!r}: {exc}") from None


def _parse_datetime(text, path, line, column) -> dt.datetime:
    try:
        return dt.datetime.fromisoformat(text.strip())
    except ValueError as exc:
        raise RowError(path, line, column, f"bad timestamp {text!r}: {exc}") from None


def _parse_float(text, path, line, column, minimum=None, maximum=None):
    try:
        value = float(text)
    except ValueError:
        raise RowError(path, line, column, f"not a number: {text!r}") from None
    if minimum is not None and value < minimum:
        raise RowError(path, line, column, f"value {value:g} below minimum {minimum:g}")
    if maximum is not None and value > maximum:
        raise RowError(path, line, column, f"value {value:g} above maximum {maximum:g}")
    return value


def _open_reader(path: Path, mandatory: set[str], either: tuple[str, ...] = ()):
    handle = open(path, newline="", encoding="utf-8")
    reader = csv.DictReader(handle)
    header = set(reader.fieldnames or ())
    missing = mandatory - header
    if missing:
        handle.close()
        raise SchemaError(f"{path}: missing mandatory column(s) {sorted(missing)}")
    if either and not header.intersection(either):
        handle.close()
        raise SchemaError(f"{path}: needs one of {list(either)}")
    return handle, reader


def parse_activity_file(path) -> list[tuple[dt.datetime, dict[str, float]]]:
    """Rows become (timestamp, field values); date-only rows get midnight."""
    path = Path(path)
    entries = []
    handle, reader = _open_reader(path, set(ACTIVITY_COLUMNS), either=("date", "datetime"))
    with handle:
        for row in reader:
            line = reader.line_num
            if row.get("datetime"):
                stamp = _parse_datetime(row["datetime"], path, line, "datetime")
            elif row.get("date"):
                day = _parse_date(row["date"], path, line, "date")
                stamp = dt.datetime.combine(day, dt.time.min)
            else:
                raise RowError(path, line, "date", "row has neither date nor datetime")
            values = {}
            for column, field_name in ACTIVITY_COLUMNS.items():
                cell = (row.get(column) or "").strip()
                if cell:
                    values[field_name] = _parse_float(cell, path, line, column, minimum=0.0)
            entries.append((stamp, values))
    return entries


def parse_wellness_file(path) -> list[tuple[dt.datetime, dict[str, float]]]:
    path = Path(path)
    entries = []
    handle, reader = _open_reader(path, {"datetime", *WELLNESS_COLUMNS})
    with handle:
        for row in reader:
            line = reader.line_num
            stamp = _parse_datetime(row["datetime"], path, line, "datetime")
            values = {}
            for column in WELLNESS_COLUMNS:
                cell = (row.get(column) or "").strip()
                if cell:
                    lo, hi = WELLNESS_RANGES[column]
                    values[column] = _parse_float(cell, path, line, column, lo, hi)
            entries.append((stamp, values))
    return entries


def parse_sleep_file(path) -> list[tuple[dt.date, float, float]]:
    path = Path(path)
    entries = []
    handle, reader = _open_reader(path, {"date", "minutes_asleep", "time_in_bed"})
    with handle:
        for row in reader:
            line = reader.line_num
            day = _parse_date(row["date"], path, line, "date")
            asleep = _parse_float(row["minutes_asleep"], path, line, "minutes_asleep", 0.0)
            in_bed = _parse_float(row["time_in_bed"], path, line, "time_in_bed", 0.0)
            if asleep > in_bed:
                raise RowError(
                    path, line, "minutes_asleep",
                    f"minutes_asleep {asleep:g} exceeds time_in_bed {in_bed:g}",
                )
            entries.append((day, asleep, in_bed))
    return entries


def parse_profile_file(path) -> UserProfile:
    path = Path(path)
    values = {}
    for number, raw_line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise RowError(path, number, "-", f"expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        values[key.strip()] = value.strip()
    for key in ("user_id", "age", "gender", "chronotype"):
        if key not in values:
            raise SchemaError(f"{path}: missing profile key {key!r}")
    try:
        age = int(values["age"])
    except ValueError:
        raise SchemaError(f"{path}: age must be an integer, got {values['age']!r}") from None
    try:
        return UserProfile(
            user_id=values["user_id"],
            age=age,
            gender=values["gender"],
            chronotype=values["chronotype"],
        )
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def parse_sources(activity_files, wellness_file, sleep_file, profile_file) -> RawSeries:
    """Parse one user's source files. Sub-day rows are retained raw for
    resample_daily; duplicate dates are aggregated there, not here."""
    raw = RawSeries(profile=parse_profile_file(profile_file))
    for activity_file in sorted(Path(p) for p in activity_files):
        raw.activity.extend(parse_activity_file(activity_file))
    if wellness_file is not None:
        raw.wellness = parse_wellness_file(wellness_file)
    if sleep_file is not None:
        raw.sleep = parse_sleep_file(sleep_file)
    return raw

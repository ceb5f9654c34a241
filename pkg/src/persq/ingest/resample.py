"""Day-interval resampling of raw multi-source entries.

Aggregation rules:
  * additive quantities (calories, distance, steps, every minute counter)
    are summed per calendar day of their timestamp;
  * wellness self-reports reduce to the last report of the day;
  * sleep segments are summed per wake-up date (naps included).
"""

from __future__ import annotations

import datetime as dt

from .parsing import RawSeries
from .records import ACTIVITY_FIELDS, DayRecord, UserSeries, WELLNESS_FIELDS


def _series_to_raw(series: UserSeries) -> RawSeries:
    """View already-daily data as raw entries (midnight timestamps)."""
    raw = RawSeries(profile=series.profile)
    for day in series.days:
        stamp = dt.datetime.combine(day.date, dt.time.min)
        activity = {
            name: day.get(name) for name in ACTIVITY_FIELDS if day.get(name) is not None
        }
        if activity:
            raw.activity.append((stamp, activity))
        wellness = {name: day.get(name) for name in WELLNESS_FIELDS if day.get(name) is not None}
        if wellness:
            raw.wellness.append((stamp, wellness))
        if day.minutes_asleep is not None and day.time_in_bed is not None:
            raw.sleep.append((day.date, day.minutes_asleep, day.time_in_bed))
    return raw


def resample_daily(raw: RawSeries | UserSeries) -> UserSeries:
    """Fuse raw entries into one DayRecord per calendar day.

    Idempotent: resampling an already-daily series returns an equal series.
    Days with no data for a variable simply leave it absent.
    """
    if isinstance(raw, UserSeries):
        raw = _series_to_raw(raw)

    by_day: dict[dt.date, dict[str, float]] = {}

    def bucket(day: dt.date) -> dict[str, float]:
        return by_day.setdefault(day, {})

    for stamp, values in raw.activity:
        day_values = bucket(stamp.date())
        for name, value in values.items():
            day_values[name] = day_values.get(name, 0.0) + value

    # Last report of the day wins; ties on timestamp resolve to file order.
    wellness_seen: dict[dt.date, dt.datetime] = {}
    for stamp, values in raw.wellness:
        day = stamp.date()
        last = wellness_seen.get(day)
        if last is not None and stamp < last:
            continue
        wellness_seen[day] = stamp
        day_values = bucket(day)
        for name in WELLNESS_FIELDS:
            day_values.pop(name, None)
        day_values.update(values)

    for day, asleep, in_bed in raw.sleep:
        day_values = bucket(day)
        day_values["minutes_asleep"] = day_values.get("minutes_asleep", 0.0) + asleep
        day_values["time_in_bed"] = day_values.get("time_in_bed", 0.0) + in_bed

    days = tuple(
        DayRecord(date=day, **by_day[day]) for day in sorted(by_day)
    )
    return UserSeries(profile=raw.profile, days=days)

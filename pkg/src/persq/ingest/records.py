"""Core domain records: user profiles, fused day records, per-user series."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, fields

from ..errors import DomainError

GENDERS = ("male", "female")
CHRONOTYPES = ("A", "B")

# Day-level variables, in canonical CSV column order.
ACTIVITY_FIELDS = (
    "calories",
    "distance",
    "steps",
    "sedentary_min",
    "lightly_active_min",
    "moderately_active_min",
    "very_active_min",
    "zone0_min",
    "zone1_min",
    "zone2_min",
    "zone3_min",
)
WELLNESS_FIELDS = ("fatigue", "mood", "readiness", "soreness", "stress")
SLEEP_FIELDS = ("minutes_asleep", "time_in_bed")
DAY_FIELDS = ACTIVITY_FIELDS + WELLNESS_FIELDS + SLEEP_FIELDS

# Inclusive bounds for the self-reported wellness scales.
WELLNESS_RANGES = {
    "fatigue": (1.0, 5.0),
    "mood": (1.0, 5.0),
    "readiness": (1.0, 10.0),
    "soreness": (1.0, 5.0),
    "stress": (1.0, 5.0),
}


def compute_sq(minutes_asleep: float, time_in_bed: float) -> float:
    """Sleep quality as sleep efficiency, in percent of time in bed."""
    if time_in_bed <= 0:
        raise DomainError(f"time_in_bed must be positive, got {time_in_bed}")
    if minutes_asleep < 0 or minutes_asleep > time_in_bed:
        raise DomainError(
            f"minutes_asleep must be in [0, time_in_bed], got {minutes_asleep} vs {time_in_bed}"
        )
    # divide first: the ratio is <= 1.0 exactly, so the result stays <= 100.0
    # (100*a/b rounds above 100 for some a == b)
    return 100.0 * (minutes_asleep / time_in_bed)


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    age: int
    gender: str
    chronotype: str

    def __post_init__(self):
        if not self.user_id:
            raise ValueError("user_id must be non-empty")
        if not isinstance(self.age, int) or self.age <= 0:
            raise ValueError(f"age must be a positive integer, got {self.age!r}")
        if self.gender not in GENDERS:
            raise ValueError(f"gender must be one of {GENDERS}, got {self.gender!r}")
        if self.chronotype not in CHRONOTYPES:
            raise ValueError(f"chronotype must be one of {CHRONOTYPES}, got {self.chronotype!r}")


@dataclass(frozen=True)
class DayRecord:
    """One fused user-day. Absent variables are None; sq is derived."""

    date: dt.date
    calories: float | None = None
    distance: float | None = None
    steps: float | None = None
    sedentary_min: float | None = None
    lightly_active_min: float | None = None
    moderately_active_min: float | None = None
    very_active_min: float | None = None
    zone0_min: float | None = None
    zone1_min: float | None = None
    zone2_min: float | None = None
    zone3_min: float | None = None
    fatigue: float | None = None
    mood: float | None = None
    readiness: float | None = None
    soreness: float | None = None
    stress: float | None = None
    minutes_asleep: float | None = None
    time_in_bed: float | None = None

    def __post_init__(self):
        for name in ACTIVITY_FIELDS + SLEEP_FIELDS:
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0, got {value} on {self.date}")
        for name, (lo, hi) in WELLNESS_RANGES.items():
            value = getattr(self, name)
            if value is not None and not lo <= value <= hi:
                raise ValueError(
                    f"{name} must be in [{lo:g}, {hi:g}], got {value} on {self.date}"
                )
        if self.minutes_asleep is not None and self.time_in_bed is not None:
            if self.minutes_asleep > self.time_in_bed:
                raise ValueError(
                    f"minutes_asleep > time_in_bed ({self.minutes_asleep} > {self.time_in_bed}) "
                    f"on {self.date}"
                )

    @property
    def sq(self) -> float | None:
        """Present iff both sleep fields are present with time_in_bed > 0."""
        if self.minutes_asleep is None or self.time_in_bed is None or self.time_in_bed <= 0:
            return None
        return compute_sq(self.minutes_asleep, self.time_in_bed)

    def get(self, name: str) -> float | None:
        return getattr(self, name)

    def replace(self, **changes) -> "DayRecord":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return DayRecord(**values)


@dataclass(frozen=True)
class UserSeries:
    """Date-ordered day records for one user. Gaps are allowed."""

    profile: UserProfile
    days: tuple[DayRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "days", tuple(self.days))
        for prev, cur in zip(self.days, self.days[1:]):
            if cur.date <= prev.date:
                raise ValueError(
                    f"days must have strictly increasing dates; "
                    f"{cur.date} follows {prev.date} for user {self.profile.user_id}"
                )

    @property
    def user_id(self) -> str:
        return self.profile.user_id

    def day_map(self) -> dict[dt.date, DayRecord]:
        return {d.date: d for d in self.days}

    def gaps(self) -> list[dt.date]:
        """Calendar days missing between the first and last recorded dates."""
        missing = []
        for prev, cur in zip(self.days, self.days[1:]):
            step = prev.date + dt.timedelta(days=1)
            while step < cur.date:
                missing.append(step)
                step += dt.timedelta(days=1)
        return missing

"""Whole-variable exclusion rule applied after resampling.

A user missing an entire required variable over the whole recording period
cannot be modeled and is dropped; sporadic missing days are fine and are
handled downstream by window skipping.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyDatasetError
from .records import ACTIVITY_FIELDS, UserSeries, WELLNESS_FIELDS

REQUIRED_VARIABLES = ACTIVITY_FIELDS + WELLNESS_FIELDS + ("minutes_asleep", "time_in_bed")


@dataclass(frozen=True)
class Exclusion:
    user_id: str
    missing_variables: tuple[str, ...]

    @property
    def reason(self) -> str:
        return "missing entire variable(s): " + ", ".join(self.missing_variables)


def missing_variables(series: UserSeries) -> tuple[str, ...]:
    present = set()
    for day in series.days:
        for name in REQUIRED_VARIABLES:
            if day.get(name) is not None:
                present.add(name)
    return tuple(name for name in REQUIRED_VARIABLES if name not in present)


def apply_exclusions(all_series) -> tuple[list[UserSeries], list[Exclusion]]:
    """Returns (retained series, exclusion report). Retained series are the
    same objects passed in, untouched."""
    all_series = list(all_series)
    if not all_series:
        raise EmptyDatasetError("no users in input dataset")
    retained, excluded = [], []
    for series in all_series:
        missing = missing_variables(series)
        if missing:
            excluded.append(Exclusion(series.user_id, missing))
        else:
            retained.append(series)
    if not retained:
        raise EmptyDatasetError(
            f"all {len(all_series)} users excluded: "
            + "; ".join(f"{e.user_id} ({e.reason})" for e in excluded)
        )
    return retained, excluded

"""Lifelog ingestion: parsing, day-interval resampling, exclusions, canonical IO."""

from __future__ import annotations

from pathlib import Path

from ..errors import EmptyDatasetError, SchemaError
from .canonical import load_canonical, write_canonical
from .exclusions import Exclusion, apply_exclusions, missing_variables
from .parsing import RawSeries, parse_sources
from .records import (
    ACTIVITY_FIELDS,
    DAY_FIELDS,
    DayRecord,
    SLEEP_FIELDS,
    UserProfile,
    UserSeries,
    WELLNESS_FIELDS,
    compute_sq,
)
from .resample import resample_daily

__all__ = [
    "ACTIVITY_FIELDS", "DAY_FIELDS", "SLEEP_FIELDS", "WELLNESS_FIELDS",
    "DayRecord", "UserProfile", "UserSeries", "RawSeries", "Exclusion",
    "compute_sq", "parse_sources", "resample_daily", "apply_exclusions",
    "missing_variables", "write_canonical", "load_canonical",
    "load_user_dir", "load_data_dir",
]


def load_user_dir(user_dir) -> UserSeries:
    """Parse and resample one user directory laid out as:

        <user_dir>/activity*.csv  (one or more)
        <user_dir>/wellness.csv
        <user_dir>/sleep.csv
        <user_dir>/profile.txt
    """
    user_dir = Path(user_dir)
    activity_files = sorted(user_dir.glob("activity*.csv"))
    if not activity_files:
        raise SchemaError(f"{user_dir}: no activity*.csv files")
    profile_path = user_dir / "profile.txt"
    if not profile_path.exists():
        raise SchemaError(f"{profile_path}: profile file not found")
    wellness = user_dir / "wellness.csv"
    sleep = user_dir / "sleep.csv"
    raw = parse_sources(
        activity_files,
        wellness if wellness.exists() else None,
        sleep if sleep.exists() else None,
        profile_path,
    )
    return resample_daily(raw)


def load_data_dir(data_dir) -> list[UserSeries]:
    """Parse every user subdirectory of a raw data directory (sorted by name)."""
    data_dir = Path(data_dir)
    user_dirs = sorted(p for p in data_dir.iterdir() if p.is_dir()) if data_dir.is_dir() else []
    if not user_dirs:
        raise EmptyDatasetError(f"{data_dir}: no user directories found")
    return [load_user_dir(p) for p in user_dirs]

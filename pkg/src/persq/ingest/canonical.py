"""Canonical on-disk dataset: one day-level CSV per user plus a profile index.

Layout written by `persq ingest` (and `persq datagen`) and read by every
downstream command:

    <root>/profiles.csv            user_id,age,gender,chronotype
    <root>/users/<user_id>.csv     date,<day fields...>,sq

Writing is deterministic (sorted users, shortest round-trip float repr), so
re-running ingest on the same input produces byte-identical output.
"""

from __future__ import annotations

import csv
import datetime as dt
from pathlib import Path

from ..errors import RowError, SchemaError
from .records import DAY_FIELDS, DayRecord, UserProfile, UserSeries

_DAY_HEADER = ("date", *DAY_FIELDS, "sq")


def _format(value) -> str:
    return "" if value is None else repr(float(value))


def write_canonical(all_series, root) -> None:
    root = Path(root)
    (root / "users").mkdir(parents=True, exist_ok=True)
    ordered = sorted(all_series, key=lambda s: s.user_id)
    with open(root / "profiles.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("user_id", "age", "gender", "chronotype"))
        for series in ordered:
            p = series.profile
            writer.writerow((p.user_id, p.age, p.gender, p.chronotype))
    for series in ordered:
        with open(root / "users" / f"{series.user_id}.csv", "w", newline="",
                  encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(_DAY_HEADER)
            for day in series.days:
                row = [day.date.isoformat()]
                row.extend(_format(day.get(name)) for name in DAY_FIELDS)
                row.append(_format(day.sq))
                writer.writerow(row)


def load_canonical(root) -> list[UserSeries]:
    root = Path(root)
    profiles_path = root / "profiles.csv"
    if not profiles_path.exists():
        raise SchemaError(f"{profiles_path}: canonical profile index not found")
    profiles: list[UserProfile] = []
    with open(profiles_path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        needed = {"user_id", "age", "gender", "chronotype"}
        if needed - set(reader.fieldnames or ()):
            raise SchemaError(f"{profiles_path}: missing mandatory column(s)")
        for row in reader:
            try:
                profiles.append(UserProfile(
                    user_id=row["user_id"], age=int(row["age"]),
                    gender=row["gender"], chronotype=row["chronotype"],
                ))
            except ValueError as exc:
                raise RowError(profiles_path, reader.line_num, "-", str(exc)) from None

    dataset = []
    for profile in profiles:
        day_path = root / "users" / f"{profile.user_id}.csv"
        if not day_path.exists():
            raise SchemaError(f"{day_path}: day file missing for user {profile.user_id}")
        days = []
        with open(day_path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if set(DAY_FIELDS) - set(reader.fieldnames or ()):
                raise SchemaError(f"{day_path}: missing mandatory column(s)")
            for row in reader:
                line = reader.line_num
                try:
                    date = dt.date.fromisoformat(row["date"])
                except (ValueError, TypeError) as exc:
                    raise RowError(day_path, line, "date", str(exc)) from None
                values = {}
                for name in DAY_FIELDS:
                    cell = (row.get(name) or "").strip()
                    if cell:
                        try:
                            values[name] = float(cell)
                        except ValueError:
                            raise RowError(day_path, line, name,
                                           f"not a number: {cell!r}") from None
                try:
                    days.append(DayRecord(date=date, **values))
                except ValueError as exc:
                    raise RowError(day_path, line, "-", str(exc)) from None
        dataset.append(UserSeries(profile=profile, days=tuple(days)))
    return dataset

"""Carry-over windows: length-(t+1) encoded day sequences with a target SQ."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from ..errors import EncodeError
from ..ingest.records import UserSeries
from .scaler import Scaler


@dataclass(frozen=True)
class WindowedSample:
    """Days m-t..m encoded row-per-day (oldest first), predicting day m's SQ."""

    user_id: str
    dates: tuple[dt.date, ...]
    window: np.ndarray  # (t+1, n_features), each entry in [0, 1]
    target_sq: float
    target_date: dt.date

    def __post_init__(self):
        for prev, cur in zip(self.dates, self.dates[1:]):
            if (cur - prev).days != 1:
                raise ValueError(f"window dates not consecutive: {prev} -> {cur}")
        if len(self.dates) != self.window.shape[0]:
            raise ValueError("window rows must match dates")


def encode_days(series: UserSeries, scaler: Scaler) -> dict[dt.date, np.ndarray]:
    """Encode every fully-recorded day; partially recorded days are skipped."""
    encoded = {}
    for day in series.days:
        try:
            encoded[day.date] = scaler.encode(day, series.profile)
        except EncodeError:
            continue
    return encoded


def build_windows(series: UserSeries, scaler: Scaler, t: int) -> list[WindowedSample]:
    """One sample per date m where days m-t..m are all encodable and day m has
    ground-truth SQ; windows spanning any gap are skipped."""
    if t < 0:
        raise ValueError(f"window length t must be >= 0, got {t}")
    encoded = encode_days(series, scaler)
    sq_by_date = {d.date: d.sq for d in series.days if d.sq is not None}

    samples = []
    for target_date, target_sq in sorted(sq_by_date.items()):
        dates = [target_date - dt.timedelta(days=k) for k in range(t, -1, -1)]
        if all(d in encoded for d in dates):
            samples.append(WindowedSample(
                user_id=series.user_id,
                dates=tuple(dates),
                window=np.stack([encoded[d] for d in dates]),
                target_sq=target_sq,
                target_date=target_date,
            ))
    return samples


def build_dataset_windows(dataset, scaler: Scaler, t: int) -> list[WindowedSample]:
    samples = []
    for series in sorted(dataset, key=lambda s: s.user_id):
        samples.extend(build_windows(series, scaler, t))
    return samples


def stack_windows(samples) -> np.ndarray:
    """(n_samples, t+1, n_features) batch array for the model."""
    return np.stack([s.window for s in samples]).astype(np.float64)

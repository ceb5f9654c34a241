"""Synthetic lifelog generator with a planted carry-over effect.

Each user-day draws a latent activity level a in [0, 1] that drives every
activity variable. Sleep quality for day m is a saturating function of the
activity levels on days m-1..m-lag (weight concentrated on the deepest lag),
plus Gaussian noise:

    sq_m = base + amp * tanh(gain * sum_k w_k * (a_{m-k} - 0.5)) + noise

A model can only recover the dominant signal when its window reaches back
`lag` days, which is what the window-sweep study exploits. Wellness values
are weakly tied to recent activity; demographics are random per user.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .ingest.records import DayRecord, UserProfile, UserSeries


@dataclass
class CarryOverSpec:
    lag: int = 3
    lag_weights: tuple[float, ...] = (0.5, 0.8, 4.0)  # lags 1..lag
    base_sq: float = 88.0
    amplitude: float = 5.0
    gain: float = 1.6
    noise_sd: float = 0.4

    def __post_init__(self):
        if len(self.lag_weights) != self.lag:
            raise ValueError("lag_weights must have one weight per lag")

    def sq_for(self, activity_history: np.ndarray, noise: float) -> float:
        """activity_history holds a_{m-1}..a_{m-lag}, most recent first."""
        drive = sum(w * (a - 0.5) for w, a in zip(self.lag_weights, activity_history))
        sq = self.base_sq + self.amplitude * np.tanh(self.gain * drive) + noise
        return float(min(100.0, max(40.0, sq)))


def _day_from_activity(date: dt.date, a: float, rng: np.random.Generator,
                       sq: float | None) -> DayRecord:
    jitter = lambda sd: rng.normal(0.0, sd)
    steps = max(0.0, 3000.0 + 14000.0 * a + jitter(400.0))
    very = max(0.0, 90.0 * a + jitter(4.0))
    moderate = max(0.0, 50.0 * a + jitter(4.0))
    light = max(0.0, 140.0 + 120.0 * a + jitter(10.0))
    sedentary = max(0.0, 950.0 - 350.0 * a + jitter(15.0))
    likert = lambda center: float(min(5.0, max(1.0, round(center + rng.normal(0, 0.8)))))
    values = dict(
        calories=max(0.0, 1900.0 + 1600.0 * a + jitter(60.0)),
        distance=steps * 78.0,
        steps=steps,
        sedentary_min=sedentary,
        lightly_active_min=light,
        moderately_active_min=moderate,
        very_active_min=very,
        zone0_min=max(0.0, 1100.0 - 260.0 * a + jitter(20.0)),
        zone1_min=max(0.0, 120.0 + 140.0 * a + jitter(10.0)),
        zone2_min=max(0.0, 60.0 * a + jitter(4.0)),
        zone3_min=max(0.0, 30.0 * a + jitter(2.0)),
        fatigue=likert(3.5 - a),
        mood=likert(2.5 + a),
        readiness=float(min(10.0, max(1.0, round(4.0 + 4.0 * a + rng.normal(0, 1.2))))),
        soreness=likert(2.0 + a),
        stress=likert(3.4 - 0.8 * a),
    )
    if sq is not None:
        time_in_bed = float(rng.integers(430, 520))
        values["time_in_bed"] = time_in_bed
        values["minutes_asleep"] = sq * time_in_bed / 100.0
    return DayRecord(date=date, **values)


def generate_user(user_id: str, n_days: int, rng: np.random.Generator,
                  spec: CarryOverSpec, start: dt.date) -> UserSeries:
    profile = UserProfile(
        user_id=user_id,
        age=int(rng.integers(20, 60)),
        gender="male" if rng.random() < 0.7 else "female",
        chronotype="A" if rng.random() < 0.6 else "B",
    )
    activity = rng.random(n_days)
    days = []
    for m in range(n_days):
        if m >= spec.lag:
            history = activity[m - 1::-1][:spec.lag]
            sq = spec.sq_for(history, rng.normal(0.0, spec.noise_sd))
        else:
            sq = None  # warm-up days carry no target
        days.append(_day_from_activity(start + dt.timedelta(days=m), activity[m], rng, sq))
    return UserSeries(profile=profile, days=tuple(days))


def generate_dataset(n_users: int = 6, n_days: int = 120, seed: int = 0,
                     spec: CarryOverSpec | None = None,
                     start: dt.date = dt.date(2024, 1, 1)) -> list[UserSeries]:
    if spec is None:
        spec = CarryOverSpec()
    rng = np.random.default_rng(seed)
    width = max(2, len(str(n_users)))
    return [
        generate_user(f"u{index + 1:0{width}d}", n_days, rng, spec, start)
        for index in range(n_users)
    ]

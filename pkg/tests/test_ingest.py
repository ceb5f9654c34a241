"""Ingestion: parsing contracts, resampling rules, SQ, exclusions."""

import datetime as dt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from persq.errors import DomainError, EmptyDatasetError, RowError, SchemaError
from persq.ingest import (
    apply_exclusions,
    compute_sq,
    load_user_dir,
    parse_sources,
    resample_daily,
)
from persq.ingest.canonical import load_canonical, write_canonical
from persq.ingest.parsing import RawSeries, parse_activity_file, parse_wellness_file
from persq.ingest.records import DayRecord, UserProfile, UserSeries

from _helpers import (
    day,
    full_day,
    make_profile,
    make_series,
    simple_activity_row,
    simple_sleep_row,
    simple_wellness_row,
    write_standard_user,
    write_user_dir,
)


class TestComputeSq:
    def test_full_efficiency(self):
        assert compute_sq(480, 480) == 100.0

    def test_table_like_value(self):
        assert compute_sq(421, 480) == pytest.approx(87.70833333, abs=1e-6)

    def test_zero_numerator(self):
        assert compute_sq(0, 480) == 0.0

    def test_zero_time_in_bed(self):
        with pytest.raises(DomainError):
            compute_sq(100, 0)

    def test_asleep_exceeds_bed(self):
        with pytest.raises(DomainError):
            compute_sq(500, 480)

    @given(
        asleep=st.floats(0, 1000, allow_nan=False),
        extra=st.floats(0.001, 1000, allow_nan=False),
        k=st.floats(0.001, 1000, allow_nan=False),
    )
    def test_scale_invariance(self, asleep, extra, k):
        in_bed = asleep + extra
        assert compute_sq(k * asleep, k * in_bed) == pytest.approx(
            compute_sq(asleep, in_bed), rel=1e-9, abs=1e-9
        )


class TestParsing:
    def test_two_day_passthrough(self, tmp_path):
        user_dir = write_user_dir(
            tmp_path, "u01",
            [simple_activity_row(day(0)), simple_activity_row(day(1))],
            [simple_wellness_row(dt.datetime(2024, 1, 1, 9)),
             simple_wellness_row(dt.datetime(2024, 1, 2, 9))],
            [simple_sleep_row(day(0)), simple_sleep_row(day(1))],
        )
        raw = parse_sources(
            [user_dir / "activity.csv"], user_dir / "wellness.csv",
            user_dir / "sleep.csv", user_dir / "profile.txt",
        )
        assert len(raw.activity) == 2
        assert len(raw.wellness) == 2
        assert len(raw.sleep) == 2
        series = resample_daily(raw)
        assert len(series.days) == 2

    def test_likert_out_of_range(self, tmp_path):
        user_dir = write_user_dir(
            tmp_path, "u01",
            [simple_activity_row(day(0))],
            [simple_wellness_row(dt.datetime(2024, 1, 1, 9), fatigue=7)],
            [simple_sleep_row(day(0))],
        )
        with pytest.raises(RowError) as exc:
            parse_wellness_file(user_dir / "wellness.csv")
        assert "fatigue" in str(exc.value)
        assert "wellness.csv" in str(exc.value)

    def test_malformed_number_names_location(self, tmp_path):
        user_dir = write_user_dir(
            tmp_path, "u01",
            [simple_activity_row(day(0), steps="abc")],
            [], [],
        )
        with pytest.raises(RowError) as exc:
            parse_activity_file(user_dir / "activity.csv")
        message = str(exc.value)
        assert "activity.csv" in message and ":2:" in message and "steps" in message

    def test_missing_mandatory_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("date,calories\n2024-01-01,100\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            parse_activity_file(path)

    def test_negative_activity_rejected(self, tmp_path):
        user_dir = write_user_dir(
            tmp_path, "u01", [simple_activity_row(day(0), steps=-5)], [], [])
        with pytest.raises(RowError):
            parse_activity_file(user_dir / "activity.csv")

    def test_duplicate_date_rows_kept_raw_then_summed(self, tmp_path):
        rows = [
            simple_activity_row(day(0), steps=5000),
            simple_activity_row(day(0), steps=3000),
        ]
        user_dir = write_user_dir(tmp_path, "u01", rows,
                                  [simple_wellness_row(dt.datetime(2024, 1, 1, 9))],
                                  [simple_sleep_row(day(0))])
        raw = parse_sources([user_dir / "activity.csv"], user_dir / "wellness.csv",
                            user_dir / "sleep.csv", user_dir / "profile.txt")
        assert len(raw.activity) == 2  # no aggregation at parse time
        series = resample_daily(raw)
        assert series.days[0].steps == 8000.0
        # hand-summed duplicates for the other additive fields too
        assert series.days[0].calories == 5000.0


class TestResample:
    def test_additive_sum(self):
        raw = RawSeries(profile=make_profile())
        raw.activity = [
            (dt.datetime(2024, 1, 1, 8), {"steps": 5000.0}),
            (dt.datetime(2024, 1, 1, 18), {"steps": 3000.0}),
        ]
        series = resample_daily(raw)
        assert series.days[0].steps == 8000.0

    def test_wellness_last_report_wins(self):
        raw = RawSeries(profile=make_profile())
        raw.wellness = [
            (dt.datetime(2024, 1, 1, 8), {"mood": 2.0}),
            (dt.datetime(2024, 1, 1, 20), {"mood": 4.0}),
        ]
        series = resample_daily(raw)
        assert series.days[0].mood == 4.0

    def test_missing_wellness_stays_missing(self):
        raw = RawSeries(profile=make_profile())
        raw.activity = [(dt.datetime(2024, 1, 1, 8), {"steps": 100.0})]
        series = resample_daily(raw)
        assert series.days[0].mood is None

    def test_sleep_segments_sum_to_wake_date(self):
        raw = RawSeries(profile=make_profile())
        raw.sleep = [(day(1), 400.0, 440.0), (day(1), 30.0, 40.0)]
        series = resample_daily(raw)
        record = series.days[0]
        assert record.date == day(1)
        assert record.minutes_asleep == 430.0
        assert record.time_in_bed == 480.0
        assert record.sq == pytest.approx(100.0 * 430.0 / 480.0)

    def test_idempotent_on_daily_data(self):
        series = make_series(n_days=5)
        assert resample_daily(series) == series

    def test_subday_timestamps_group_by_calendar_day(self):
        raw = RawSeries(profile=make_profile())
        raw.activity = [
            (dt.datetime(2024, 1, 1, 23, 59), {"steps": 1.0}),
            (dt.datetime(2024, 1, 2, 0, 1), {"steps": 2.0}),
        ]
        series = resample_daily(raw)
        assert [(d.date, d.steps) for d in series.days] == [
            (day(0), 1.0), (day(1), 2.0)]


class TestRecords:
    def test_sq_present_iff_sleep_present(self):
        assert full_day(day(0)).sq is not None
        assert full_day(day(0), minutes_asleep=None, time_in_bed=None).sq is None

    def test_series_rejects_duplicate_dates(self):
        with pytest.raises(ValueError):
            UserSeries(profile=make_profile(), days=(full_day(day(0)), full_day(day(0))))

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            UserProfile(user_id="x", age=0, gender="male", chronotype="A")
        with pytest.raises(ValueError):
            UserProfile(user_id="x", age=30, gender="male", chronotype="C")

    @given(st.data())
    def test_random_valid_records_hold_invariants(self, data):
        asleep = data.draw(st.floats(0, 600, allow_nan=False))
        extra = data.draw(st.floats(0, 200, allow_nan=False))
        record = full_day(
            day(0),
            steps=data.draw(st.floats(0, 50000, allow_nan=False)),
            fatigue=float(data.draw(st.integers(1, 5))),
            readiness=float(data.draw(st.integers(1, 10))),
            minutes_asleep=asleep,
            time_in_bed=asleep + extra,
        )
        assert record.steps >= 0
        assert 1 <= record.fatigue <= 5
        if record.sq is not None:
            assert 0.0 <= record.sq <= 100.0

    def test_invalid_records_raise(self):
        with pytest.raises(ValueError):
            full_day(day(0), steps=-1)
        with pytest.raises(ValueError):
            full_day(day(0), mood=6)
        with pytest.raises(ValueError):
            full_day(day(0), minutes_asleep=500, time_in_bed=480)


class TestExclusions:
    def test_one_of_16_users_missing_whole_variable(self):
        dataset = [make_series(user_id=f"u{i:02d}") for i in range(1, 16)]
        dataset.append(make_series(user_id="u16", lightly_active_min=None))
        retained, excluded = apply_exclusions(dataset)
        assert len(retained) == 15
        assert excluded[0].user_id == "u16"
        assert "lightly_active_min" in excluded[0].missing_variables

    def test_sporadic_missing_days_retained(self):
        series = make_series(user_id="u01", skip=(3, 5))
        retained, excluded = apply_exclusions([series, make_series(user_id="u02")])
        assert len(retained) == 2 and not excluded

    def test_empty_input(self):
        with pytest.raises(EmptyDatasetError):
            apply_exclusions([])

    def test_all_excluded(self):
        with pytest.raises(EmptyDatasetError):
            apply_exclusions([make_series(user_id="u01", steps=None)])

    def test_pass_through_is_identical(self, tmp_path):
        dataset = [make_series(user_id="u01"), make_series(user_id="u02")]
        retained, _ = apply_exclusions(dataset)
        assert retained[0] is dataset[0] and retained[1] is dataset[1]
        write_canonical(dataset, tmp_path / "before")
        write_canonical(retained, tmp_path / "after")
        for name in ("profiles.csv", "users/u01.csv", "users/u02.csv"):
            assert (tmp_path / "before" / name).read_bytes() == \
                   (tmp_path / "after" / name).read_bytes()


class TestCanonical:
    def test_round_trip(self, tmp_path):
        dataset = [make_series(user_id="u01", skip=(2,)), make_series(user_id="u02")]
        write_canonical(dataset, tmp_path)
        loaded = load_canonical(tmp_path)
        assert loaded == dataset

    def test_load_user_dir_end_to_end(self, tmp_path):
        write_standard_user(tmp_path, "u01", n_days=4)
        series = load_user_dir(tmp_path / "u01")
        assert len(series.days) == 4
        assert series.days[0].sq == pytest.approx(87.5)

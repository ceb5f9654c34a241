"""LOOCV harness: fold structure, pooling, leakage guard, window sweep."""

import hashlib

import numpy as np
import pytest

from persq.evaluation.loocv import loocv
from persq.evaluation.metrics import compute_metrics
from persq.evaluation.sweep import window_sweep
from persq.evaluation.trainers import LinearTrainer, PerSQTrainer
from persq.features.windows import build_dataset_windows
from persq.datagen import CarryOverSpec, generate_dataset
from persq.model.training import TrainConfig

from _helpers import full_day, make_series


class RecordingTrainer(LinearTrainer):
    """Linear trainer that fingerprints its training inputs per fold."""

    def __init__(self):
        self.artifacts = []

    def fit(self, train_series, scaler, t):
        windows = build_dataset_windows(train_series, scaler, t)
        digest = hashlib.sha256()
        for w in windows:
            digest.update(w.window.tobytes())
        self.artifacts.append({
            "scaler_sq": (scaler.sq_min, scaler.sq_max),
            "windows": digest.hexdigest(),
        })
        return super().fit(train_series, scaler, t)


def test_fifteen_users_fifteen_folds():
    dataset = generate_dataset(n_users=15, n_days=20, seed=3)
    folds, aggregate = loocv(dataset, LinearTrainer(), t=1)
    assert len(folds) == 15
    assert [f.held_out_user for f in folds] == sorted(s.user_id for s in dataset)
    assert aggregate.n == sum(f.metrics.n for f in folds)


def test_two_user_minimal_case():
    dataset = generate_dataset(n_users=2, n_days=30, seed=4)
    folds, aggregate = loocv(dataset, LinearTrainer(), t=1)
    assert len(folds) == 2
    assert np.isfinite(aggregate.rmse)


def test_aggregate_equals_pooled_recompute():
    dataset = generate_dataset(n_users=3, n_days=40, seed=5)
    folds, aggregate = loocv(dataset, LinearTrainer(), t=1)
    truth = [t for f in folds for (_, t, _) in f.per_day]
    pred = [p for f in folds for (_, _, p) in f.per_day]
    recomputed = compute_metrics(truth, pred)
    assert aggregate == recomputed


def test_fewer_than_two_users_rejected():
    dataset = generate_dataset(n_users=1, n_days=20, seed=6)
    with pytest.raises(ValueError):
        loocv(dataset, LinearTrainer(), t=1)


def test_held_out_perturbation_changes_metrics_not_training_artifacts():
    dataset = generate_dataset(n_users=3, n_days=40, seed=7)
    target_user = sorted(dataset, key=lambda s: s.user_id)[0]

    trainer_a = RecordingTrainer()
    folds_a, _ = loocv(dataset, trainer_a, t=1)

    # perturb only the held-out user's records of fold 0
    perturbed_days = tuple(
        d.replace(
            steps=d.steps + 2000.0,
            minutes_asleep=None if d.minutes_asleep is None
            else min(d.minutes_asleep + 20, d.time_in_bed),
        )
        for d in target_user.days
    )
    perturbed = [
        s if s.user_id != target_user.user_id
        else type(s)(profile=s.profile, days=perturbed_days)
        for s in dataset
    ]
    trainer_b = RecordingTrainer()
    folds_b, _ = loocv(perturbed, trainer_b, t=1)

    assert trainer_a.artifacts[0] == trainer_b.artifacts[0]  # training untouched
    assert folds_a[0].metrics != folds_b[0].metrics  # evaluation did change


def test_fold_without_windows_skipped_with_warning():
    dataset = generate_dataset(n_users=3, n_days=30, seed=8)
    # strip one user's sleep records so it yields no evaluable windows
    bare = dataset[0]
    bare_days = tuple(d.replace(minutes_asleep=None, time_in_bed=None) for d in bare.days)
    dataset[0] = type(bare)(profile=bare.profile, days=bare_days)
    with pytest.warns(UserWarning, match="no evaluable windows"):
        folds, _ = loocv(dataset, LinearTrainer(), t=1)
    assert len(folds) == 2


class TestWindowSweep:
    def test_one_row_per_t(self):
        dataset = generate_dataset(n_users=3, n_days=30, seed=9)
        results = window_sweep(dataset, LinearTrainer(), [0, 1, 2])
        assert [t for t, _ in results] == [0, 1, 2]
        assert all(np.isfinite(rmse) for _, rmse in results)

    def test_empty_t_values_rejected(self):
        dataset = generate_dataset(n_users=2, n_days=20, seed=10)
        with pytest.raises(ValueError):
            window_sweep(dataset, LinearTrainer(), [])

    def test_planted_lag2_not_preferred_below_lag(self):
        spec = CarryOverSpec(lag=2, lag_weights=(0.6, 4.0), noise_sd=0.3)
        dataset = generate_dataset(n_users=3, n_days=100, seed=12, spec=spec)
        trainer = PerSQTrainer(
            hidden_sizes=(10, 8, 6), dropout_rate=0.1,
            train_cfg=TrainConfig(epochs=60, seed=0, early_stop_patience=10),
            seed=0,
        )
        results = window_sweep(dataset, trainer, [1, 2, 3])
        best_t = min(results, key=lambda r: r[1])[0]
        assert best_t >= 2

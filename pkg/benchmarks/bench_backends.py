#!/usr/bin/env python3
"""Benchmark the compiled LSTM kernels against the numpy fallback.

Usage: python benchmarks/bench_backends.py [--repeats 5]

Times the layer kernels on shapes matching real training (batch 16 windows,
4 steps, 21 features, hidden 50/30/20) and full-dataset evaluation, plus one
small end-to-end training run per backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from persq.model.backend import available_backends
from persq.datagen import generate_dataset
from persq.evaluation.trainers import PerSQTrainer
from persq.features.scaler import fit_scaler
from persq.model.training import TrainConfig


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(backends, repeats):
    cases = [
        ("train batch (16x4x21, H=50)", 16, 4, 21, 50),
        ("train batch layer2 (16x4x50, H=30)", 16, 4, 50, 30),
        ("full eval (1500x4x21, H=50)", 1500, 4, 21, 50),
    ]
    rng = np.random.default_rng(0)
    print(f"{'case':40s} " + " ".join(f"{name:>12s}" for name in backends))
    for label, B, T, I, H in cases:
        x = rng.normal(size=(B, T, I))
        wx = rng.normal(size=(4 * H, I)) * 0.3
        wh = rng.normal(size=(4 * H, H)) * 0.3
        b = rng.normal(size=4 * H) * 0.1
        fwd_times, bwd_times = [], []
        for impl in backends.values():
            fwd_times.append(time_call(lambda: impl.lstm_forward(x, wx, wh, b), repeats))
            h, c, g = impl.lstm_forward(x, wx, wh, b)
            dh = rng.normal(size=h.shape)
            bwd_times.append(time_call(
                lambda: impl.lstm_backward(x, h, c, g, wx, wh, dh), repeats))
        print(f"{label + ' fwd':40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in fwd_times))
        print(f"{label + ' bwd':40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in bwd_times))


def bench_training(backends, repeats):
    import persq.model.backend as dispatch

    dataset = generate_dataset(n_users=2, n_days=60, seed=0)
    scaler = fit_scaler(dataset)
    print(f"\n{'end-to-end training (20 epochs)':40s}")
    for name, impl in backends.items():
        original = dispatch._impl
        dispatch._impl = impl
        try:
            trainer = PerSQTrainer(
                train_cfg=TrainConfig(epochs=20, seed=0, early_stop_patience=None))
            elapsed = time_call(lambda: trainer.fit(dataset, scaler, 3), max(1, repeats // 2))
        finally:
            dispatch._impl = original
        print(f"  {name:12s} {elapsed:8.2f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    backends = available_backends()
    print("available backends:", ", ".join(backends))
    bench_kernels(backends, args.repeats)
    bench_training(backends, args.repeats)


if __name__ == "__main__":
    main()

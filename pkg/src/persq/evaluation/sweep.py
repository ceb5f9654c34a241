"""Window-length study: aggregate RMSE per carry-over depth t."""

from __future__ import annotations

from .loocv import loocv


def window_sweep(dataset, trainer, t_values) -> list[tuple[int, float]]:
    t_values = list(t_values)
    if not t_values:
        raise ValueError("t_values must be non-empty")
    results = []
    for t in t_values:
        _, aggregate = loocv(dataset, trainer, t)
        results.append((t, aggregate.rmse))
    return results

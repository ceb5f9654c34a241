"""Command-line entry points for the full pipeline.

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import load_config
from .datagen import CarryOverSpec, generate_dataset
from .errors import DataError, PersqError
from .evaluation import (
    LinearTrainer,
    MlpTrainer,
    PerSQTrainer,
    loocv,
    window_sweep,
    write_fold_csv,
    write_histogram_csv,
    write_sweep_csv,
)
from .feedback.catalog import load_catalog
from .feedback.engine import generate_report
from .features.scaler import fit_scaler
from .features.windows import build_dataset_windows
from .ingest import apply_exclusions, load_canonical, load_data_dir, write_canonical
from .mining.patterns import mine_all, save_pattern_sets, load_pattern_sets
from .mining.thresholds import default_thresholds, load_thresholds, save_thresholds
from .model.checkpoint import load_model, save_model
from .model.network import ModelConfig, init_model
from .model.training import TrainConfig, train


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_sweep(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def _trainer_for(name: str, args):
    cfg = TrainConfig(seed=args.seed, epochs=args.epochs)
    if name == "persq":
        return PerSQTrainer(train_cfg=cfg, seed=args.seed)
    if name == "linear":
        return LinearTrainer()
    if name == "mlp":
        return MlpTrainer(train_cfg=cfg, seed=args.seed)
    raise ValueError(f"unknown model {name!r}")


def cmd_ingest(args) -> int:
    dataset = load_data_dir(args.data_dir)
    retained, excluded = apply_exclusions(dataset)
    write_canonical(retained, args.out)
    for exclusion in excluded:
        print(f"excluded {exclusion.user_id}: {exclusion.reason}")
    for series in retained:
        gaps = series.gaps()
        if gaps:
            print(f"note: {series.user_id} has {len(gaps)} missing day(s) "
                  f"between {series.days[0].date} and {series.days[-1].date}")
    print(f"retained {len(retained)} of {len(dataset)} users -> {args.out}")
    return 0


def cmd_datagen(args) -> int:
    spec = CarryOverSpec(lag=args.lag, lag_weights=tuple([0.5, 0.8] + [4.0] * (args.lag - 2))
                         if args.lag >= 3 else tuple([1.0] * args.lag))
    dataset = generate_dataset(n_users=args.users, n_days=args.days, seed=args.seed, spec=spec)
    write_canonical(dataset, args.out)
    print(f"wrote {args.users} synthetic users x {args.days} days (lag {args.lag}) -> {args.out}")
    return 0


def cmd_train(args) -> int:
    dataset = load_canonical(args.data)
    scaler = fit_scaler(dataset)
    samples = build_dataset_windows(dataset, scaler, args.t)
    if not samples:
        raise DataError("no trainable windows in dataset")
    model = init_model(ModelConfig(input_size=scaler.size, window_t=args.t, seed=args.seed))
    model.scaler = scaler
    cfg = TrainConfig(seed=args.seed, epochs=args.epochs)
    trained, history = train(model, samples, cfg)
    save_model(trained, args.out_model)
    print(f"trained on {len(samples)} windows (t={args.t}), "
          f"final epoch loss {history[-1]:.6f} -> {args.out_model}")
    return 0


def cmd_evaluate(args) -> int:
    dataset = load_canonical(args.data)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.models.split(","):
        name = name.strip()
        trainer = _trainer_for(name, args)
        if args.sweep:
            results = window_sweep(dataset, trainer, _parse_sweep(args.sweep))
            path = out_dir / f"sweep_{name}.csv"
            write_sweep_csv(path, name, results)
            best = min(results, key=lambda r: r[1])
            print(f"{name}: sweep best t={best[0]} rmse={best[1]:.4f} -> {path}")
        else:
            folds, aggregate = loocv(dataset, trainer, args.t)
            path = out_dir / f"metrics_{name}.csv"
            write_fold_csv(path, name, folds, aggregate)
            pooled = [pair for fold in folds for pair in fold.per_day]
            write_histogram_csv(out_dir / f"errors_{name}.csv", pooled)
            print(f"{name}: {len(folds)} folds, aggregate rmse={aggregate.rmse:.4f} "
                  f"mae={aggregate.mae:.4f} r2={aggregate.r2:.4f} -> {path}")
    return 0


def cmd_mine(args) -> int:
    dataset = load_canonical(args.data)
    thresholds = default_thresholds(dataset)
    if args.thresholds:
        thresholds = load_thresholds(args.thresholds, base=thresholds)
    sets = mine_all(dataset, thresholds, args.min_support)
    paths = save_pattern_sets(sets, args.out_dir)
    save_thresholds(thresholds, Path(args.out_dir) / "thresholds.yaml")
    counts = sets.counts()
    for group, path in paths.items():
        print(f"{group}: {counts[group]} patterns -> {path}")
    return 0


def cmd_feedback(args) -> int:
    dataset = load_canonical(args.data)
    by_user = {series.user_id: series for series in dataset}
    if args.user not in by_user:
        raise DataError(f"unknown user {args.user!r}")
    series = by_user[args.user]
    model = load_model(args.model)
    patterns = load_pattern_sets(args.patterns)
    thresholds = default_thresholds(dataset)
    if args.thresholds:
        thresholds = load_thresholds(args.thresholds, base=thresholds)
    catalog = load_catalog(args.catalog)

    import datetime as dt
    try:
        date = dt.date.fromisoformat(args.date)
    except ValueError as exc:
        raise DataError(f"bad date {args.date!r}: {exc}") from None
    day_map = series.day_map()
    days = []
    for offset in range(model.window_t, -1, -1):
        day = day_map.get(date - dt.timedelta(days=offset))
        if day is None:
            raise DataError(f"no stored data for {args.user} covering "
                            f"{model.window_t + 1} days ending {date}")
        days.append(day)
    report = generate_report(model, patterns, thresholds, series.profile, days, catalog)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app
    from .service.snapshot import load_snapshot

    cfg = load_config(args.config)
    if args.data:
        cfg.data_dir = args.data
    if args.model:
        cfg.model_path = args.model
    if args.patterns:
        cfg.patterns_dir = args.patterns
    if args.host:
        cfg.host = args.host
    if args.port:
        cfg.port = args.port
    snapshot = load_snapshot(cfg)
    app = create_app(snapshot, cors_origins=cfg.cors_origins)
    print(f"serving on http://{cfg.host}:{cfg.port}")
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="persq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse raw per-user files into the canonical dataset")
    p.add_argument("--data-dir", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("datagen", help="write a synthetic dataset with planted carry-over")
    p.add_argument("--out", required=True)
    p.add_argument("--users", type=int, default=6)
    p.add_argument("--days", type=int, default=120)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lag", type=int, default=3)
    p.set_defaults(fn=cmd_datagen)

    p = sub.add_parser("train", help="train the population model on a canonical dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--out-model", required=True)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("evaluate", help="leave-one-out evaluation / window sweep")
    p.add_argument("--data", required=True)
    p.add_argument("--models", default="persq,linear,mlp")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--sweep", help="window lengths, e.g. 1..7 or 1,3,5")
    p.add_argument("--out-dir", default="results")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("mine", help="mine frequent life-event patterns per SQ group")
    p.add_argument("--data", required=True)
    p.add_argument("--min-support", type=float, default=0.20)
    p.add_argument("--thresholds", help="YAML cut overrides")
    p.add_argument("--out-dir", default="patterns")
    p.set_defaults(fn=cmd_mine)

    p = sub.add_parser("feedback", help="print the feedback report for one user/date")
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--thresholds")
    p.add_argument("--catalog")
    p.add_argument("--user", required=True)
    p.add_argument("--date", required=True)
    p.set_defaults(fn=cmd_feedback)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config", help="YAML config (or set PERSQ_CONFIG)")
    p.add_argument("--data")
    p.add_argument("--model")
    p.add_argument("--patterns")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.fn(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PersqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

"""HTTP facade over the library: prediction, patterns, feedback, what-if.

Every endpoint computes its response through the same library calls a direct
caller would make on the snapshot; nothing is cached or mutated per request.
Status codes: 400 malformed body/overrides, 404 unknown user or date,
409 model/patterns not loaded.
"""

from __future__ import annotations

import datetime as dt

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..errors import EncodeError
from ..feedback.engine import generate_report
from ..mining.patterns import GROUPS
from ..model.network import predict
from .snapshot import ServiceSnapshot, apply_overrides

import numpy as np


def _parse_date(text) -> dt.date:
    try:
        return dt.date.fromisoformat(str(text))
    except ValueError:
        raise HTTPException(status_code=400, detail=f"bad date {text!r}") from None


def create_app(snapshot: ServiceSnapshot, cors_origins=("*",)) -> FastAPI:
    app = FastAPI(title="persq service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.snapshot = snapshot

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request body"})

    def require_model():
        if snapshot.model is None or snapshot.model.scaler is None:
            raise HTTPException(status_code=409, detail="model not loaded")

    def require_patterns():
        if snapshot.patterns is None:
            raise HTTPException(status_code=409, detail="patterns not loaded")

    def get_series(user_id: str):
        series = snapshot.series_for(user_id)
        if series is None:
            raise HTTPException(status_code=404, detail=f"unknown user {user_id!r}")
        return series

    def get_window(series, date: dt.date):
        days = snapshot.window_days(series, date)
        if days is None:
            raise HTTPException(
                status_code=404,
                detail=f"no stored window ending {date.isoformat()} for {series.user_id}",
            )
        return days

    def build_report(user_id: str, date: dt.date, overrides: dict | None = None):
        require_model()
        require_patterns()
        series = get_series(user_id)
        days = get_window(series, date)
        profile = series.profile
        if overrides:
            try:
                day_m, profile = apply_overrides(days[-1], profile, overrides)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from None
            days = days[:-1] + [day_m]
        try:
            return generate_report(
                snapshot.model, snapshot.patterns, snapshot.thresholds,
                profile, days, snapshot.catalog,
            )
        except EncodeError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model_loaded": snapshot.model is not None,
            "patterns_loaded": snapshot.patterns is not None,
            "versions": snapshot.versions,
            "window_t": snapshot.window_t,
            "users": sorted(snapshot.users),
        }

    @app.get("/patterns")
    def patterns(group: str | None = None):
        require_patterns()
        meta = snapshot.variable_meta()
        if group is not None:
            if group not in GROUPS:
                raise HTTPException(status_code=400,
                                    detail=f"group must be one of {list(GROUPS)}")
            return {
                "group": group,
                "patterns": [_pattern_dict(p) for p in snapshot.patterns.for_group(group)],
                "meta": meta,
            }
        return {
            "patterns": {
                g: [_pattern_dict(p) for p in snapshot.patterns.for_group(g)] for g in GROUPS
            },
            "meta": meta,
        }

    @app.post("/predict")
    def predict_endpoint(body: dict):
        require_model()
        user_id, date = _require_user_date(body)
        series = get_series(user_id)
        days = get_window(series, date)
        try:
            window = np.stack(
                [snapshot.model.scaler.encode(day, series.profile) for day in days]
            )
        except EncodeError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        predicted = predict(snapshot.model, window)
        return {
            "predicted_sq": predicted,
            "sq_group": snapshot.thresholds.sq_group(predicted),
        }

    @app.post("/whatif")
    def whatif(body: dict):
        user_id = body.get("user_id")
        base_date = body.get("base_date")
        if not isinstance(user_id, str) or base_date is None:
            raise HTTPException(status_code=400, detail="body needs user_id and base_date")
        overrides = body.get("overrides") or {}
        if not isinstance(overrides, dict):
            raise HTTPException(status_code=400, detail="overrides must be an object")
        report = build_report(user_id, _parse_date(base_date), overrides)
        return report.to_dict()

    @app.get("/feedback/{user_id}")
    def feedback(user_id: str, date: str):
        report = build_report(user_id, _parse_date(date))
        return report.to_dict()

    return app


def _require_user_date(body: dict):
    user_id = body.get("user_id")
    date = body.get("date")
    if not isinstance(user_id, str) or date is None:
        raise HTTPException(status_code=400, detail="body needs user_id and date")
    return user_id, _parse_date(date)


def _pattern_dict(pattern) -> dict:
    return {
        "items": list(pattern.rendered()),
        "support_count": pattern.support_count,
        "group": pattern.group,
    }

#!/usr/bin/env python3
"""Record the case-study service responses as JSON fixtures for the dashboard
tests. Deterministic: re-running produces identical files.

Usage: python scripts/record_frontend_fixtures.py
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from _world import build_case_study  # noqa: E402
from persq.service.app import create_app  # noqa: E402

OUT_DIR = ROOT / "frontend" / "tests" / "fixtures"


def main():
    world = build_case_study()
    client = TestClient(create_app(world.snapshot))
    user, date = "u01", world.target_date.isoformat()

    recordings = {
        "health.json": client.get("/health"),
        "patterns.json": client.get("/patterns"),
        "feedback_baseline.json": client.get(f"/feedback/{user}", params={"date": date}),
        "whatif_steps_7000.json": client.post("/whatif", json={
            "user_id": user, "base_date": date, "overrides": {"steps": 7000.0}}),
        "whatif_steps_12000.json": client.post("/whatif", json={
            "user_id": user, "base_date": date, "overrides": {"steps": 12000.0}}),
        "whatif_noop.json": client.post("/whatif", json={
            "user_id": user, "base_date": date, "overrides": {}}),
    }
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, response in recordings.items():
        assert response.status_code == 200, (name, response.status_code, response.text)
        path = OUT_DIR / name
        path.write_text(json.dumps(response.json(), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

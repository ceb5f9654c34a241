"""Application configuration for the CLI and the HTTP service.

Resolution order: --config flag, then the PERSQ_CONFIG environment variable,
then built-in defaults. The file is YAML with keys matching AppConfig fields.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

ENV_VAR = "PERSQ_CONFIG"


@dataclass
class AppConfig:
    data_dir: str | None = None          # canonical dataset directory
    model_path: str | None = None        # trained checkpoint
    patterns_dir: str | None = None      # directory with patterns_<group>.csv
    thresholds_path: str | None = None   # YAML cut overrides
    catalog_path: str | None = None      # YAML message catalog
    min_support_fraction: float = 0.20
    window_t: int = 3
    seed: int = 0
    host: str = "127.0.0.1"
    port: int = 8000
    cors_origins: tuple[str, ...] = ("*",)

    def validate_for_service(self):
        """Service startup requires existing paths and a sane port."""
        if not 0 < self.port < 65536:
            raise ValueError(f"port must be in (0, 65536), got {self.port}")
        for name in ("data_dir", "model_path", "patterns_dir",
                     "thresholds_path", "catalog_path"):
            value = getattr(self, name)
            if value is not None and not Path(value).exists():
                raise FileNotFoundError(f"{name} does not exist: {value}")
        if self.data_dir is None:
            raise ValueError("service needs data_dir pointing at a canonical dataset")


def load_config(path: str | None = None) -> AppConfig:
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return AppConfig()
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    known = {f.name for f in fields(AppConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"{path}: unknown config key(s) {sorted(unknown)}")
    if "cors_origins" in data:
        data["cors_origins"] = tuple(data["cors_origins"])
    return AppConfig(**data)

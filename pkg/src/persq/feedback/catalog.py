"""Feedback message catalog: variable -> human-readable suggestion."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import yaml

GENERIC_TEMPLATE = "consider improving {variable}"


def default_catalog() -> dict[str, str]:
    text = resources.files("persq.data").joinpath("default_catalog.yaml").read_text("utf-8")
    return dict(yaml.safe_load(text))


def load_catalog(path=None) -> dict[str, str]:
    """Catalog from a YAML file, or the packaged default when path is None."""
    if path is None:
        return default_catalog()
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    return {str(k): str(v) for k, v in data.items()}


def message_for(catalog: dict[str, str], variable: str) -> str:
    return catalog.get(variable, GENERIC_TEMPLATE.format(variable=variable))

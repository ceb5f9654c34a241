"""HTTP service: immutable snapshot + FastAPI facade."""

from .app import create_app
from .snapshot import (
    MUTABLE_FIELDS,
    MUTABLE_VARIABLES,
    ServiceSnapshot,
    apply_overrides,
    load_snapshot,
)

__all__ = [
    "create_app", "ServiceSnapshot", "load_snapshot", "apply_overrides",
    "MUTABLE_FIELDS", "MUTABLE_VARIABLES",
]

"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
implementation is used. PERSQ_BACKEND=pure|c|auto overrides the choice
(PERSQ_BACKEND=c fails loudly if the extension is unavailable).
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

_requested = os.environ.get("PERSQ_BACKEND", "auto").lower()
if _requested not in ("auto", "c", "pure"):
    raise ValueError(f"PERSQ_BACKEND must be auto, c or pure, got {_requested!r}")

if _requested == "pure":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
        _impl = pure
        BACKEND = "pure"


def _as_c64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def lstm_forward(x, wx, wh, b):
    return _impl.lstm_forward(_as_c64(x), _as_c64(wx), _as_c64(wh), _as_c64(b))


def lstm_backward(x, h, c, gates, wx, wh, dh_out):
    return _impl.lstm_backward(
        _as_c64(x), _as_c64(h), _as_c64(c), _as_c64(gates),
        _as_c64(wx), _as_c64(wh), _as_c64(dh_out),
    )


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by name, for tests and benchmarks."""
    backends = {"pure": pure}
    try:
        from . import _ckernels
        backends["c"] = _ckernels
    except ImportError:
        pass
    return backends

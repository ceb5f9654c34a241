"""Compiled vs numpy kernel equivalence (skipped when the extension is absent)."""

import numpy as np
import pytest

from persq.model.backend import available_backends

backends = available_backends()
needs_both = pytest.mark.skipif(
    "c" not in backends, reason="compiled kernels not built")


def _random_case(rng, B, T, I, H):
    x = rng.normal(size=(B, T, I))
    wx = rng.normal(size=(4 * H, I)) * 0.5
    wh = rng.normal(size=(4 * H, H)) * 0.5
    b = rng.normal(size=4 * H) * 0.2
    return x, wx, wh, b


@needs_both
def test_forward_equivalence():
    rng = np.random.default_rng(0)
    for B, T, I, H in [(1, 1, 1, 1), (2, 3, 4, 5), (7, 5, 3, 8), (16, 4, 21, 50)]:
        x, wx, wh, b = _random_case(rng, B, T, I, H)
        h_p, c_p, g_p = backends["pure"].lstm_forward(x, wx, wh, b)
        h_c, c_c, g_c = backends["c"].lstm_forward(x, wx, wh, b)
        assert np.allclose(h_p, h_c, rtol=1e-12, atol=1e-13)
        assert np.allclose(c_p, c_c, rtol=1e-12, atol=1e-13)
        assert np.allclose(g_p, g_c, rtol=1e-12, atol=1e-13)


@needs_both
def test_backward_equivalence():
    rng = np.random.default_rng(1)
    for B, T, I, H in [(1, 1, 2, 3), (3, 4, 5, 6), (8, 6, 21, 30)]:
        x, wx, wh, b = _random_case(rng, B, T, I, H)
        h, c, g = backends["pure"].lstm_forward(x, wx, wh, b)
        dh = rng.normal(size=h.shape)
        out_p = backends["pure"].lstm_backward(x, h, c, g, wx, wh, dh)
        out_c = backends["c"].lstm_backward(x, h, c, g, wx, wh, dh)
        for a, b_ in zip(out_p, out_c):
            assert np.allclose(a, b_, rtol=1e-11, atol=1e-12)


def test_dispatcher_handles_noncontiguous_input():
    from persq.model import backend

    rng = np.random.default_rng(2)
    x = rng.normal(size=(4, 6, 8))[:, ::2, :]  # non-contiguous view
    wx = rng.normal(size=(12, 8))
    wh = rng.normal(size=(12, 3))
    b = rng.normal(size=12)
    h, c, g = backend.lstm_forward(x, wx, wh, b)
    assert h.shape == (4, 3, 3)

"""Numpy reference implementation of the LSTM sequence kernels.

Array conventions shared with the compiled backend:
  x     (B, T, I)   input sequences
  wx    (4H, I)     input weights, gate blocks stacked [input, forget, cell, output]
  wh    (4H, H)     recurrent weights, same block order
  b     (4H,)       bias
  h, c  (B, T, H)   hidden / cell states per step
  gates (B, T, 4H)  post-activation gate values
"""

from __future__ import annotations

import numpy as np


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def lstm_forward(x, wx, wh, b):
    B, T, I = x.shape
    H = wh.shape[1]
    h = np.empty((B, T, H))
    c = np.empty((B, T, H))
    gates = np.empty((B, T, 4 * H))

    zx = x.reshape(B * T, I) @ wx.T
    zx = zx.reshape(B, T, 4 * H) + b

    h_prev = np.zeros((B, H))
    c_prev = np.zeros((B, H))
    for t in range(T):
        z = zx[:, t, :] + h_prev @ wh.T
        gi = _sigmoid(z[:, :H])
        gf = _sigmoid(z[:, H:2 * H])
        gg = np.tanh(z[:, 2 * H:3 * H])
        go = _sigmoid(z[:, 3 * H:])
        c_t = gf * c_prev + gi * gg
        h_t = go * np.tanh(c_t)
        gates[:, t, :H] = gi
        gates[:, t, H:2 * H] = gf
        gates[:, t, 2 * H:3 * H] = gg
        gates[:, t, 3 * H:] = go
        c[:, t, :] = c_t
        h[:, t, :] = h_t
        h_prev = h_t
        c_prev = c_t
    return h, c, gates


def lstm_backward(x, h, c, gates, wx, wh, dh_out):
    """Backpropagation through time given upstream gradients dh_out (B, T, H)
    on every step's hidden output. Returns (dx, dwx, dwh, db)."""
    B, T, I = x.shape
    H = wh.shape[1]
    dx = np.empty((B, T, I))
    dwx = np.zeros_like(wx)
    dwh = np.zeros_like(wh)
    db = np.zeros(4 * H)

    dh_next = np.zeros((B, H))
    dc_next = np.zeros((B, H))
    for t in range(T - 1, -1, -1):
        gi = gates[:, t, :H]
        gf = gates[:, t, H:2 * H]
        gg = gates[:, t, 2 * H:3 * H]
        go = gates[:, t, 3 * H:]
        c_t = c[:, t, :]
        tanh_c = np.tanh(c_t)

        dh = dh_out[:, t, :] + dh_next
        do = dh * tanh_c
        dc = dc_next + dh * go * (1.0 - tanh_c * tanh_c)
        c_prev = c[:, t - 1, :] if t > 0 else 0.0
        di = dc * gg
        df = dc * c_prev
        dg = dc * gi

        dz = np.empty((B, 4 * H))
        dz[:, :H] = di * gi * (1.0 - gi)
        dz[:, H:2 * H] = df * gf * (1.0 - gf)
        dz[:, 2 * H:3 * H] = dg * (1.0 - gg * gg)
        dz[:, 3 * H:] = do * go * (1.0 - go)

        dwx += dz.T @ x[:, t, :]
        if t > 0:
            dwh += dz.T @ h[:, t - 1, :]
        db += dz.sum(axis=0)
        dx[:, t, :] = dz @ wx
        dh_next = dz @ wh
        dc_next = dc * gf
    return dx, dwx, dwh, db

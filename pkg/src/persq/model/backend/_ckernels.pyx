# cython: language_level=3
"""Compiled LSTM sequence kernels. Same contracts as backend.pure; matrix
products go through BLAS dgemm, gate math is fused in C loops."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, tanh
from scipy.linalg.cython_blas cimport dgemm

cnp.import_array()


cdef inline double _sigmoid(double z) noexcept nogil:
    cdef double e
    if z >= 0.0:
        return 1.0 / (1.0 + exp(-z))
    e = exp(z)
    return e / (1.0 + e)


cdef inline void _gemm(bint transa, bint transb, int m, int n, int k,
                       double alpha, const double* a, int lda,
                       const double* b, int ldb,
                       double beta, double* c, int ldc) noexcept nogil:
    # C-order view: c (m,n) = alpha * opA(a) @ opB(b) + beta * c, where lda/ldb/ldc
    # are the stored row strides. Implemented as the transposed Fortran call.
    cdef char ta = b'T' if transa else b'N'
    cdef char tb = b'T' if transb else b'N'
    dgemm(&tb, &ta, &n, &m, &k, &alpha, <double*> b, &ldb, <double*> a, &lda,
          &beta, c, &ldc)


def lstm_forward(double[:, :, ::1] x, double[:, ::1] wx, double[:, ::1] wh,
                 double[::1] b):
    cdef int B = x.shape[0], T = x.shape[1], I = x.shape[2]
    cdef int H = wh.shape[1], G = 4 * H
    h_arr = np.empty((B, T, H), dtype=np.float64)
    c_arr = np.empty((B, T, H), dtype=np.float64)
    g_arr = np.empty((B, T, G), dtype=np.float64)
    zx_arr = np.empty((B, T, G), dtype=np.float64)
    cdef double[:, :, ::1] h = h_arr, c = c_arr, gates = g_arr, zx = zx_arr

    cdef int t, bi, j
    cdef double zi, zf, zg, zo, gi, gf, gg, go, cp, ct

    # Input projection for the whole sequence in one call: (B*T, 4H).
    _gemm(0, 1, B * T, G, I, 1.0, &x[0, 0, 0], I, &wx[0, 0], I,
          0.0, &zx[0, 0, 0], G)

    for t in range(T):
        if t > 0:
            _gemm(0, 1, B, G, H, 1.0, &h[0, t - 1, 0], T * H, &wh[0, 0], H,
                  1.0, &zx[0, t, 0], T * G)
        for bi in range(B):
            for j in range(H):
                zi = zx[bi, t, j] + b[j]
                zf = zx[bi, t, H + j] + b[H + j]
                zg = zx[bi, t, 2 * H + j] + b[2 * H + j]
                zo = zx[bi, t, 3 * H + j] + b[3 * H + j]
                gi = _sigmoid(zi)
                gf = _sigmoid(zf)
                gg = tanh(zg)
                go = _sigmoid(zo)
                cp = c[bi, t - 1, j] if t > 0 else 0.0
                ct = gf * cp + gi * gg
                gates[bi, t, j] = gi
                gates[bi, t, H + j] = gf
                gates[bi, t, 2 * H + j] = gg
                gates[bi, t, 3 * H + j] = go
                c[bi, t, j] = ct
                h[bi, t, j] = go * tanh(ct)
    return h_arr, c_arr, g_arr


def lstm_backward(double[:, :, ::1] x, double[:, :, ::1] h, double[:, :, ::1] c,
                  double[:, :, ::1] gates, double[:, ::1] wx, double[:, ::1] wh,
                  double[:, :, ::1] dh_out):
    cdef int B = x.shape[0], T = x.shape[1], I = x.shape[2]
    cdef int H = wh.shape[1], G = 4 * H
    dx_arr = np.empty((B, T, I), dtype=np.float64)
    dwx_arr = np.zeros((G, I), dtype=np.float64)
    dwh_arr = np.zeros((G, H), dtype=np.float64)
    db_arr = np.zeros(G, dtype=np.float64)
    dz_arr = np.empty((B, G), dtype=np.float64)
    dh_next_arr = np.zeros((B, H), dtype=np.float64)
    dc_next_arr = np.zeros((B, H), dtype=np.float64)
    cdef double[:, :, ::1] dx = dx_arr
    cdef double[:, ::1] dwx = dwx_arr, dwh = dwh_arr, dz = dz_arr
    cdef double[:, ::1] dh_next = dh_next_arr, dc_next = dc_next_arr
    cdef double[::1] db = db_arr

    cdef int t, bi, j
    cdef double gi, gf, gg, go, tanh_c, dh, do, dc, cp, di, df, dg, v

    for t in range(T - 1, -1, -1):
        for bi in range(B):
            for j in range(H):
                gi = gates[bi, t, j]
                gf = gates[bi, t, H + j]
                gg = gates[bi, t, 2 * H + j]
                go = gates[bi, t, 3 * H + j]
                tanh_c = tanh(c[bi, t, j])
                dh = dh_out[bi, t, j] + dh_next[bi, j]
                do = dh * tanh_c
                dc = dc_next[bi, j] + dh * go * (1.0 - tanh_c * tanh_c)
                cp = c[bi, t - 1, j] if t > 0 else 0.0
                di = dc * gg
                df = dc * cp
                dg = dc * gi
                v = di * gi * (1.0 - gi)
                dz[bi, j] = v
                db[j] += v
                v = df * gf * (1.0 - gf)
                dz[bi, H + j] = v
                db[H + j] += v
                v = dg * (1.0 - gg * gg)
                dz[bi, 2 * H + j] = v
                db[2 * H + j] += v
                v = do * go * (1.0 - go)
                dz[bi, 3 * H + j] = v
                db[3 * H + j] += v
                dc_next[bi, j] = dc * gf
        _gemm(1, 0, G, I, B, 1.0, &dz[0, 0], G, &x[0, t, 0], T * I,
              1.0, &dwx[0, 0], I)
        if t > 0:
            _gemm(1, 0, G, H, B, 1.0, &dz[0, 0], G, &h[0, t - 1, 0], T * H,
                  1.0, &dwh[0, 0], H)
        _gemm(0, 0, B, I, G, 1.0, &dz[0, 0], G, &wx[0, 0], I,
              0.0, &dx[0, t, 0], T * I)
        _gemm(0, 0, B, H, G, 1.0, &dz[0, 0], G, &wh[0, 0], H,
              0.0, &dh_next[0, 0], H)
    return dx_arr, dwx_arr, dwh_arr, db_arr

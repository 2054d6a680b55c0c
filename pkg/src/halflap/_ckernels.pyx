# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; mirrors ``_pykernels``."""
import numpy as np

from libc.math cimport M_PI, asinh, cos, sin


def log_cot_half(s):
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64).ravel()
    out = np.empty(sv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(sv.shape[0]):
        ov[i] = asinh(cos(sv[i]) / sin(sv[i]))
    return out.reshape(np.shape(s))


def odd_mode(long k, s, double L):
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef Py_ssize_t ns = sv.shape[0], i
    cdef long n, n_terms = (abs(k) - 1) // 2 + 1
    cdef double sg = 1.0 if k > 0 else -1.0
    cdef double si, m, w, sin_s, re, im, ph
    cdef double complex bracket, pre
    out = np.empty(ns, dtype=np.complex128)
    cdef double complex[::1] ov = out
    pre = -2j * k / (L * M_PI)
    for i in range(ns):
        si = sv[i]
        re = 0.0
        im = 0.0
        for n in range(n_terms):
            m = 2.0 * n + 1.0
            w = 4.0 / ((m - 2.0) * m * (m + 2.0))
            re += w * cos(m * si)
            im -= sg * w * sin(m * si)
        sin_s = sin(si)
        bracket = (cos(si) + sin_s * sin_s * asinh(cos(si) / sin_s) + re) + 1j * im
        ph = k * si
        ov[i] = -2j * sg / (L * M_PI * (abs(k) + 2)) + pre * (cos(ph) + 1j * sin(ph)) * bracket
    return out


def direct_convolve(b, c):
    cdef const double complex[::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef const double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    cdef Py_ssize_t p = bv.shape[0], l, n, idx
    cdef double complex acc
    if cv.shape[0] != p:
        raise ValueError("sequences must have equal length")
    out = np.empty(p, dtype=np.complex128)
    cdef double complex[::1] ov = out
    for l in range(p):
        acc = 0
        for n in range(p):
            idx = l - n
            if idx < 0:
                idx += p
            acc += bv[n] * cv[idx]
        ov[l] = acc
    return out


def mode_series(long k, s, double L, long n_max):
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef Py_ssize_t ns = sv.shape[0], i
    cdef long n
    cdef double si, dp, dm, wp, wm, c2, s2, re, im
    out = np.empty(ns, dtype=np.complex128)
    cdef double complex[::1] ov = out
    for i in range(ns):
        si = sv[i]
        re = 0.0
        im = 0.0
        # summed from the smallest terms up
        for n in range(n_max, 0, -1):
            dp = 2.0 * n - k
            dm = -2.0 * n - k
            wp = 4.0 / (dp * (4.0 - dp * dp))
            wm = 4.0 / (dm * (4.0 - dm * dm))
            c2 = cos(2.0 * n * si)
            s2 = sin(2.0 * n * si)
            re += (wp - wm) * c2
            im += (wp + wm) * s2
        ov[i] = (1j * k / (L * M_PI)) * (2.0 / (4.0 - k * k) - (re + 1j * im))
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: stabilized complex moment tables over a frequency
grid and the Fourier inversion sum. A numpy fallback with the same
signatures lives in ``backends.py``; parity between the two is tested.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, sin

cnp.import_array()

DEF TWO_PI = 6.283185307179586476925286766559


def moment_table(const double[::1] log_a, double u, const double[::1] v):
    """Stabilized empirical moments exp((u+iv_m) ln A_k - u*L), L = max ln A.

    Returns a complex array of length len(v); the true moment is the
    returned value times exp(u*L).
    """
    cdef Py_ssize_t n = log_a.shape[0]
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t k, j
    cdef double lstar = log_a[0]
    for k in range(1, n):
        if log_a[k] > lstar:
            lstar = log_a[k]

    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double sr, si, mag, ph
    for j in range(m):
        sr = 0.0
        si = 0.0
        for k in range(n):
            mag = exp(u * (log_a[k] - lstar))
            ph = v[j] * log_a[k]
            sr += mag * cos(ph)
            si += mag * sin(ph)
        ov[j] = (sr + 1j * si) / n
    return out


def fourier_inversion(const double[::1] x, const double[::1] v, const double complex[::1] f,
                      const double[::1] taper, double u, double step):
    """out[i] = e^{u x_i} * (step / 2 pi) * sum_m e^{i v_m x_i} f_m taper_m."""
    cdef Py_ssize_t nx = x.shape[0]
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t i, j
    out = np.empty(nx, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double sr, si, fr, fi, c, s, w
    for i in range(nx):
        sr = 0.0
        si = 0.0
        for j in range(m):
            w = taper[j]
            if w == 0.0:
                continue
            c = cos(v[j] * x[i])
            s = sin(v[j] * x[i])
            fr = f[j].real * w
            fi = f[j].imag * w
            sr += c * fr - s * fi
            si += c * fi + s * fr
        w = exp(u * x[i]) * step / TWO_PI
        ov[i] = (sr * w) + 1j * (si * w)
    return out

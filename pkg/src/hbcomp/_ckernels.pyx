# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Semantics must match ``_pykernels`` exactly."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def horner(const double complex[::1] coeffs, const double complex[::1] z):
    """Evaluate the ascending-coefficient polynomial at every point of z."""
    cdef Py_ssize_t n = coeffs.shape[0], m = z.shape[0], i, k
    cdef double complex acc, x
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] res = out
    with nogil:
        for i in range(m):
            x = z[i]
            acc = 0
            for k in range(n - 1, -1, -1):
                acc = acc * x + coeffs[k]
            res[i] = acc
    return out


def carleson_sums(const double complex[::1] w,
                  const double complex[::1] phi,
                  const double[::1] weight):
    """I(w) = sum_j weight_j (1 - |w|^2) / |1 - conj(w) phi_j|^2 for each w."""
    cdef Py_ssize_t g = w.shape[0], m = phi.shape[0], i, j
    cdef double wr, wi, one_minus, acc, dr, di
    out = np.empty(g, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(g):
            wr = w[i].real
            wi = w[i].imag
            one_minus = 1.0 - (wr * wr + wi * wi)
            acc = 0.0
            for j in range(m):
                # 1 - conj(w) * phi
                dr = 1.0 - (wr * phi[j].real + wi * phi[j].imag)
                di = -(wr * phi[j].imag - wi * phi[j].real)
                acc += weight[j] / (dr * dr + di * di)
            res[i] = one_minus * acc
    return out

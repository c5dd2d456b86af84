"""Pure numpy versions of the compiled kernels (fallback backend)."""

import numpy as np


def horner(coeffs, z):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    acc = np.zeros(z.shape, dtype=np.complex128)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def carleson_sums(w, phi, weight, chunk=256):
    w = np.ascontiguousarray(w, dtype=np.complex128)
    phi = np.ascontiguousarray(phi, dtype=np.complex128)
    weight = np.ascontiguousarray(weight, dtype=np.float64)
    out = np.empty(w.shape[0], dtype=np.float64)
    # chunk over w to keep the outer product small
    for start in range(0, w.shape[0], chunk):
        ws = w[start:start + chunk]
        den = np.abs(1.0 - np.conj(ws)[:, None] * phi[None, :]) ** 2
        out[start:start + chunk] = (1.0 - np.abs(ws) ** 2) * (weight[None, :] / den).sum(axis=1)
    return out

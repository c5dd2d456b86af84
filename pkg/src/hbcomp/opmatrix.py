"""Finite sections of W_{u,phi} on H^2 and of C_phi on H(b).

Columns are computed numerically: functions are sampled on the unit
circle, Taylor coefficients come from an FFT, and division by a1 is a
forward power-series recurrence (exact in exact arithmetic because the
numerator vanishes to the right order at every xi_j).

Orthonormal bases used:
    H2_monomials  z^n, n >= 0
    Hb_split      z^k (k < N) followed by a1 z^n (n >= 0); orthonormal for
                  the equivalent norm |||.|||_b.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .config import tolerances
from .errors import NotInHardy, PoleOnSamplingCircle
from .hbspace import hermite_basis
from .polyrat import RatFunc, h2_membership

BACKOFF_RADIUS = 1.0 - 2.0**-12
_TAIL_TOL = 1e-14


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    basis: str
    K: int

    def frobenius_sq(self):
        return float(np.sum(np.abs(self.matrix) ** 2))

    def singular_values(self, top=8):
        return np.linalg.svd(self.matrix, compute_uv=False)[:top]

    def summary(self, top=8):
        return {
            "K": self.K,
            "basis": self.basis,
            "frobenius_sq": self.frobenius_sq(),
            "singular_values": [float(s) for s in self.singular_values(top)],
        }

    def to_json(self):
        out = self.summary()
        out["matrix"] = [[[float(x.real), float(x.imag)] for x in row] for row in self.matrix]
        return out


def _sampling_radius(*funcs):
    """1 unless some pole sits within 1e-6 outside the circle (defensive)."""
    t = tolerances()
    near = False
    for f in funcs:
        for loc, _ in RatFunc.coerce(f).poles():
            d = abs(loc) - 1.0
            if d <= t.circle_tol:
                raise PoleOnSamplingCircle(f"pole at {loc} on or inside the unit circle")
            near = near or d < 1e-6
    return BACKOFF_RADIUS if near else 1.0


def _fft_size(funcs, K, rho):
    """At least 4K nodes, doubled until the top quarter of the spectrum is negligible."""
    M = max(4 * K, 64)
    while True:
        z = rho * np.exp(2j * np.pi * np.arange(M) / M)
        worst = 0.0
        for f in funcs:
            c = np.abs(np.fft.fft(f(z))) / M
            big = float(np.max(c)) if len(c) else 0.0
            if big > 0:
                worst = max(worst, float(np.max(c[M // 2 : 3 * M // 4])) / big)
        if worst <= _TAIL_TOL or M >= 2**18:
            return M
        M *= 2


def truncate_weighted(u, phi, K):
    """K x K section of W_{u,phi}: column n holds Taylor coefficients of u phi^n."""
    u, phi = RatFunc.coerce(u), RatFunc.coerce(phi)
    if K > 512:
        raise ValueError("K <= 512 required")
    if not h2_membership(u).member:
        raise NotInHardy("u has a pole in the closed disk")
    rho = _sampling_radius(u, phi)
    M = _fft_size([u, phi], K, rho)
    z = rho * np.exp(2j * np.pi * np.arange(M) / M)
    uz, pz = u(z), phi(z)
    cols = np.empty((M, K), dtype=np.complex128)
    cur = uz.copy()
    for n in range(K):
        cols[:, n] = cur
        cur = cur * pz
    coef = np.fft.fft(cols, axis=0)[:K] / M
    if rho != 1.0:
        coef = coef / rho ** np.arange(K)[:, None]
    return TruncatedOperator(coef, "H2_monomials", K)


# ---------------------------------------------------------------------------
# numeric decomposition in H(b)


def _series_mul(a, b, n):
    out = np.zeros(n, dtype=np.complex128)
    for i in range(min(n, len(a))):
        out[i : n] += a[i] * b[: n - i]
    return out


def _compose_series(poly, inner, n):
    """Truncated series of poly(inner(h)) given the series of inner(h)."""
    out = np.zeros(n, dtype=np.complex128)
    for c in poly[::-1]:
        out = _series_mul(out, inner, n)
        out[0] += c
    return out


def _phi_series(phi, xi, n):
    jet = phi.jet(xi, n)
    return np.array([jet[k] / factorial(k) for k in range(n)])


def series_divide(g, a1):
    """Forward recurrence q with a1 * q = g as power series (a1(0) != 0)."""
    a = np.asarray(a1, dtype=np.complex128)
    q = np.zeros(len(g), dtype=np.complex128)
    a0 = a[0]
    for k in range(len(g)):
        lo = max(0, k - len(a) + 1)
        acc = g[k] - np.dot(a[1 : k - lo + 1][::-1], q[lo:k]) if k else g[0]
        q[k] = acc / a0
    return q


def decompose_series(coeffs_fn, m, phi, M):
    """(p_f, f_tilde Taylor coefficients) for f = P(phi), P a polynomial.

    coeffs_fn: ascending coefficients of P. Jets at xi_j come from series
    composition, Taylor coefficients of f from an FFT of P(phi) on T.
    """
    P = np.asarray(coeffs_fn, dtype=np.complex128)
    z = np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.polynomial.polynomial.polyval(phi(z), P)
    c = np.fft.fft(vals) / M
    if m.N == 0:
        return np.zeros(0, dtype=np.complex128), c
    jets = []
    for xi, k in zip(m.xi, m.mult):
        s = _compose_series(P, _phi_series(phi, xi, k), k)
        jets.append([s[i] * factorial(i) for i in range(k)])
    p = hermite_basis(m).combine(jets).coeffs
    p = np.pad(p, (0, max(0, m.N - len(p))))[: m.N]
    g = c.copy()
    g[: len(p)] -= p
    return p, series_divide(g, m.a1.coeffs)


def hb_cphi_matrix(m, prof, K):
    """K x K section of C_phi in the Hb_split orthonormal basis."""
    phi = prof.phi
    N = m.N
    M = _fft_size([phi], K + N, 1.0) * 2
    a1 = m.a1.coeffs
    mat = np.zeros((K, K), dtype=np.complex128)
    for j in range(K):
        if j < N:
            P = np.zeros(j + 1, dtype=np.complex128)
            P[j] = 1.0
        else:
            P = np.concatenate([np.zeros(j - N, dtype=np.complex128), a1])
        p, ft = decompose_series(P, m, phi, M)
        col = np.concatenate([p, ft[: K - N]])
        mat[:, j] = col[:K]
    return TruncatedOperator(mat, "Hb_split", K)


def verify_intertwining(m, prof, up, K=16):
    """max over n < K of |||C_phi(a1 B z^n) - a1 psi_w phi^n|||_b.

    Left side: numeric decomposition of (a1 B z^n) o phi. Right side:
    a1 times the symbolic psi_w phi^n (so its polynomial part is 0).
    """
    phi = prof.phi
    if not up.u_in_H2:
        raise NotInHardy("verify_intertwining needs a bounded case (u in H^2)")
    B = up.B
    if not B.is_polynomial:
        # B o phi is rational: compose through values instead of coefficients
        return _verify_intertwining_values(m, prof, up, K)
    base = (m.a1 * B.num).coeffs
    M = _fft_size([phi, up.psi_w], 4 * (K + len(base)), 1.0)
    z = np.exp(2j * np.pi * np.arange(M) / M)
    pw, ph = up.psi_w(z), phi(z)
    worst = 0.0
    for n in range(K):
        P = np.concatenate([np.zeros(n, dtype=np.complex128), base])
        p, ft = decompose_series(P, m, phi, M)
        right = np.fft.fft(pw * ph**n) / M
        dev = np.sum(np.abs(ft - right) ** 2) + np.sum(np.abs(p) ** 2)
        worst = max(worst, float(np.sqrt(dev)))
    return worst


def _verify_intertwining_values(m, prof, up, K):
    """Variant for B with poles: jets and values of (a1 B z^n) o phi directly."""
    phi = prof.phi
    B = up.B
    M = _fft_size([phi, up.psi_w, B.compose(phi)], 4 * (K + m.N + 4), 1.0)
    z = np.exp(2j * np.pi * np.arange(M) / M)
    pw, ph = up.psi_w(z), phi(z)
    outer = RatFunc(m.a1) * B
    worst = 0.0
    basis = hermite_basis(m) if m.N else None
    for n in range(K):
        F = outer * RatFunc(np.eye(1, n + 1, n).ravel())
        vals = F(ph)
        c = np.fft.fft(vals) / M
        Fphi = F.compose(phi)
        jets = [Fphi.jet(xi, k) for xi, k in zip(m.xi, m.mult)]
        p = basis.combine(jets).coeffs if basis else np.zeros(0)
        p = np.pad(p, (0, max(0, m.N - len(p))))[: m.N]
        g = c.copy()
        g[: len(p)] -= p
        ft = series_divide(g, m.a1.coeffs)
        right = np.fft.fft(pw * ph**n) / M
        dev = np.sum(np.abs(ft - right) ** 2) + np.sum(np.abs(p) ** 2)
        worst = max(worst, float(np.sqrt(dev)))
    return worst

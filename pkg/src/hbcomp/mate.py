"""Pythagorean mate of a rational b by Fejer-Riesz root splitting.

For rational f = P/Q bounded by 1 on the circle, 1 - |f|^2 on T equals
S(z) / (z^(n - deg Q) Q(z) Q~(z)), n = max(deg P, deg Q), where S is a
self-reciprocal polynomial of degree at most 2n. Its roots come in pairs (z0, 1/conj z0); the outer factor keeps
the roots with |z0| >= 1 and half of each (even) multiplicity on T.
"""

import warnings
from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.optimize import minimize_scalar

from .config import tolerances
from .errors import (
    HbcompError,
    IsInner,
    NormExceeded,
    NotASelfMap,
    NotOuter,
    OddCircleMultiplicity,
)
from .polyrat import CPoly, RatFunc

IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class MateData:
    b: RatFunc
    a: RatFunc
    a1: CPoly
    boundary_zeros: tuple  # ((xi, m), ...) sorted by argument in [0, 2pi)
    N: int

    @property
    def xi(self):
        return [x for x, _ in self.boundary_zeros]

    @property
    def mult(self):
        return [m for _, m in self.boundary_zeros]

    @property
    def n(self):
        return len(self.boundary_zeros)

    @property
    def degenerate(self):
        """True when ||b||_inf < 1, i.e. H(b) = H^2 with an equivalent norm."""
        return self.N == 0

    def same_space(self, other):
        return self is other or (
            self.N == other.N
            and all(abs(x - y) < 1e-9 and m == k for (x, m), (y, k) in zip(self.boundary_zeros, other.boundary_zeros))
        )

    def to_json(self):
        return {
            "b": self.b.to_json(),
            "a": self.a.to_json(),
            "a1": self.a1.to_json(),
            "boundary_zeros": [
                {"xi": [float(x.real), float(x.imag)], "m": int(m)} for x, m in self.boundary_zeros
            ],
            "N": int(self.N),
        }


def circle_samples(n=None):
    n = tolerances().sup_samples if n is None else n
    return np.exp(2j * pi * np.arange(n) / n)


def sup_on_circle(f, n=None):
    """max |f| on T: dense sampling followed by local refinement of the peaks."""
    f = RatFunc.coerce(f)
    n = tolerances().sup_samples if n is None else n
    theta = 2 * pi * np.arange(n) / n
    vals = np.abs(f(np.exp(1j * theta)))
    best = float(np.max(vals))
    h = 2 * pi / n
    for i in np.argsort(vals)[-4:]:
        res = minimize_scalar(
            lambda t: -abs(f(np.exp(1j * t))),
            bounds=(theta[i] - h, theta[i] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, float(-res.fun))
    return best


def _on_circle(loc, mult):
    t = tolerances()
    # multiple roots are located less precisely than simple ones
    tol = t.circle_tol if mult == 1 else t.cluster_tol
    return abs(abs(loc) - 1.0) <= tol


def _laurent_numerator(f):
    """S with 1 - |f|^2 = S / (z^(n - deg Q) Q Q~) on T, n = max(deg P, deg Q)."""
    P, Q = f.num, f.den
    dp, dq = max(P.degree(), 0), Q.degree()
    n = max(dp, dq)
    S = Q * Q.reversed_conj() * CPoly.monomial(n - dq) - P * P.reversed_conj(dp) * CPoly.monomial(n - dp)
    scale = (Q * Q.reversed_conj()).norm()
    return S, scale


def _outer_complement(f, what="b"):
    """Outer g = c R / Q with |g|^2 = 1 - |f|^2 on T and g(0) > 0.

    Returns (g, circle_roots) where circle_roots are (xi, m) zeros of g on T.
    """
    S, scale = _laurent_numerator(f)
    if S.is_zero or S.norm() <= 1e-10 * scale:
        raise IsInner(
            f"1 - |{what}|^2 vanishes identically on the circle: {what} is a finite Blaschke "
            "product (excluded: H(b) would be a finite-dimensional model space)"
        )
    keep, circle = [], []
    for cl in S.roots():
        loc, m = cl.location, cl.multiplicity
        if _on_circle(loc, m):
            if m % 2:
                raise OddCircleMultiplicity(
                    f"root {loc} of 1 - |{what}|^2 on the circle has odd multiplicity {m}"
                )
            xi = loc / abs(loc)
            keep.extend([xi] * (m // 2))
            circle.append((complex(xi), m // 2))
        elif abs(loc) > 1.0:
            keep.extend([loc] * m)
    R = CPoly.from_roots(keep)
    z = circle_samples(1024)
    target = 1.0 - np.abs(f(z)) ** 2
    shape = np.abs(R(z) / f.den(z)) ** 2
    c2 = float(np.dot(target, shape) / np.dot(shape, shape))
    g = RatFunc(R * np.sqrt(c2), f.den)
    g0 = g(0.0)
    g = g * (abs(g0) / g0)
    err = float(np.max(np.abs(np.abs(g(z)) ** 2 + np.abs(f(z)) ** 2 - 1.0)))
    if err > IDENTITY_TOL:
        raise HbcompError(f"Fejer-Riesz factorization failed: pythagorean residual {err:.3g}")
    circle.sort(key=lambda t: np.mod(np.angle(t[0]), 2 * pi))
    return g, circle


def _check_ball(f, what, exc):
    t = tolerances()
    for loc, _ in f.poles():
        if abs(loc) <= 1.0 + t.circle_tol:
            raise exc(f"{what} has a pole at {loc} in the closed unit disk")
    sup = sup_on_circle(f)
    if sup > 1.0 + t.selfmap_tol:
        raise exc(f"||{what}||_inf = {sup:.12g} > 1")
    return sup


def _assemble(b, a, circle):
    a1 = CPoly.one()
    for xi, m in circle:
        a1 = a1 * CPoly.from_roots([xi] * m)
    return MateData(b=b, a=a, a1=a1, boundary_zeros=tuple(circle), N=sum(m for _, m in circle))


def pythagorean_mate(b):
    """MateData for a rational b in the closed unit ball (not inner)."""
    b = RatFunc.coerce(b)
    sup = _check_ball(b, "b", NotASelfMap)
    a, circle = _outer_complement(b, "b")
    if not circle or sup < 1.0 - tolerances().norm_one_tol:
        warnings.warn("norm < 1: H(b) = H^2 case", stacklevel=2)
    return _assemble(b, a, circle)


def mate_from_a(a):
    """Build b with |b|^2 = 1 - |a|^2 on T from an outer rational a.

    b is normalized with b(0) >= 0. The returned mate is a multiplied by a
    unimodular constant so that a(0) > 0; nothing downstream depends on it.
    """
    a = RatFunc.coerce(a)
    t = tolerances()
    for loc, _ in a.zeros():
        if abs(loc) < 1.0 - t.circle_tol:
            raise NotOuter(f"a has a zero at {loc} inside the disk")
    for loc, _ in a.poles():
        if abs(loc) <= 1.0 + t.circle_tol:
            raise NotOuter(f"a has a pole at {loc} in the closed disk")
    sup = sup_on_circle(a)
    if sup > 1.0 + t.selfmap_tol:
        raise NormExceeded(f"||a||_inf = {sup:.12g} > 1")
    b, _ = _outer_complement(a, "a")
    a0 = a(0.0)
    a = a * (abs(a0) / a0)
    circle = []
    for loc, m in a.zeros():
        if _on_circle(loc, m):
            circle.append((complex(loc / abs(loc)), m))
    circle.sort(key=lambda t_: np.mod(np.angle(t_[0]), 2 * pi))
    z = circle_samples(1024)
    err = float(np.max(np.abs(np.abs(a(z)) ** 2 + np.abs(b(z)) ** 2 - 1.0)))
    if err > IDENTITY_TOL:
        raise HbcompError(f"pythagorean identity violated by {err:.3g}")
    if not circle:
        warnings.warn("norm < 1: H(b) = H^2 case", stacklevel=2)
    return _assemble(b, a, circle)


def pythagorean_residual(m, n=1024):
    z = circle_samples(n)
    return float(np.max(np.abs(np.abs(m.a(z)) ** 2 + np.abs(m.b(z)) ** 2 - 1.0)))

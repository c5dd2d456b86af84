"""Random problem generators shared by the property suites."""

import numpy as np

from hbcomp.polyrat import CPoly, RatFunc


def random_angles(rng, n, gap=0.6):
    while True:
        t = np.sort(rng.uniform(0, 2 * np.pi, n))
        d = np.diff(np.append(t, t[0] + 2 * np.pi))
        if n == 1 or d.min() > gap:
            return t


def random_a(rng, max_zeros=3, max_mult=2, outer_roots=1):
    """Outer polynomial with prescribed circle zeros, scaled to sup |a| = s < 1."""
    n = int(rng.integers(1, max_zeros + 1))
    xi = np.exp(1j * random_angles(rng, n))
    mult = rng.integers(1, max_mult + 1, n)
    roots = [x for x, m in zip(xi, mult) for _ in range(m)]
    for _ in range(int(rng.integers(0, outer_roots + 1))):
        roots.append(rng.uniform(1.6, 3.0) * np.exp(2j * np.pi * rng.uniform()))
    p = CPoly.from_roots(roots)
    z = np.exp(2j * np.pi * np.arange(4096) / 4096)
    s = rng.uniform(0.5, 0.95)
    return RatFunc(p * (s / np.max(np.abs(p(z))))), list(zip(xi, mult))


def random_outside_poly(rng, deg, rmin=1.3, rmax=3.0):
    roots = rng.uniform(rmin, rmax, deg) * np.exp(2j * np.pi * rng.uniform(size=deg))
    return CPoly.from_roots(roots, lead=complex(rng.normal(), rng.normal()))


def random_h_inf(rng, max_deg=4):
    """Rational function with poles outside |z| >= 1.3."""
    num = CPoly(rng.normal(size=int(rng.integers(1, max_deg + 1))) + 1j * rng.normal(size=1))
    den = random_outside_poly(rng, int(rng.integers(0, 3))) if rng.uniform() < 0.6 else CPoly.one()
    if den.degree() < 0 or den.is_zero:
        den = CPoly.one()
    return RatFunc(num, den)


def disk_points(rng, n=128, rmax=0.95):
    return np.sqrt(rng.uniform(0, rmax, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def circle(n=1024):
    return np.exp(2j * np.pi * np.arange(n) / n)

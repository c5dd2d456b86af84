"""Complex polynomials and rational functions.

Polynomials are stored as dense ascending coefficient arrays. Rational
functions are kept reduced: common roots of numerator and denominator are
cancelled by root matching, and the denominator is monic. Roots are found
from companion-matrix eigenvalues, grouped into validated clusters and
polished with Newton's method on the appropriate derivative.
"""

from dataclasses import dataclass
from math import comb, factorial
from numbers import Number

import numpy as np

from . import kernels
from .config import tolerances
from .errors import DivideByZeroPoly, NotInHardy, ZeroFunction

# radii tried (largest first) when looking for a multiple root around a seed
_MERGE_RADII = (1e-1, 5e-2, 2e-2, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
_VALIDATE_TOL = 1e-9


def _as_coeffs(values):
    if isinstance(values, CPoly):
        return values.coeffs
    if isinstance(values, Number):
        return np.array([values], dtype=np.complex128)
    arr = np.asarray(values, dtype=np.complex128).ravel()
    return arr


class CPoly:
    """Complex polynomial with ascending coefficients.

    The zero polynomial has an empty coefficient array and degree -1.
    """

    __slots__ = ("coeffs", "_roots")

    def __init__(self, coeffs=()):
        c = np.array(_as_coeffs(coeffs), dtype=np.complex128)
        if c.size:
            big = np.max(np.abs(c))
            tol = tolerances().coeff_tol
            if big <= tol:
                c = c[:0]
            else:
                keep = np.nonzero(np.abs(c) > tol * big)[0]
                c = c[: keep[-1] + 1]
        c.setflags(write=False)
        self.coeffs = c
        self._roots = None

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls([1.0])

    @classmethod
    def monomial(cls, k, c=1.0):
        out = np.zeros(k + 1, dtype=np.complex128)
        out[k] = c
        return cls(out)

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        p = np.array([lead], dtype=np.complex128)
        for r in roots:
            p = np.convolve(p, [-r, 1.0])
        return cls(p)

    # basic properties -----------------------------------------------------
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return len(self.coeffs) == 0

    @property
    def lead(self):
        return self.coeffs[-1] if len(self.coeffs) else 0.0

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"CPoly([{terms}])"

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        if np.isscalar(z):
            return complex(kernels.horner(self.coeffs, np.array([z], dtype=np.complex128))[0])
        z = np.asarray(z, dtype=np.complex128)
        return kernels.horner(self.coeffs, z.ravel()).reshape(z.shape)

    # arithmetic -----------------------------------------------------------
    def _padded(self, other):
        a, b = self.coeffs, _as_coeffs(other)
        n = max(len(a), len(b))
        return np.pad(a, (0, n - len(a))), np.pad(b, (0, n - len(b)))

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        a, b = self._padded(other)
        return CPoly(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        a, b = self._padded(other)
        return CPoly(a - b)

    def __rsub__(self, other):
        a, b = self._padded(other)
        return CPoly(b - a)

    def __neg__(self):
        return CPoly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        b = _as_coeffs(other)
        if self.is_zero or len(b) == 0:
            return CPoly()
        return CPoly(np.convolve(self.coeffs, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            if other == 0:
                raise DivideByZeroPoly("division of a polynomial by zero")
            return CPoly(self.coeffs / other)
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def __pow__(self, k):
        if k < 0:
            return RatFunc(1.0, self**-k)
        out = CPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divrem(self, q):
        """Polynomial long division: ``self = q * quot + rem``."""
        q = q if isinstance(q, CPoly) else CPoly(q)
        if q.is_zero:
            raise DivideByZeroPoly("polynomial division by the zero polynomial")
        n, m = self.degree(), q.degree()
        if n < m:
            return CPoly(), CPoly(self.coeffs)
        rem = self.coeffs.copy()
        qc = q.coeffs
        quot = np.zeros(n - m + 1, dtype=np.complex128)
        for k in range(n - m, -1, -1):
            coef = rem[k + m] / qc[-1]
            quot[k] = coef
            rem[k : k + m + 1] -= coef * qc
        rem = rem[:m]
        # the remainder inherits noise at the scale of the dividend
        scale = max(np.max(np.abs(self.coeffs)), 1e-300)
        rem[np.abs(rem) <= 1e-14 * scale] = 0.0
        return CPoly(quot), CPoly(rem)

    def __floordiv__(self, q):
        return self.divrem(q)[0]

    def __mod__(self, q):
        return self.divrem(q)[1]

    def deriv(self, k=1):
        c = self.coeffs
        for _ in range(k):
            if len(c) <= 1:
                return CPoly()
            c = c[1:] * np.arange(1, len(c))
        return CPoly(c)

    def compose(self, q):
        """self(q(z)) for a polynomial q (Horner in polynomial arithmetic)."""
        if isinstance(q, RatFunc):
            return RatFunc(self).compose(q)
        q = q if isinstance(q, CPoly) else CPoly(q)
        out = CPoly()
        for c in self.coeffs[::-1]:
            out = out * q + c
        return out

    def reversed_conj(self, n=None):
        """z^n * conj(p(1/conj z)) as a polynomial, n defaults to degree."""
        n = self.degree() if n is None else n
        c = np.pad(self.coeffs, (0, n + 1 - len(self.coeffs)))
        return CPoly(np.conj(c[::-1]))

    def conj_coeffs(self):
        return CPoly(np.conj(self.coeffs))

    def allclose(self, other, atol=1e-9):
        a, b = self._padded(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def taylor_at(self, z0, order):
        """Scaled derivatives p^(k)(z0)/k!, k = 0..order-1."""
        out = []
        d = self
        for k in range(order):
            out.append(d(z0) / factorial(k))
            d = d.deriv()
        return np.array(out)

    # roots ----------------------------------------------------------------
    def roots(self):
        """Root clusters (location, multiplicity, residual)."""
        if self._roots is None:
            self._roots = tuple(_find_clusters(self))
        return list(self._roots)

    # serialization --------------------------------------------------------
    def to_json(self):
        c = self.coeffs if len(self.coeffs) else np.zeros(1, dtype=np.complex128)
        return [[float(x.real), float(x.imag)] for x in c]

    @classmethod
    def from_json(cls, data):
        vals = []
        for item in data:
            if isinstance(item, Number):
                vals.append(complex(item))
            else:
                re, im = item
                vals.append(complex(re, im))
        return cls(vals)


@dataclass(frozen=True)
class RootCluster:
    location: complex
    multiplicity: int
    residual: float


def _eval_scale(c, z, k=0):
    """Size of the terms summed when evaluating p^(k)(z)/k! (noise scale)."""
    idx = np.arange(k, len(c))
    binoms = np.array([comb(int(i), k) for i in idx], dtype=float)
    return float(np.sum(np.abs(c[k:]) * binoms * np.abs(z) ** (idx - k)))


def _newton(p, z0, iters=12):
    dp = p.deriv()
    z = complex(z0)
    best = abs(p(z))
    for _ in range(iters):
        d = dp(z)
        if d == 0 or best == 0:
            break
        cand = z - p(z) / d
        val = abs(p(cand))
        if not val < best:
            break
        z, best = cand, val
    return z


def _validates(p, z, m):
    c = p.coeffs
    d = p
    for k in range(m):
        scale = _eval_scale(c, z, k)
        if abs(d(z)) / factorial(k) > _VALIDATE_TOL * max(scale, 1e-300):
            return False
        d = d.deriv()
    return True


def _find_clusters(p):
    if p.degree() <= 0:
        return []
    c = p.coeffs
    # exact zeros at the origin
    nz = int(np.argmax(np.abs(c) > 0))
    clusters = []
    if nz:
        clusters.append(RootCluster(0j, nz, 0.0))
        p = CPoly(c[nz:])
        c = p.coeffs
        if p.degree() <= 0:
            return clusters
    ev = np.polynomial.polynomial.polyroots(c).astype(np.complex128)
    cluster_tol = tolerances().cluster_tol
    remaining = list(range(len(ev)))
    while remaining:
        seed = remaining[0]
        members, loc = [seed], None
        for radius in _MERGE_RADII:
            r = radius * max(1.0, abs(ev[seed]))
            centre = ev[seed]
            group = [seed]
            # a multiple root splits into a ring; recentre on the group mean
            for _ in range(3):
                group = [i for i in remaining if abs(ev[i] - centre) <= r]
                if seed not in group:
                    group.append(seed)
                centre = np.mean(ev[group])
            if len(group) == 1:
                break
            m = len(group)
            cand = _newton(p.deriv(m - 1), np.mean(ev[group]))
            if _validates(p, cand, m):
                members, loc = group, cand
                break
        if loc is None:
            # coincident roots below cluster_tol are merged unconditionally
            group = [i for i in remaining if abs(ev[i] - ev[seed]) < cluster_tol * max(1.0, abs(ev[seed]))]
            members = group
            m = len(group)
            loc = _newton(p.deriv(m - 1), np.mean(ev[group])) if m > 1 else _newton(p, ev[seed])
        m = len(members)
        residual = abs(p(loc)) / max(_eval_scale(c, loc), 1e-300)
        clusters.append(RootCluster(complex(loc), m, float(residual)))
        remaining = [i for i in remaining if i not in members]
    clusters.sort(key=lambda r: (round(r.location.real, 9), round(r.location.imag, 9)))
    return clusters


def _deflate(p, loc, k):
    lin = CPoly([-loc, 1.0])
    for _ in range(k):
        p = p.divrem(lin)[0]
    return p


def _match_radius(loc):
    return 10 * tolerances().cluster_tol * max(1.0, abs(loc))


class RatFunc:
    """Reduced ratio num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        num = num if isinstance(num, CPoly) else CPoly(num)
        den = CPoly.one() if den is None else (den if isinstance(den, CPoly) else CPoly(den))
        if den.is_zero:
            raise DivideByZeroPoly("rational function with zero denominator")
        if num.is_zero:
            den = CPoly.one()
        elif reduce and den.degree() > 0 and num.degree() > 0:
            num, den = _cancel_common(num, den)
        lead = den.lead
        if lead != 1.0:
            num, den = CPoly(num.coeffs / lead), CPoly(den.coeffs / lead)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, f):
        if isinstance(f, RatFunc):
            return f
        return cls(f)

    # properties -----------------------------------------------------------
    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.degree() == 0

    @property
    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def poles(self):
        return [(r.location, r.multiplicity) for r in self.den.roots()]

    def zeros(self):
        return [(r.location, r.multiplicity) for r in self.num.roots()]

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"

    def __call__(self, z):
        return self.num(z) / self.den(z)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        if isinstance(other, Number):
            return RatFunc(self.num * other, self.den, reduce=False)
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            if other == 0:
                raise DivideByZeroPoly("division by zero")
            return RatFunc(self.num / other, self.den, reduce=False)
        o = RatFunc.coerce(other)
        if o.is_zero:
            raise DivideByZeroPoly("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        # powers of reduced coprime factors stay reduced
        return RatFunc(self.num**k, self.den**k, reduce=False)

    def deriv(self, k=1):
        f = self
        for _ in range(k):
            f = RatFunc(f.num.deriv() * f.den - f.num * f.den.deriv(), f.den * f.den)
        return f

    def jet(self, z0, order):
        """[f(z0), f'(z0), ..., f^(order-1)(z0)] from symbolic derivatives."""
        out = []
        f = self
        for _ in range(order):
            out.append(f(z0))
            f = f.deriv()
        return np.array(out, dtype=np.complex128)

    def compose(self, g, reduce=True):
        """self(g(z)) for a rational g."""
        g = RatFunc.coerce(g)
        P, Q = g.num, g.den
        n, d = self.num.degree(), self.den.degree()
        M = max(n, d, 0)
        ppow = [CPoly.one()]
        qpow = [CPoly.one()]
        for _ in range(M):
            ppow.append(ppow[-1] * P)
            qpow.append(qpow[-1] * Q)

        def lift(poly):
            acc = CPoly()
            for k, c in enumerate(poly.coeffs):
                acc = acc + (ppow[k] * qpow[M - k]) * c
            return acc

        return RatFunc(lift(self.num), lift(self.den), reduce=reduce)

    def reflect(self):
        """g with g(z) = conj(f(1/conj z)), so g = conj(f) on the circle."""
        n, d = self.num.degree(), self.den.degree()
        ns, ds = self.num.reversed_conj(max(n, 0)), self.den.reversed_conj(d)
        if self.is_zero:
            return RatFunc(0.0)
        # conj f(1/conj z) = z^(d-n) ns / ds
        if d >= n:
            return RatFunc(ns * CPoly.monomial(d - n), ds)
        return RatFunc(ns, ds * CPoly.monomial(n - d))

    def conj_coeffs(self):
        return RatFunc(self.num.conj_coeffs(), self.den.conj_coeffs(), reduce=False)

    def order_at(self, zeta):
        """Vanishing order (>0), regular nonzero (0) or minus pole order (<0)."""
        if self.is_zero:
            raise ZeroFunction("order of the zero function is undefined")
        return _multiplicity_at(self.num, zeta) - _multiplicity_at(self.den, zeta)

    def allclose(self, other, atol=1e-9):
        o = RatFunc.coerce(other)
        return self.num.allclose(o.num, atol) and self.den.allclose(o.den, atol)

    # serialization --------------------------------------------------------
    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            num = CPoly.from_json(data["num"])
            den = CPoly.from_json(data.get("den", [[1.0, 0.0]]))
        else:
            num, den = CPoly.from_json(data), CPoly.one()
        return cls(num, den)


def _multiplicity_at(p, z):
    if p.degree() <= 0:
        return 0
    for r in p.roots():
        if abs(r.location - z) <= _match_radius(z):
            return r.multiplicity
    return 0


def _cancel_common(num, den):
    nroots, droots = num.roots(), den.roots()
    for rn in nroots:
        for rd in droots:
            if abs(rn.location - rd.location) <= _match_radius(rd.location):
                k = min(rn.multiplicity, rd.multiplicity)
                num = _deflate(num, rn.location, k)
                den = _deflate(den, rd.location, k)
                break
    return num, den


def as_ratfunc(x):
    return RatFunc.coerce(x)


# ---------------------------------------------------------------------------
# operation-level API


def poly_arith(p, q, op):
    """Dispatch for add / sub / mul / divrem on polynomials."""
    p, q = CPoly(p), CPoly(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divrem":
        return p.divrem(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def roots(p):
    return CPoly(p).roots()


def reflect(f):
    return RatFunc.coerce(f).reflect()


def order_at(f, zeta):
    return RatFunc.coerce(f).order_at(zeta)


@dataclass(frozen=True)
class H2Check:
    member: bool
    witness: complex | None = None

    def __bool__(self):
        return self.member


def h2_membership(f):
    """InH2 iff no pole in the closed unit disk."""
    f = RatFunc.coerce(f)
    tol = tolerances().circle_tol
    bad = [loc for loc, _ in f.poles() if abs(loc) <= 1.0 + tol]
    if not bad:
        return H2Check(True)
    return H2Check(False, complex(min(bad, key=abs)))


def h2_norm_sq(f):
    """(1/2pi) integral of |f|^2 over the circle."""
    from .quadrature import circle_mean

    f = RatFunc.coerce(f)
    check = h2_membership(f)
    if not check.member:
        raise NotInHardy(f"pole at {check.witness} in the closed disk")
    if f.is_zero:
        return 0.0
    if f.is_polynomial:
        return float(np.sum(np.abs(f.num.coeffs) ** 2))
    deg = f.num.degree() + f.den.degree()
    return circle_mean(lambda z: np.abs(f(z)) ** 2, min_nodes=4 * (deg + 1)).value


def h2_inner(f, g):
    """<f, g> in H^2 for rational f, g analytic across the circle."""
    from .quadrature import circle_mean

    f, g = RatFunc.coerce(f), RatFunc.coerce(g)
    if f.is_zero or g.is_zero:
        return 0j
    if f.is_polynomial and g.is_polynomial:
        a, b = f.num._padded(g.num)
        return complex(np.sum(a * np.conj(b)))
    deg = f.num.degree() + f.den.degree() + g.num.degree() + g.den.degree()
    return circle_mean(lambda z: f(z) * np.conj(g(z)), min_nodes=4 * (deg + 1), complex_valued=True).value

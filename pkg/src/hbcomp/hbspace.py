"""The model H(b) = a1 H^2 (+) P_{N-1} for rational non-extreme b.

Every f in H(b) splits uniquely as f = a1 * f_tilde + p_f where p_f has
degree < N and interpolates the derivatives f^(k)(xi_j), k < m_j. The
norm used throughout is the equivalent one,

    |||f|||_b^2 = ||f_tilde||_2^2 + ||p_f||_2^2,

which defines the same topology (boundedness, compactness and the
Hilbert-Schmidt property are unaffected). The kernel norm of H(b) is
never computed.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .config import tolerances
from .errors import IllConditioned, MateMismatch, NotBoundedBelow, NotInHb, PoleAtBoundaryZero
from .polyrat import CPoly, RatFunc, h2_inner, h2_norm_sq

NORM_CONVENTION = "equivalent norm |||f|||_b^2 = ||f_tilde||^2 + ||p_f||^2"


@dataclass(frozen=True)
class HermiteBasis:
    """polys[i][k] has k-th derivative 1 at xi_i and all other data 0."""

    polys: tuple
    nodes: tuple
    mult: tuple
    residual: float
    condition: float

    @property
    def N(self):
        return sum(self.mult)

    def combine(self, jets):
        """sum_j sum_k jets[j][k] * r_{j,k}; jets[j][k] is the k-th derivative."""
        out = np.zeros(max(self.N, 1), dtype=np.complex128)
        for row, jet in zip(self.polys, jets):
            for r, v in zip(row, jet):
                out[: len(r.coeffs)] += v * r.coeffs
        return CPoly(out)


def confluent_vandermonde(nodes, mult):
    """Rows are the functionals p -> p^(l)(xi_j) applied to 1, z, ..., z^(N-1)."""
    N = sum(mult)
    V = np.zeros((N, N), dtype=np.complex128)
    row = 0
    d = np.arange(N)
    for xi, m in zip(nodes, mult):
        for l in range(m):
            falling = np.ones(N)
            for s in range(l):
                falling = falling * (d - s)
            powers = np.where(d >= l, xi ** np.maximum(d - l, 0), 0.0)
            V[row] = falling * powers
            row += 1
    return V


@lru_cache(maxsize=64)
def _hermite(nodes, mult):
    N = sum(mult)
    if N == 0:
        return HermiteBasis((), (), (), 0.0, 1.0)
    V = confluent_vandermonde(nodes, mult)
    C = np.linalg.solve(V, np.eye(N))
    residual = float(np.max(np.abs(V @ C - np.eye(N))))
    if residual > tolerances().hermite_residual or not np.all(np.isfinite(C)):
        raise IllConditioned(f"confluent Vandermonde residual {residual:.3g} (near-coincident boundary zeros)")
    polys, col = [], 0
    for m in mult:
        row = []
        for _ in range(m):
            row.append(CPoly(C[:, col]))
            col += 1
        polys.append(tuple(row))
    return HermiteBasis(tuple(polys), nodes, mult, residual, float(np.linalg.cond(V)))


def hermite_basis(m):
    return _hermite(tuple(m.xi), tuple(m.mult))


def boundary_jets(f, m):
    """[[f(xi_j), f'(xi_j), ...] for each j]; symbolic derivatives."""
    f = RatFunc.coerce(f)
    for loc, _ in f.poles():
        for xi in m.xi:
            if abs(loc - xi) <= 10 * tolerances().cluster_tol:
                raise PoleAtBoundaryZero(xi)
    return [f.jet(xi, k) for xi, k in zip(m.xi, m.mult)]


@dataclass(frozen=True)
class HbDecomposition:
    f: RatFunc
    f_tilde: RatFunc
    p_f: CPoly
    norm_sq: float
    space: object = field(repr=False, compare=False, default=None)
    member = True

    def to_json(self):
        return {
            "member": True,
            "p_f": self.p_f.to_json(),
            "f_tilde": self.f_tilde.to_json(),
            "norm_sq": self.norm_sq,
            "norm_convention": NORM_CONVENTION,
        }


@dataclass(frozen=True)
class HbNonMember:
    witness: complex
    reason: str = ""
    member = False

    def __bool__(self):
        return False

    def to_json(self):
        w = complex(self.witness)
        return {"member": False, "witness_pole": [w.real, w.imag], "reason": self.reason}


def _exact_quotient(num, a1):
    q, r = num.divrem(a1)
    scale = max(num.norm(), 1.0)
    if r.norm() <= 1e-8 * scale:
        return q
    return None


def decompose(f, m, validate=True):
    """Split f = a1 f_tilde + p_f, or report the pole that keeps f out of H(b)."""
    f = RatFunc.coerce(f)
    tol = tolerances()
    bad = [loc for loc, _ in f.poles() if abs(loc) <= 1.0 + tol.circle_tol]
    if bad:
        w = complex(min(bad, key=abs))
        where = "at a boundary zero of a" if any(abs(w - x) <= 1e-6 for x in m.xi) else "in the closed disk"
        return HbNonMember(w, f"pole of f at {w} {where}")
    if m.N == 0:
        p = CPoly()
        ft = f
    else:
        p = hermite_basis(m).combine(boundary_jets(f, m))
        num = f.num - p * f.den
        q = _exact_quotient(num, m.a1)
        ft = RatFunc(q, f.den) if q is not None else RatFunc(num, f.den * m.a1)
    tcheck = [loc for loc, _ in ft.poles() if abs(loc) <= 1.0 + tol.circle_tol]
    if tcheck:
        w = complex(min(tcheck, key=abs))
        return HbNonMember(w, f"f_tilde retains a pole at {w}")
    if validate:
        _check_split(f, ft, p, m)
    norm_sq = h2_norm_sq(ft) + h2_norm_sq(RatFunc(p))
    return HbDecomposition(f, ft, p, float(norm_sq), m)


def _check_split(f, ft, p, m):
    rng = np.random.default_rng(7)
    z = np.sqrt(rng.uniform(0, 0.95, 128)) * np.exp(2j * np.pi * rng.uniform(0, 1, 128))
    lhs = f(z)
    rhs = m.a1(z) * ft(z) + p(z)
    err = float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(lhs)))))
    if err > 1e-8:
        raise IllConditioned(f"decomposition residual {err:.3g} exceeds 1e-8")


def hb_norm_sq(f, m):
    d = decompose(f, m)
    if not d.member:
        raise NotInHb(d.witness)
    return d.norm_sq


def hb_inner(f, g):
    """<f, g> = <f_tilde, g_tilde>_2 + <p_f, p_g>_2 for two decompositions."""
    if f.space is not None and g.space is not None and not f.space.same_space(g.space):
        raise MateMismatch("decompositions were computed against different mates")
    return complex(h2_inner(f.f_tilde, g.f_tilde) + h2_inner(RatFunc(f.p_f), RatFunc(g.p_f)))


@dataclass(frozen=True)
class MultiplierCheck:
    multiplier: bool
    remainder: float
    p_phi: CPoly
    p_h: CPoly
    reason: str = ""

    def __bool__(self):
        return self.multiplier


def min_modulus_closed_disk(f, n=4096):
    """min |f| over the closed disk for f zero-free there (minimum principle)."""
    f = RatFunc.coerce(f)
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return float(np.min(np.abs(f(z))))


def multiplier_inverse_check(phi, m):
    """Certificate that 1/phi multiplies H(b).

    With h = 1/phi, the polynomial p_phi p_h - 1 vanishes to order m_j at
    each xi_j, so a1 divides it; the remainder of that division is the
    certificate.
    """
    phi = RatFunc.coerce(phi)
    d = decompose(phi, m)
    if not d.member:
        raise NotInHb(d.witness)
    for loc, _ in phi.zeros():
        if abs(loc) <= 1.0 + tolerances().circle_tol:
            raise NotBoundedBelow(f"phi vanishes at {loc} in the closed disk")
    if phi.is_zero or min_modulus_closed_disk(phi) <= 1e-6:
        raise NotBoundedBelow("min |phi| on the closed disk <= 1e-6")
    if m.N == 0:
        return MultiplierCheck(True, 0.0, CPoly(), CPoly(), "H(b) = H^2: bounded analytic functions are multipliers")
    h = RatFunc(phi.den, phi.num)
    basis = hermite_basis(m)
    p_phi = d.p_f
    p_h = basis.combine(boundary_jets(h, m))
    prod = p_phi * p_h - 1.0
    _, r = prod.divrem(m.a1)
    rem, size = r.norm(), prod.norm()
    ok = rem <= 1e-8 * size or rem <= 1e-14
    reason = "" if ok else f"a1 does not divide p_phi p_h - 1 (remainder {rem:.3g})"
    return MultiplierCheck(ok, float(rem), p_phi, p_h, reason)


def derivative_table(poly, nodes, mult):
    """p^(l)(xi_j) for all (j, l) pairs, in confluent Vandermonde row order."""
    out = []
    for xi, k in zip(nodes, mult):
        out.extend(poly.taylor_at(xi, k) * np.array([factorial(l) for l in range(k)]))
    return np.array(out)

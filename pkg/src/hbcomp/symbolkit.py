"""Admission and boundary profile of a rational self-map phi.

Indices of boundary zeros are 0-based everywhere (xi_0, xi_1, ...). The
reordering that puts the indices with |phi(xi_j)| = 1 first is kept as an
explicit permutation instead of relabelling the xi_j.
"""

from dataclasses import dataclass
from math import pi

import numpy as np

from .config import tolerances
from .errors import AmbiguousBoundaryValue, NotContactPoint, OddCircleMultiplicity
from .mate import _laurent_numerator, sup_on_circle
from .polyrat import RatFunc

VIOLATION = None  # marker in SymbolProfile.targets


@dataclass(frozen=True)
class SelfMap:
    sup: float
    strict: bool  # ||phi||_inf < 1
    member = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotSelfMap:
    witness: complex
    reason: str
    member = False

    def __bool__(self):
        return False


def admit_symbol(phi):
    phi = RatFunc.coerce(phi)
    t = tolerances()
    for loc, _ in phi.poles():
        if abs(loc) <= 1.0 + t.circle_tol:
            return NotSelfMap(complex(loc), f"pole at {loc} in the closed disk")
    if phi.is_constant:
        c = phi(0.0)
        if abs(c) >= 1.0 - t.circle_tol:
            return NotSelfMap(complex(c), "unimodular (or larger) constant does not map into the open disk")
        return SelfMap(abs(c), True)
    sup = sup_on_circle(phi)
    if sup > 1.0 + t.selfmap_tol:
        n = t.sup_samples
        z = np.exp(2j * pi * np.arange(n) / n)
        w = z[int(np.argmax(np.abs(phi(z))))]
        return NotSelfMap(complex(w), f"|phi| = {sup:.12g} > 1 on the circle")
    return SelfMap(sup, sup <= 1.0 - t.selfmap_tol)


@dataclass(frozen=True)
class SymbolProfile:
    phi: RatFunc
    values: tuple  # phi(xi_j), original order
    split: tuple  # involutive permutation, boundary-valued indices first
    p: int
    targets: tuple  # for k < p: index l_k with phi(xi_{split[k]}) = xi_{l_k}, or VIOLATION
    contact: tuple  # ((zeta, k_zeta), ...), sorted by argument
    is_inner: bool
    is_constant: bool
    sup: float

    @property
    def boundary_indices(self):
        return self.split[: self.p]

    @property
    def interior_indices(self):
        return self.split[self.p :]

    @property
    def violations(self):
        return [self.split[k] for k in range(self.p) if self.targets[k] is VIOLATION]

    @property
    def strict(self):
        """||phi||_inf < 1, i.e. no contact with the circle at all."""
        return not self.contact and not self.is_inner

    def to_json(self):
        return {
            "values": [[complex(v).real, complex(v).imag] for v in self.values],
            "split": list(self.split),
            "p": self.p,
            "targets": [None if t is VIOLATION else int(t) for t in self.targets],
            "contact": [{"zeta": [z.real, z.imag], "k": int(k)} for z, k in self.contact],
            "is_inner": self.is_inner,
            "is_constant": self.is_constant,
            "sup": self.sup,
        }


def involutive_split(flags):
    """Permutation (as a tuple) moving indices with flag True to the front.

    Misplaced indices are exchanged pairwise, so the permutation is a product
    of disjoint transpositions and equals its own inverse.
    """
    n = len(flags)
    p = sum(bool(f) for f in flags)
    out_front = [i for i in range(p) if not flags[i]]
    in_back = [i for i in range(p, n) if flags[i]]
    perm = list(range(n))
    for i, j in zip(out_front, in_back):
        perm[i], perm[j] = j, i
    return tuple(perm), p


def _classify(index, v, m):
    t = tolerances()
    if abs(v) < 1.0 - t.circle_tol:
        return "interior", None
    if not m.xi:
        return "violation", VIOLATION
    dist = [abs(v - x) for x in m.xi]
    ell = int(np.argmin(dist))
    d = dist[ell]
    if d < t.cluster_tol:
        return "boundary", ell
    if d < t.ambiguity_radius:
        raise AmbiguousBoundaryValue(index, complex(v), d)
    return "boundary", VIOLATION


def contact_set(phi):
    """(is_inner, ((zeta, k_zeta), ...)) from the circle roots of 1 - |phi|^2."""
    phi = RatFunc.coerce(phi)
    if phi.is_constant:
        return False, ()
    S, scale = _laurent_numerator(phi)
    if S.is_zero or S.norm() <= 1e-10 * scale:
        return True, ()
    t = tolerances()
    out = []
    for cl in S.roots():
        loc, mult = cl.location, cl.multiplicity
        tol = t.circle_tol if mult == 1 else t.cluster_tol
        if abs(abs(loc) - 1.0) <= tol:
            if mult % 2:
                raise OddCircleMultiplicity(f"1 - |phi|^2 has a zero of odd order {mult} at {loc}")
            out.append((complex(loc / abs(loc)), mult // 2))
    out.sort(key=lambda c: np.mod(np.angle(c[0]), 2 * pi))
    return False, tuple(out)


def profile(phi, m):
    phi = RatFunc.coerce(phi)
    values = tuple(complex(phi(x)) for x in m.xi)
    kinds = [_classify(j, v, m) for j, v in enumerate(values)]
    split, p = involutive_split([k == "boundary" for k, _ in kinds])
    targets = tuple(kinds[split[k]][1] for k in range(p))
    is_inner, contact = contact_set(phi)
    sup = 1.0 if (is_inner or contact) else float(sup_on_circle(phi))
    return SymbolProfile(
        phi=phi,
        values=values,
        split=split,
        p=p,
        targets=targets,
        contact=contact,
        is_inner=is_inner,
        is_constant=phi.is_constant,
        sup=sup,
    )


@dataclass(frozen=True)
class AdcData:
    derivative: complex
    quotient: float


def adc_data(phi, zeta, r=1.0 - 1e-6):
    """phi'(zeta) and the radial Julia-Caratheodory quotient at zeta."""
    phi = RatFunc.coerce(phi)
    v = phi(zeta)
    if abs(v) < 1.0 - tolerances().circle_tol:
        raise NotContactPoint(f"|phi({zeta})| = {abs(v):.12g} < 1")
    d = complex(phi.deriv()(zeta))
    q = (1.0 - abs(phi(r * zeta))) / (1.0 - r)
    return AdcData(d, float(q))

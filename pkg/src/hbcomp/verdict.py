"""Decision engine for C_phi on H(b).

Boundedness and the Hilbert-Schmidt property are decided exactly for
rational data (pole locations and local orders). Compactness goes through
a rule list; each rule that fires is recorded with a one-line statement of
the result it relies on.

Rule identifiers
    R1..R4  boundedness        H0..H3  Hilbert-Schmidt
    C0..C6  compactness        D0      ||b||_inf < 1 (H(b) = H^2)
"""

from dataclasses import dataclass, field
from enum import Enum
from math import pi

import numpy as np

from .config import tolerances
from .errors import HbcompError, NotASelfMap, WrongSpace
from .hbspace import NORM_CONVENTION
from .mate import _laurent_numerator, mate_from_a, pythagorean_mate
from .polyrat import CPoly, RatFunc, h2_membership
from .quadrature import circle_mean, graded_mean
from .scan import GridSpec, ScanData, carleson_scan
from .symbolkit import admit_symbol, adc_data, profile
from .ubuild import build_u, cancel_linear


class Tri(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"
    DEGENERATE = "Degenerate"


CITATIONS = {
    "D0": "||b||_inf < 1: H(b) = H^2 with an equivalent norm, and every analytic self-map gives a bounded C_phi (Littlewood subordination)",
    "R1": "boundedness forces phi(xi_j) to lie in D or in the zero set of a on T",
    "R2": "boundedness forces m_k <= m_{l_k} whenever phi(xi_k) = xi_{l_k}",
    "R3": "C_phi is bounded on H(b) iff W_{u,phi} is bounded on H^2; a bounded W_{u,phi} maps 1 to u, so u must lie in H^2",
    "R4": "rational u in H^2 has no pole on the closed disk, so u is in H^inf; then W_{u,phi} = M_u C_phi is bounded on H^2 (Littlewood), hence C_phi is bounded on H(b)",
    "H0": "an unbounded operator is not Hilbert-Schmidt",
    "H1": "||phi||_inf < 1: integral of |u|^2/(1-|phi|^2) dm <= ||u||_2^2 / (1 - ||phi||_inf^2) < inf",
    "H2": "phi inner: 1-|phi|^2 = 0 a.e. on T, so the integral of |u|^2/(1-|phi|^2) diverges unless u = 0",
    "H3": "C_phi is Hilbert-Schmidt on H(b) iff integral of |u|^2/(1-|phi|^2) dm < inf; near a contact point zeta the integrand has local order 2 ord_zeta(u) - 2 k_zeta",
    "C0": "an unbounded operator is not compact",
    "C1": "Hilbert-Schmidt operators are compact",
    "C2": "compactness forces m_k < m_{l_k} whenever phi(xi_k) = xi_{l_k}",
    "C3": "phi(xi_j) in D for all j and closure(phi(D)) meets T only inside {xi_j}: C_phi is compact",
    "C4": "u in H^2 continuous on the closed disk and ess sup of |u| over {|phi| >= 1 - delta} -> 0: C_phi is compact",
    "C5": "compactness forces (1 - r^2) |u(r zeta)|^2 / (1 - |phi(r zeta)|^2) -> 0 as r -> 1 (adjoint applied to normalized kernels)",
    "C6": "no rule decides; compactness iff I(w) -> 0 as |w| -> 1 (scan evidence attached)",
}

NOTES = {
    "norm": "all H(b) quantities use the " + NORM_CONVENTION,
    "hs_value": "only finiteness of the Hilbert-Schmidt integral is equated with the HS property; its value is not an HS norm of C_phi on H(b)",
    "trace": "||phi||_inf < 1 also makes C_phi trace class (remark only, not computed)",
    "h_phi": "membership of u in H(phi) is not computed",
    "h2_contrast": "phi has an angular derivative at each contact point, so C_phi is not compact on H^2 "
    "(classical, not re-verified here); the compactness found on H(b) does not transfer to H^2",
}


@dataclass(frozen=True)
class FiredRule:
    rule: str
    citation: str
    evidence: str

    def to_json(self):
        return {"rule": self.rule, "citation": self.citation, "evidence": self.evidence}


def fire(rule, evidence):
    return FiredRule(rule, CITATIONS[rule], evidence)


@dataclass(frozen=True)
class HsFinite:
    value: float
    converged: bool
    nodes: int
    finite = True


@dataclass(frozen=True)
class HsDivergent:
    points: tuple  # ((zeta, local order), ...)
    inner: bool = False
    finite = False


@dataclass
class Verdict:
    bounded: Tri
    compact: Tri
    hilbert_schmidt: Tri
    fired_rules: list = field(default_factory=list)
    scans: ScanData | None = None
    hs: object = None
    notes: list = field(default_factory=list)

    def rules(self):
        return [r.rule for r in self.fired_rules]

    def check_lattice(self):
        b, c, h = self.bounded, self.compact, self.hilbert_schmidt
        if h is Tri.YES and c is not Tri.YES:
            raise HbcompError("lattice violated: HS without compact")
        if c is Tri.YES and b is not Tri.YES:
            raise HbcompError("lattice violated: compact without bounded")
        if b is Tri.NO and (c is not Tri.NO or h is not Tri.NO):
            raise HbcompError("lattice violated: unbounded but not excluded")

    def to_json(self):
        out = {
            "bounded": self.bounded.value,
            "compact": self.compact.value,
            "hilbert_schmidt": self.hilbert_schmidt.value,
            "fired_rules": [r.to_json() for r in self.fired_rules],
            "notes": list(self.notes),
        }
        if isinstance(self.hs, HsFinite):
            out["hs_integral"] = {"finite": True, "value": self.hs.value, "converged": self.hs.converged}
        elif isinstance(self.hs, HsDivergent):
            out["hs_integral"] = {
                "finite": False,
                "inner": self.hs.inner,
                "divergent_at": [
                    {"zeta": [complex(z).real, complex(z).imag], "order": int(o)} for z, o in self.hs.points
                ],
            }
        if self.scans is not None:
            out["scan"] = self.scans.to_json()
        return out


# ---------------------------------------------------------------------------
# Hilbert-Schmidt integral


def _z_power(k):
    return CPoly.monomial(k) if k > 0 else CPoly.one()


def hs_integrand_parts(u, phi):
    """(num, den) polynomials with num/den = |u|^2 / (1 - |phi|^2) on T."""
    U, V = u.num, u.den
    du, dv = max(U.degree(), 0), V.degree()
    S, _ = _laurent_numerator(phi)
    Q = phi.den
    n = max(phi.num.degree(), 0, Q.degree())
    e = dv + n - Q.degree() - du
    num = U * U.reversed_conj(du) * Q * Q.reversed_conj() * _z_power(e)
    den = V * V.reversed_conj() * S * _z_power(-e)
    return num, den


def hs_integrand(up, prof):
    """Reduced rational W with W = |u|^2 / (1 - |phi|^2) on T (finite case)."""
    num, den = hs_integrand_parts(up.u, prof.phi)
    for zeta, k in prof.contact:
        den, dk = cancel_linear(den, zeta, 2 * k)
        num, nk = cancel_linear(num, zeta, dk)
        if nk < dk:
            raise HbcompError(f"integrand keeps a pole of order {dk - nk} at {zeta}")
    return RatFunc(num, den)


def local_orders(up, prof):
    """((zeta, 2 ord(u) - 2 k), ...) over the contact set."""
    out = []
    for zeta, k in prof.contact:
        ou = up.u.order_at(zeta) if not up.u.is_zero else 10**6
        out.append((zeta, 2 * ou - 2 * k))
    return tuple(out)


def hs_integral(up, prof):
    """Finite(value) or DivergentAt(points) for the integral of |u|^2/(1-|phi|^2)."""
    if up.u.is_zero:
        return HsFinite(0.0, True, 0)
    if prof.is_inner:
        return HsDivergent((), inner=True)
    bad = tuple((z, o) for z, o in local_orders(up, prof) if o < 0)
    if bad:
        return HsDivergent(bad)
    W = hs_integrand(up, prof)
    for loc, _ in W.poles():
        if abs(abs(loc) - 1.0) <= tolerances().circle_tol:
            raise HbcompError(f"reduced integrand has a pole on the circle at {loc}")
    deg = W.num.degree() + W.den.degree()
    q = circle_mean(lambda z: np.real(W(z)), min_nodes=4 * (deg + 1))
    return HsFinite(float(q.value), q.converged, q.nodes)


def hs_partial(up, prof, depth):
    """Graded-rule value of the raw integrand; grows with depth when divergent."""
    num, den = hs_integrand_parts(up.u, prof.phi)
    marks = [float(np.mod(np.angle(z), 2 * pi)) for z, _ in prof.contact]
    res = graded_mean(lambda z: np.real(num(z) / den(z)), marks, depth=depth, max_order=16)
    return res.value


# ---------------------------------------------------------------------------
# radial order along r -> 1 (C5)


def _low_order(p, rel=1e-10):
    c = np.abs(p.coeffs)
    if not len(c):
        return 10**6
    big = float(np.max(c))
    return int(np.argmax(c > rel * big))


def radial_orders(u, phi, zeta):
    """Orders in t = 1 - r of |u(r zeta)|^2 and 1 - |phi(r zeta)|^2 at t = 0."""
    line = RatFunc([zeta, -zeta])  # z = zeta (1 - t)
    ut = RatFunc.coerce(u).compose(line, reduce=False)
    ou = 2 * (_low_order(ut.num) - _low_order(ut.den))
    pt = phi.compose(line, reduce=False)
    P, Q = pt.num, pt.den
    # t real: conj of the series is the series with conjugated coefficients
    D = Q * Q.conj_coeffs() - P * P.conj_coeffs()
    return ou, _low_order(D)


# ---------------------------------------------------------------------------
# decisions


def decide_bounded(prof, up, m):
    rules = []
    for k in range(prof.p):
        j = prof.split[k]
        ell = prof.targets[k]
        if ell is None:
            rules.append(fire("R1", f"|phi(xi_{j})| = 1 but phi(xi_{j}) = {prof.values[j]:.6g} is not a zero of a"))
        elif m.mult[j] > m.mult[ell]:
            rules.append(fire("R2", f"phi(xi_{j}) = xi_{ell} with m_{j} = {m.mult[j]} > m_{ell} = {m.mult[ell]}"))
    if up is not None:
        if not up.u_in_H2:
            rules.append(fire("R3", f"u has a pole at {up.witness:.6g} in the closed disk"))
        elif not rules:
            rules.append(fire("R4", "u has no pole in the closed disk (u in H^2, hence H^inf)"))
    if any(r.rule in ("R1", "R2", "R3") for r in rules):
        return Tri.NO, rules
    return Tri.YES, rules


def decide_hs(prof, up, m, bounded):
    if bounded is Tri.NO:
        return Tri.NO, [fire("H0", "C_phi is unbounded")], None
    if prof.strict:
        hs = hs_integral(up, prof)
        return Tri.YES, [fire("H1", f"sup |phi| on T = {prof.sup:.12g} < 1")], hs
    if prof.is_inner and not up.u.is_zero:
        return Tri.NO, [fire("H2", "1 - |phi|^2 vanishes identically on T and u is not 0")], HsDivergent((), True)
    hs = hs_integral(up, prof)
    orders = ", ".join(f"zeta={complex(z):.6g}: {o}" for z, o in local_orders(up, prof))
    if hs.finite:
        return Tri.YES, [fire("H3", f"local orders [{orders}] all >= 0; integral = {hs.value:.12g}")], hs
    return Tri.NO, [fire("H3", f"local orders [{orders}]; divergent")], hs


def _generic_points(up, count=8):
    out = []
    for k in range(count):
        z = np.exp(2j * pi * (k + 0.5) / count)
        if abs(up.u(z)) > 1e-8:
            out.append(complex(z))
    return out


def decide_compact(prof, up, m, bounded, hs_verdict):
    """Evaluate every compactness rule; all that fire are recorded.

    Sufficient (C1, C3, C4) and necessary (C2, C5) rules firing together
    would be a contradiction and raise.
    """
    if bounded is Tri.NO:
        return Tri.NO, [fire("C0", "C_phi is unbounded")]
    yes, no = [], []
    if hs_verdict is Tri.YES:
        yes.append(fire("C1", "C_phi is Hilbert-Schmidt"))
    for k in range(prof.p):
        j, ell = prof.split[k], prof.targets[k]
        if ell is not None and m.mult[j] == m.mult[ell]:
            no.append(fire("C2", f"phi(xi_{j}) = xi_{ell} with m_{j} = m_{ell} = {m.mult[j]}"))
    t = tolerances()
    if prof.p == 0 and not prof.is_inner:
        hits = [any(abs(prof.phi(z) - x) < t.cluster_tol for x in m.xi) for z, _ in prof.contact]
        if all(hits):
            img = ", ".join(f"{complex(prof.phi(z)):.6g}" for z, _ in prof.contact)
            yes.append(fire("C3", f"all phi(xi_j) in D; phi(F) = {{{img}}} lies in the zeros of a on T"))
    if up.u_in_H2 and not prof.is_inner and prof.contact:
        if all(up.u.is_zero or up.u.order_at(z) >= 1 for z, _ in prof.contact):
            yes.append(fire("C4", "u vanishes at every contact point"))
    points = [z for z, _ in prof.contact] if not prof.is_inner else _generic_points(up)
    for z in points:
        ou, od = radial_orders(up.u, prof.phi, z)
        if 1 + ou - od == 0:
            no.append(
                fire("C5", f"at zeta = {z:.6g}: order of (1-r^2)|u|^2 is {1 + ou}, of 1-|phi|^2 is {od}; positive limit")
            )
            break
    if yes and no:
        raise HbcompError(f"compactness rules disagree: {[r.rule for r in yes]} vs {[r.rule for r in no]}")
    if yes:
        return Tri.YES, yes
    if no:
        return Tri.NO, no
    return Tri.UNKNOWN, [fire("C6", "C4 and C5 both inconclusive")]


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class Analysis:
    mate: object
    profile: object
    upack: object
    verdict: Verdict
    admitted: object


def build_mate(b=None, a=None):
    if (b is None) == (a is None):
        raise ValueError("exactly one of b or a is required")
    return pythagorean_mate(b) if b is not None else mate_from_a(a)


def analyze(phi, b=None, a=None, mate=None, scan=False, grid=None, threads=None):
    m = mate if mate is not None else build_mate(b, a)
    phi = RatFunc.coerce(phi)
    adm = admit_symbol(phi)
    if not adm:
        raise NotASelfMap(f"phi is not a self-map of the disk: {adm.reason} (witness {adm.witness:.6g})")
    if m.N == 0:
        v = Verdict(Tri.DEGENERATE, Tri.UNKNOWN, Tri.UNKNOWN, [fire("D0", "no zeros of a on T")])
        v.notes.append(NOTES["norm"])
        return Analysis(m, None, None, v, adm)
    prof = profile(phi, m)
    up = None if prof.violations else build_u(prof, m)
    bounded, rules = decide_bounded(prof, up, m)
    hs_v, hs_rules, hs = decide_hs(prof, up, m, bounded)
    compact, c_rules = decide_compact(prof, up, m, bounded, hs_v)
    v = Verdict(bounded, compact, hs_v, rules + hs_rules + c_rules, hs=hs)
    v.notes.append(NOTES["norm"])
    if hs_v is Tri.YES:
        v.notes.append(NOTES["hs_value"])
    if prof.strict:
        v.notes.append(NOTES["trace"])
    if compact is Tri.YES and prof.contact:
        v.notes.append(NOTES["h2_contrast"])
    if scan or compact is Tri.UNKNOWN:
        if up is not None and up.u_in_H2:
            v.scans = carleson_scan(up.u, phi, [z for z, _ in prof.contact], grid or GridSpec(), threads)
    v.check_lattice()
    return Analysis(m, prof, up, v, adm)


def sarason_silva_check(phi, m):
    """Cross-checks specific to b = (1 + z)/2 (N = 1, xi = 1)."""
    z = np.exp(2j * pi * np.arange(64) / 64)
    if m.N != 1 or abs(m.xi[0] - 1.0) > 1e-9 or np.max(np.abs(m.b(z) - (1 + z) / 2)) > 1e-9:
        raise WrongSpace("this check applies to b = (1 + z)/2 only")
    phi = RatFunc.coerce(phi)
    res = analyze(phi, mate=m)
    v1 = complex(phi(1.0))
    out = {"phi(1)": v1, "bounded": res.verdict.bounded, "compact": res.verdict.compact, "hs": res.verdict.hilbert_schmidt}
    if abs(v1) >= 1.0 - tolerances().circle_tol:
        d = adc_data(phi, 1.0)
        out["adc_derivative"] = d.derivative
        out["adc_quotient"] = d.quotient
        out["note"] = "u = (phi - 1)/(z - 1) in H(phi) is equivalent by theory; " + NOTES["h_phi"]
    else:
        # integrand |phi-1|^2 |phi-phi(1)|^2 / (|z-1|^2 (1-|phi|^2)) equals |u|^2/(1-|phi|^2)
        u = (phi - 1.0) * (phi - v1) / RatFunc([-1.0, 1.0])
        check = h2_membership(u)
        out["u_in_H2"] = check.member
        if isinstance(res.verdict.hs, HsFinite):
            out["integral"] = res.verdict.hs.value
        out["u_matches"] = bool(np.max(np.abs(u(0.7 * z) - res.upack.u(0.7 * z))) < 1e-9)
    return out

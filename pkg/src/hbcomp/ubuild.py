"""Auxiliary functions attached to (b, phi).

    u      = (a1 o phi) * prod_{j interior} (phi - phi(xi_j))^{m_j} / a1
    psi    = prod_j ((phi - phi(xi_j)) / (z - xi_j))^{m_j}
    B      = prod_{j interior} ((z - lam_j) / (1 - conj(lam_j) z))^{m_j}
    psi_w  = u / prod_{j interior} (1 - conj(lam_j) phi)^{m_j}

with lam_j = phi(xi_j). Composition C_phi on H(b) is tied to the weighted
composition W_{u,phi} on H^2, and the rest of the pipeline reads u.
"""

from dataclasses import dataclass

import numpy as np

from .polyrat import CPoly, H2Check, RatFunc, _eval_scale, h2_membership

_DIVIDE_TOL = 1e-9


@dataclass(frozen=True)
class UPack:
    u: RatFunc
    psi_factor: RatFunc
    B: RatFunc
    psi_w: RatFunc
    u_in_H2: bool
    witness: complex | None
    lambdas: tuple  # ((j, lam_j, m_j), ...) interior targets
    residual_poles: tuple  # ((xi_j, order), ...) a1 factors that did not cancel

    def to_json(self):
        w = None if self.witness is None else [self.witness.real, self.witness.imag]
        return {"u": self.u.to_json(), "in_H2": self.u_in_H2, "witness_pole": w}


def cancel_linear(num, xi, k):
    """Divide num by (z - xi) as long as it vanishes at xi, at most k times.

    Returns (quotient, number of factors removed).
    """
    lin = CPoly([-xi, 1.0])
    done = 0
    while done < k and num.degree() >= 1:
        q, r = num.divrem(lin)
        val = abs(r.coeffs[0]) if len(r.coeffs) else 0.0
        if val > _DIVIDE_TOL * max(_eval_scale(num.coeffs, xi), 1e-300):
            break
        num = q
        done += 1
    return num, done


def divide_by_a1(num, den, m):
    """(num / den) / a1 with the factors (z - xi_j)^{m_j} cancelled where possible."""
    rest = CPoly.one()
    leftovers = []
    for xi, mult in m.boundary_zeros:
        num, done = cancel_linear(num, xi, mult)
        if done < mult:
            rest = rest * CPoly.from_roots([xi] * (mult - done))
            leftovers.append((xi, mult - done))
    return RatFunc(num, den * rest), tuple(leftovers)


def _power(f, k):
    return f**k if k else RatFunc(1.0)


def build_u(prof, m):
    phi = prof.phi
    interior = prof.interior_indices
    lambdas = tuple((j, prof.values[j], m.mult[j]) for j in interior)

    top = RatFunc(m.a1).compose(phi) if m.N else RatFunc(1.0)
    for _, lam, mult in lambdas:
        top = top * _power(phi - lam, mult)
    u, leftovers = divide_by_a1(top.num, top.den, m)

    num, den = CPoly.one(), CPoly.one()
    for xi, lam, mult in zip(m.xi, prof.values, m.mult):
        f = phi - lam
        num = num * f.num**mult
        den = den * f.den**mult
    psi, _ = divide_by_a1(num, den, m)

    B = RatFunc(1.0)
    for _, lam, mult in lambdas:
        B = B * _power(RatFunc([-lam, 1.0], [1.0, -np.conj(lam)]), mult)

    weight = RatFunc(1.0)
    for _, lam, mult in lambdas:
        weight = weight * _power(1.0 - phi * np.conj(lam), mult)
    psi_w = u / weight if not u.is_zero else RatFunc(0.0)

    check = h2_membership(u) if not u.is_zero else H2Check(True)
    return UPack(
        u=u,
        psi_factor=psi,
        B=B,
        psi_w=psi_w,
        u_in_H2=check.member,
        witness=check.witness,
        lambdas=lambdas,
        residual_poles=leftovers,
    )


def u_direct(z, prof, m):
    """Pointwise value of u from its defining formula (no symbolic reduction)."""
    z = np.asarray(z, dtype=np.complex128)
    w = prof.phi(z)
    out = m.a1(w) / m.a1(z)
    for j in prof.interior_indices:
        out = out * (w - prof.values[j]) ** m.mult[j]
    return out

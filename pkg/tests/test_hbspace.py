import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbcomp.errors import MateMismatch, NotBoundedBelow, PoleAtBoundaryZero
from hbcomp.hbspace import (
    boundary_jets,
    confluent_vandermonde,
    decompose,
    derivative_table,
    hb_inner,
    hb_norm_sq,
    hermite_basis,
    multiplier_inverse_check,
)
from hbcomp.mate import pythagorean_mate
from hbcomp.polyrat import CPoly, RatFunc

from gen import disk_points, random_a, random_h_inf, random_outside_poly


def test_z_squared(m_half):
    d = decompose(RatFunc([0.0, 0.0, 1.0]), m_half)
    assert d.member
    assert np.allclose(d.p_f.coeffs, [1.0])
    # z^2 - 1 = (z - 1)(z + 1)
    assert abs(d.norm_sq - 3.0) < 1e-12


def test_nonmember_pole_at_xi(m_half):
    d = decompose(RatFunc([1.0], [-1.0, 1.0]), m_half)
    assert not d.member and abs(d.witness - 1.0) < 1e-9
    with pytest.raises(PoleAtBoundaryZero):
        boundary_jets(RatFunc([1.0], [-1.0, 1.0]), m_half)


def test_hermite_delta(m_cubic):
    H = hermite_basis(m_cubic)
    for j, row in enumerate(H.polys):
        for k, r in enumerate(row):
            table = derivative_table(r, m_cubic.xi, m_cubic.mult)
            want = np.zeros(m_cubic.N)
            want[sum(m_cubic.mult[:j]) + k] = 1.0
            assert np.max(np.abs(table - want)) < 1e-9


def test_vandermonde_shape(m_cubic):
    V = confluent_vandermonde(m_cubic.xi, m_cubic.mult)
    assert V.shape == (3, 3)
    assert np.linalg.matrix_rank(V) == 3


def test_inner_product(m_half):
    f, g = decompose(RatFunc([1.0, 2.0]), m_half), decompose(RatFunc([0.0, 1j]), m_half)
    assert abs(hb_inner(f, f) - hb_norm_sq(RatFunc([1.0, 2.0]), m_half)) < 1e-10
    other = pythagorean_mate(RatFunc([0.5, 0.0, 0.5]))
    h = decompose(RatFunc([1.0]), other)
    with pytest.raises(MateMismatch):
        hb_inner(f, h)
    assert np.isfinite(hb_inner(f, g))


def test_multiplier(m_cubic):
    chk = multiplier_inverse_check(RatFunc([2.0, 0.5]), m_cubic)
    assert chk.multiplier
    with pytest.raises(NotBoundedBelow):
        multiplier_inverse_check(RatFunc([0.0, 1.0]), m_cubic)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_decomposition_roundtrip(seed):
    rng = np.random.default_rng(seed)
    a, _ = random_a(rng)
    from hbcomp.mate import mate_from_a

    m = mate_from_a(a)
    f = random_h_inf(rng)
    d = decompose(f, m)
    assert d.member
    z = disk_points(rng)
    assert np.max(np.abs(f(z) - m.a1(z) * d.f_tilde(z) - d.p_f(z))) <= 1e-8 * max(1, np.max(np.abs(f(z))))
    assert d.p_f.degree() < m.N
    # the polynomial part interpolates the boundary jets
    table = derivative_table(d.p_f if not d.p_f.is_zero else CPoly([0.0]), m.xi, m.mult)
    jets = np.concatenate(boundary_jets(f, m))
    assert np.max(np.abs(table - jets)) <= 1e-8 * max(1.0, np.max(np.abs(jets)))
    phi = RatFunc(random_outside_poly(rng, 2, 1.5, 3.0))
    assert multiplier_inverse_check(phi, m).multiplier

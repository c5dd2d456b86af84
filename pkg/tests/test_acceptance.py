"""Acceptance criteria 1-10. Each test prints one PASS/FAIL line."""

import time

import numpy as np
import pytest

from hbcomp.gallery import CASES
from hbcomp.hbspace import boundary_jets, decompose, derivative_table, hermite_basis, multiplier_inverse_check
from hbcomp.mate import mate_from_a, pythagorean_mate
from hbcomp.opmatrix import truncate_weighted, verify_intertwining
from hbcomp.polyrat import CPoly, RatFunc
from hbcomp.report import load_problem
from hbcomp.verdict import NOTES, HsDivergent, HsFinite, Tri, analyze, hs_integrand

from gen import circle, disk_points, random_a, random_h_inf, random_outside_poly

C = 3.0 * np.sqrt(3.0) / 16.0
A_CUBIC = RatFunc([-C, -C, C, C])
R = 0.5

RESULTS = {}


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        RESULTS[n] = (ok, detail)
        with capsys.disabled():
            print(f"\n[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def _problem(name):
    p = next(c for c in CASES if c.name == name).problem
    return load_problem(p)


def _coeff_err(f, num, den):
    """Coefficientwise distance after normalizing denominators to the same leading term."""
    g = RatFunc(np.asarray(num, dtype=complex), np.asarray(den, dtype=complex))
    if f.num.degree() != g.num.degree() or f.den.degree() != g.den.degree():
        return np.inf
    return max(np.max(np.abs(f.num.coeffs - g.num.coeffs)), np.max(np.abs(f.den.coeffs - g.den.coeffs)))


def test_criterion_01_mate_exactness(report):
    t0 = time.perf_counter()
    m1 = pythagorean_mate(RatFunc([0.5, 0.5]))
    m2 = pythagorean_mate(RatFunc([0.5, 0.0, 0.5]))
    e1 = np.max(np.abs(m1.a.num.coeffs - [0.5, -0.5])) if m1.a.is_polynomial else np.inf
    e2 = np.max(np.abs(m2.a.num.coeffs - [0.5, 0.0, -0.5])) if m2.a.is_polynomial else np.inf
    a0 = complex(m1.a(0.0))
    dt = time.perf_counter() - t0
    ok = e1 <= 1e-10 and e2 <= 1e-10 and abs(a0 - 0.5) <= 1e-10 and a0.real > 0 and dt < 1.0
    assert report(1, ok, f"err {e1:.2e}, {e2:.2e}; a(0) = {a0.real:.12g}; {dt:.3f}s"), "criterion 1"


def test_criterion_02_u_regression(report):
    m = mate_from_a(A_CUBIC)
    cases = [
        ("affine", RatFunc([0.5, 0.5]), ([9 / 32, 6 / 32, 1 / 32], [1.0])),
        ("mobius", RatFunc([-R, 1.0], [1.0, -R]), ([(1 - R * R) * (1 - R)], [1.0, -3 * R, 3 * R * R, -R**3])),
        ("square", RatFunc([0.0, 0.0, 1.0]), ([1.0, 0.0, 2.0, 0.0, 1.0], [1.0, 1.0])),
    ]
    parts, ok = [], True
    for name, phi, (num, den) in cases:
        t0 = time.perf_counter()
        res = analyze(phi, mate=m)
        dt = time.perf_counter() - t0
        err = _coeff_err(res.upack.u, num, den)
        ok &= err <= 1e-9 and dt < 1.0
        parts.append(f"{name} err {err:.1e} {dt:.3f}s")
    assert report(2, ok, "; ".join(parts)), "criterion 2"


def test_criterion_03_verdict_regression(report):
    t0 = time.perf_counter()
    m = mate_from_a(A_CUBIC)
    va = analyze(RatFunc([0.5, 0.5]), mate=m).verdict
    vb = analyze(RatFunc([-R, 1.0], [1.0, -R]), mate=m).verdict
    vc = analyze(RatFunc([0.0, 0.0, 1.0]), mate=m).verdict
    dt = time.perf_counter() - t0
    ok = (
        va.bounded is Tri.YES
        and vb.bounded is Tri.YES
        and vb.compact is Tri.NO
        and "C2" in vb.rules()
        and vc.bounded is Tri.NO
        and {"R2", "R3"} <= set(vc.rules())
        and dt < 5.0
    )
    detail = f"affine {va.bounded.value} {va.rules()}; mobius {vb.bounded.value}/{vb.compact.value} {vb.rules()}; square {vc.bounded.value} {vc.rules()}; {dt:.3f}s"
    assert report(3, ok, detail), "criterion 3"


def test_criterion_04_hs_quantitative(report):
    t0 = time.perf_counter()
    res = analyze(RatFunc([0.5, -0.5]), b=RatFunc([0.5, 0.5]))
    hs = res.verdict.hs
    W = hs_integrand(res.upack, res.profile)
    dev = float(np.max(np.abs(W(circle(1024)) - 0.25)))
    # the raw ratio, sampled away from the contact point, as an independent check
    z = circle(1024)
    z = z[np.abs(z + 1) > 1e-6]
    raw = np.abs(res.upack.u(z)) ** 2 / (1 - np.abs(res.profile.phi(z)) ** 2)
    dev_raw = float(np.max(np.abs(raw - 0.25)))
    dt = time.perf_counter() - t0
    ok = isinstance(hs, HsFinite) and abs(hs.value - 0.25) <= 1e-8 and dev <= 1e-9 and dev_raw <= 1e-9 and dt < 2.0
    val = hs.value if isinstance(hs, HsFinite) else float("nan")
    assert report(4, ok, f"integral {val:.15g}; integrand dev {dev:.1e} (raw {dev_raw:.1e}); {dt:.3f}s"), "criterion 4"


def test_criterion_05_hs_divergence(report):
    t0 = time.perf_counter()
    v = analyze(RatFunc([0.5, 0.0, 0.5]), b=RatFunc([0.5, 0.0, -0.5])).verdict
    dt = time.perf_counter() - t0
    pts = sorted((round(complex(z).real, 9), o) for z, o in v.hs.points) if isinstance(v.hs, HsDivergent) else []
    ok = pts == [(-1.0, -2), (1.0, -2)] and v.hilbert_schmidt is Tri.NO and v.bounded is Tri.YES and dt < 2.0
    assert report(5, ok, f"divergent at {pts}; HS {v.hilbert_schmidt.value}; bounded {v.bounded.value}; {dt:.3f}s"), "criterion 5"


def test_criterion_06_compact_sufficient(report):
    t0 = time.perf_counter()
    res = analyze(RatFunc([0.5, 0.0, -0.5]), b=RatFunc([0.5, 0.0, 0.5]), scan=True)
    v = res.verdict
    dt = time.perf_counter() - t0
    mono, count = True, 0
    for kind in ("contact", "target", "generic"):
        for alpha, trace in v.scans.traces(kind).items():
            vals = [val for r, val in trace if 1 - 2.0**-4 - 1e-12 <= r]
            count += 1
            mono &= all(b < a for a, b in zip(vals, vals[1:]))
    ok = v.compact is Tri.YES and "C3" in v.rules() and mono and count > 0 and dt < 10.0
    assert report(6, ok, f"compact {v.compact.value} {v.rules()}; {count} traces monotone: {mono}; {dt:.3f}s"), "criterion 6"


def test_criterion_07_hs_not_h2_compact(report):
    t0 = time.perf_counter()
    res = analyze(RatFunc([-0.5, -0.5]), a=A_CUBIC)
    v = res.verdict
    dt = time.perf_counter() - t0
    noted = NOTES["h2_contrast"] in v.notes
    ok = v.hilbert_schmidt is Tri.YES and noted and dt < 5.0
    assert report(7, ok, f"HS {v.hilbert_schmidt.value} (integral {v.hs.value:.12g}); H^2 contrast noted: {noted}; {dt:.3f}s"), "criterion 7"


def test_criterion_08_structural_identity(report):
    t0 = time.perf_counter()
    worst, names = 0.0, []
    for case in CASES:
        spec = load_problem(case.problem)
        res = analyze(spec.phi, b=spec.b, a=spec.a)
        if res.verdict.bounded is not Tri.YES:
            continue
        dev = verify_intertwining(res.mate, res.profile, res.upack, 16)
        worst = max(worst, dev)
        names.append(f"{case.name} {dev:.1e}")
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and len(names) >= 8 and dt < 30.0
    assert report(8, ok, f"max deviation {worst:.2e} over {len(names)} bounded cases; {dt:.2f}s"), "criterion 8"


def test_criterion_09_hs_convergence(report):
    t0 = time.perf_counter()
    parts, ok = [], True
    for case in CASES:
        spec = load_problem(case.problem)
        res = analyze(spec.phi, b=spec.b, a=spec.a)
        if res.verdict.hilbert_schmidt is not Tri.YES:
            continue
        target = res.verdict.hs.value
        vals = [truncate_weighted(res.upack.u, spec.phi, K).frobenius_sq() for K in (64, 128, 256)]
        nondecr = vals[0] <= vals[1] * (1 + 1e-12) and vals[1] <= vals[2] * (1 + 1e-12)
        gap = abs(target - vals[2]) / target if target else abs(vals[2])
        ok &= nondecr and gap <= 0.02
        parts.append(f"{case.name} gap {100 * gap:.2f}%{'' if nondecr else ' (not monotone)'}")
    dt = time.perf_counter() - t0
    ok &= dt < 60.0
    assert report(9, ok, "; ".join(parts) + f"; {dt:.2f}s"), "criterion 9"


def test_criterion_10_invariant_suites(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20261018)
    worst = dict(hermite=0.0, roundtrip=0.0, pythagorean=0.0, fejer_riesz=0.0, multiplier=0.0)
    failures, n = 0, 220
    zc = circle(1024)
    for _ in range(n):
        a, _ = random_a(rng)
        m = mate_from_a(a)
        # Hermite delta conditions
        H = hermite_basis(m)
        for j, row in enumerate(H.polys):
            for k, r in enumerate(row):
                want = np.zeros(m.N)
                want[sum(m.mult[:j]) + k] = 1.0
                worst["hermite"] = max(worst["hermite"], np.max(np.abs(derivative_table(r, m.xi, m.mult) - want)))
        # decomposition round trip
        f = random_h_inf(rng)
        d = decompose(f, m)
        if not d.member:
            failures += 1
            continue
        z = disk_points(rng)
        scale = max(1.0, np.max(np.abs(f(z))))
        worst["roundtrip"] = max(worst["roundtrip"], np.max(np.abs(f(z) - m.a1(z) * d.f_tilde(z) - d.p_f(z))) / scale)
        # pythagorean identity
        worst["pythagorean"] = max(worst["pythagorean"], np.max(np.abs(np.abs(m.a(zc)) ** 2 + np.abs(m.b(zc)) ** 2 - 1)))
        # Fejer-Riesz round trip: b -> a recovers the original mate
        back = pythagorean_mate(m.b)
        worst["fejer_riesz"] = max(worst["fejer_riesz"], np.max(np.abs(back.a(zc) - m.a(zc))))
        # multiplier certificate: a1 divides p_phi p_h - 1, checked through its jets too
        phi = RatFunc(random_outside_poly(rng, int(rng.integers(0, 3)), 1.5, 3.0))
        chk = multiplier_inverse_check(phi, m)
        prod = RatFunc(chk.p_phi * chk.p_h - 1.0) if not (chk.p_phi * chk.p_h - 1.0).is_zero else RatFunc(0.0)
        jet = 0.0 if prod.is_zero else np.max(np.abs(np.concatenate(boundary_jets(prod, m))))
        size = max(1.0, (chk.p_phi * chk.p_h).norm())
        worst["multiplier"] = max(worst["multiplier"], chk.remainder / size, jet / size)
        failures += not chk.multiplier
    dt = time.perf_counter() - t0
    limits = dict(hermite=1e-9, roundtrip=1e-8, pythagorean=1e-9, fejer_riesz=1e-8, multiplier=1e-8)
    ok = failures == 0 and all(worst[k] <= limits[k] for k in limits) and dt < 60.0
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert report(10, ok, f"{n} cases; worst {detail}; failures {failures}; {dt:.2f}s"), "criterion 10"

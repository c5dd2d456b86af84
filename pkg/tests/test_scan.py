import numpy as np

from hbcomp.polyrat import RatFunc
from hbcomp.scan import GridSpec, carleson_scan, scan_threads


def test_grid_shape_and_positivity():
    u, phi = RatFunc([0.25, 0.25]), RatFunc([0.5, -0.5])
    s = carleson_scan(u, phi, contact=[-1.0], grid=GridSpec(depth=12))
    assert all(v >= 0 for _, v in s.carleson_grid)
    radii = sorted({round(abs(w), 12) for w, _ in s.carleson_grid})
    assert np.allclose(radii, 1 - 2.0 ** -np.arange(1, 13))
    angles = {round(float(np.mod(np.angle(w), 2 * np.pi)), 9) for w, _ in s.carleson_grid}
    assert len(angles) >= 32 and round(np.pi, 9) in angles
    assert s.traces("contact") and s.traces("target") and len(s.traces("generic")) >= 7
    assert not s.flagged


def test_hs_case_bounded_sup():
    u, phi = RatFunc([0.25, 0.25]), RatFunc([0.5, -0.5])
    s = carleson_scan(u, phi, contact=[-1.0])
    assert s.carleson_sup < 1.0


def test_csv_and_json():
    s = carleson_scan(RatFunc([1.0]), RatFunc([0.0, 0.5]), grid=GridSpec(depth=3))
    lines = s.to_csv().splitlines()
    assert lines[0] == "re_w,im_w,I_w"
    assert len(lines) == 1 + len(s.carleson_grid)
    assert set(s.to_json()) >= {"carleson_sup", "carleson_grid", "boundary_trace", "window_ratios"}


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("HBCOMP_THREADS", "1")
    assert scan_threads() == 1
    monkeypatch.setenv("HBCOMP_THREADS", "bogus")
    assert scan_threads() >= 1


def test_threads_agree():
    u, phi = RatFunc([0.25, 0.25]), RatFunc([0.5, -0.5])
    a = carleson_scan(u, phi, contact=[-1.0], grid=GridSpec(depth=6), threads=1)
    b = carleson_scan(u, phi, contact=[-1.0], grid=GridSpec(depth=6), threads=4)
    assert [v for _, v in a.carleson_grid] == [v for _, v in b.carleson_grid]
